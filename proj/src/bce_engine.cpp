/*
 * Copyright 2026 The flashvault-sim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file bce_engine.cpp
 * @brief Microprogram interpreter, cipher registry, counter mode and the
 *        unit-usage audit.
 */

#include "fv/bce.hpp"

#include <algorithm>

#include "fv/error.hpp"
#include "cipher_builder.hpp"

namespace fv {

Unit unit_of(OpCode op) {
    switch (op) {
        case OpCode::kLoadImm:
        case OpCode::kCopy:
        case OpCode::kExtract:
        case OpCode::kPack:
        case OpCode::kLoadInput:
        case OpCode::kStoreOutput:
        case OpCode::kLoadKey:
        case OpCode::kStoreKey:
        case OpCode::kRoundMark:
            return Unit::kReg;
        case OpCode::kXor:
        case OpCode::kAnd:
        case OpCode::kOr:
        case OpCode::kNot:
        case OpCode::kNand:
        case OpCode::kNor:
            return Unit::kLou;
        case OpCode::kAddLane:
        case OpCode::kSubLane:
        case OpCode::kMulMod65537:
        case OpCode::kGfMulConst:
            return Unit::kAu;
        case OpCode::kShift:
            return Unit::kSu;
        case OpCode::kPermute:
            return Unit::kPu;
        case OpCode::kSbox:
        case OpCode::kSboxMulti:
            return Unit::kTu;
    }
    raise(Errc::kBadState, "unknown opcode");
}

namespace {

LogicOp logic_of(OpCode op) {
    switch (op) {
        case OpCode::kXor: return LogicOp::kXor;
        case OpCode::kAnd: return LogicOp::kAnd;
        case OpCode::kOr: return LogicOp::kOr;
        case OpCode::kNot: return LogicOp::kNot;
        case OpCode::kNand: return LogicOp::kNand;
        default: return LogicOp::kNor;
    }
}

}  // namespace

std::vector<Word> run_program(const Microprogram& prog, const std::vector<Word>& inputs,
                              std::vector<Word>* bank) {
    if (static_cast<int>(inputs.size()) != prog.input_words)
        raise(Errc::kBadState, "program expects " + std::to_string(prog.input_words) + " input words");
    std::vector<Word> regs(prog.reg_count, Word{0, 64});
    std::vector<Word> outputs(prog.output_words, Word{0, prog.word_width});

    auto reg = [&](int i) -> const Word& {
        if (i < 0 || i >= static_cast<int>(regs.size())) raise(Errc::kBadState, "register index out of range");
        return regs[i];
    };
    auto set = [&](int i, Word w) {
        if (i < 0 || i >= static_cast<int>(regs.size())) raise(Errc::kBadState, "register index out of range");
        regs[i] = w;
    };

    for (const Instr& in : prog.code) {
        switch (in.op) {
            case OpCode::kLoadImm:
                set(in.dst, Word::make(in.imm, in.width));
                break;
            case OpCode::kCopy:
                set(in.dst, reg(in.a));
                break;
            case OpCode::kExtract: {
                const Word& a = reg(in.a);
                const int off = static_cast<int>(in.imm);
                if (off < 0 || off + in.width > a.width)
                    raise(Errc::kBadState, "extract range exceeds source width");
                set(in.dst, Word::make((a.value >> off) & width_mask(in.width), in.width));
                break;
            }
            case OpCode::kPack: {
                const Word& a = reg(in.a);
                const Word& b = reg(in.b);
                const int off = static_cast<int>(in.imm);
                if (a.width > in.width || off + b.width > in.width)
                    raise(Errc::kBadState, "pack operands exceed result width");
                set(in.dst, Word::make(a.value | (b.value << off), in.width));
                break;
            }
            case OpCode::kLoadInput:
                if (in.imm >= inputs.size()) raise(Errc::kBadState, "input index out of range");
                set(in.dst, inputs[in.imm]);
                break;
            case OpCode::kStoreOutput:
                if (in.imm >= outputs.size()) raise(Errc::kBadState, "output index out of range");
                outputs[in.imm] = reg(in.a);
                break;
            case OpCode::kLoadKey:
                if (!bank || in.imm >= bank->size()) raise(Errc::kBadState, "key bank slot out of range");
                set(in.dst, (*bank)[in.imm]);
                break;
            case OpCode::kStoreKey:
                if (!bank) raise(Errc::kBadState, "program writes keys without a bank");
                if (in.imm >= bank->size()) bank->resize(in.imm + 1, Word{0, 64});
                (*bank)[in.imm] = reg(in.a);
                break;
            case OpCode::kRoundMark:
                break;
            case OpCode::kXor:
            case OpCode::kAnd:
            case OpCode::kOr:
            case OpCode::kNand:
            case OpCode::kNor:
                set(in.dst, logic_op(reg(in.a), reg(in.b), logic_of(in.op)));
                break;
            case OpCode::kNot:
                set(in.dst, logic_op(reg(in.a), reg(in.a), LogicOp::kNot));
                break;
            case OpCode::kAddLane:
                set(in.dst, lane_add(reg(in.a), reg(in.b), in.lane));
                break;
            case OpCode::kSubLane:
                set(in.dst, lane_sub(reg(in.a), reg(in.b), in.lane));
                break;
            case OpCode::kMulMod65537: {
                const Word& a = reg(in.a);
                const Word& b = reg(in.b);
                if (a.width != 16 || b.width != 16)
                    raise(Errc::kBadState, "group multiply needs 16-bit operands");
                set(in.dst, Word::make(mul_mod65537(static_cast<uint16_t>(a.value),
                                                    static_cast<uint16_t>(b.value)), 16));
                break;
            }
            case OpCode::kGfMulConst:
                set(in.dst, lane_gf_mul(reg(in.a), static_cast<uint8_t>(in.imm),
                                        static_cast<uint8_t>(in.aux)));
                break;
            case OpCode::kShift:
                set(in.dst, barrel_shift(reg(in.a), static_cast<int>(in.imm),
                                         static_cast<ShiftMode>(in.aux)));
                break;
            case OpCode::kPermute:
                if (in.aux < 0 || in.aux >= static_cast<int>(prog.perms.size()))
                    raise(Errc::kBadState, "permutation id out of range");
                set(in.dst, benes_permute(reg(in.a), prog.perms[in.aux]));
                break;
            case OpCode::kSbox:
                if (in.aux < 0 || in.aux >= static_cast<int>(prog.tables.size()))
                    raise(Errc::kBadState, "table id out of range");
                set(in.dst, sbox_lookup(reg(in.a), prog.tables[in.aux]));
                break;
            case OpCode::kSboxMulti: {
                if (in.aux < 0 || in.aux >= static_cast<int>(prog.table_sets.size()))
                    raise(Errc::kBadState, "table set id out of range");
                const Word& a = reg(in.a);
                if (a.width % 8 != 0) raise(Errc::kBadState, "per-lane lookup needs byte lanes");
                const auto& set_ids = prog.table_sets[in.aux];
                uint64_t out = 0;
                for (int lane = 0; lane < a.width / 8; ++lane) {
                    const int tid = set_ids[lane];
                    if (tid < 0 || tid >= static_cast<int>(prog.tables.size()))
                        raise(Errc::kBadState, "table id out of range in set");
                    const uint8_t v = static_cast<uint8_t>(a.value >> (8 * lane));
                    out |= static_cast<uint64_t>(prog.tables[tid].entries[v]) << (8 * lane);
                }
                set(in.dst, Word::make(out, a.width));
                break;
            }
        }
    }
    return outputs;
}

std::vector<Word> wire_in(const Microprogram& prog, std::span<const uint8_t> bytes) {
    if (bytes.size() != prog.input_map.size())
        raise(Errc::kBadState, "input length does not match program wiring");
    std::vector<Word> words(prog.input_words, Word{0, prog.word_width});
    for (size_t i = 0; i < bytes.size(); ++i) {
        const ByteWire& w = prog.input_map[i];
        words[w.word].value |= static_cast<uint64_t>(bytes[i]) << (8 * w.lane);
    }
    return words;
}

std::vector<uint8_t> wire_out(const Microprogram& prog, const std::vector<Word>& words) {
    if (static_cast<int>(words.size()) != prog.output_words)
        raise(Errc::kBadState, "output word count does not match program wiring");
    std::vector<uint8_t> bytes(prog.output_map.size());
    for (size_t i = 0; i < bytes.size(); ++i) {
        const ByteWire& w = prog.output_map[i];
        bytes[i] = static_cast<uint8_t>(words[w.word].value >> (8 * w.lane));
    }
    return bytes;
}

const char* cipher_name(CipherAlgo algo) {
    switch (algo) {
        case CipherAlgo::kAes: return "aes";
        case CipherAlgo::kTdes: return "3des";
        case CipherAlgo::kIdea: return "idea";
        case CipherAlgo::kSerpent: return "serpent";
        case CipherAlgo::kHight: return "hight";
        case CipherAlgo::kSm4: return "sm4";
        case CipherAlgo::kCamellia: return "camellia";
    }
    return "?";
}

CipherAlgo cipher_from_name(const std::string& name) {
    for (CipherAlgo a : kAllCiphers)
        if (name == cipher_name(a)) return a;
    raise(Errc::kUnknownAlgorithm, "no cipher named '" + name + "'");
}

const CipherInfo& cipher_info(CipherAlgo algo) {
    static const std::vector<CipherInfo> kInfos = {
        {CipherAlgo::kAes, 128, 8, {128, 192, 256}, {20, 24, 28}},
        {CipherAlgo::kTdes, 64, 4, {112, 168}, {96, 96}},
        {CipherAlgo::kIdea, 64, 16, {128}, {17}},
        {CipherAlgo::kSerpent, 128, 4, {128, 192, 256}, {64, 64, 64}},
        {CipherAlgo::kHight, 64, 8, {128}, {64}},
        {CipherAlgo::kSm4, 128, 8, {128}, {64}},
        {CipherAlgo::kCamellia, 128, 8, {128, 192, 256}, {36, 48, 48}},
    };
    for (const auto& info : kInfos)
        if (info.algo == algo) return info;
    raise(Errc::kUnknownAlgorithm, "unregistered cipher");
}

CipherProgramSet build_cipher(CipherAlgo algo, int key_bits) {
    const CipherInfo& info = cipher_info(algo);
    if (std::find(info.key_bits.begin(), info.key_bits.end(), key_bits) == info.key_bits.end())
        raise(Errc::kIllegalKeyLength, std::string(cipher_name(algo)) + " does not take a " +
                                           std::to_string(key_bits) + "-bit key");
    switch (algo) {
        case CipherAlgo::kAes: return build_aes(key_bits);
        case CipherAlgo::kTdes: return build_tdes(key_bits);
        case CipherAlgo::kIdea: return build_idea(key_bits);
        case CipherAlgo::kSerpent: return build_serpent(key_bits);
        case CipherAlgo::kHight: return build_hight(key_bits);
        case CipherAlgo::kSm4: return build_sm4(key_bits);
        case CipherAlgo::kCamellia: return build_camellia(key_bits);
    }
    raise(Errc::kUnknownAlgorithm, "unregistered cipher");
}

// Maps raw key material length to the declared key size.  DES key words
// carry eight parity bits each, so the effective sizes (112, 168) need 16 or
// 24 bytes of material; everywhere else the two lengths coincide.
static int key_bits_for_material(CipherAlgo algo, size_t bytes) {
    for (int kb : cipher_info(algo).key_bits) {
        size_t need = algo == CipherAlgo::kTdes ? kb / 56 * 8 : kb / 8;
        if (need == bytes) return kb;
    }
    raise(Errc::kIllegalKeyLength, std::string(cipher_name(algo)) + " does not take a " +
                                       std::to_string(bytes) + "-byte key");
}

CipherSession make_session(CipherAlgo algo, std::span<const uint8_t> key) {
    CipherSession s;
    s.progs = build_cipher(algo, key_bits_for_material(algo, key.size()));
    std::vector<Word> key_words = wire_in(s.progs.key_schedule_enc, key);
    run_program(s.progs.key_schedule_enc, key_words, &s.bank_enc);
    // An empty decrypt schedule means decryption reads the encrypt bank.
    if (!s.progs.key_schedule_dec.code.empty()) {
        std::vector<Word> kw2 = wire_in(s.progs.key_schedule_dec, key);
        run_program(s.progs.key_schedule_dec, kw2, &s.bank_dec);
    } else {
        s.bank_dec = s.bank_enc;
    }
    return s;
}

std::vector<uint8_t> encrypt_block(const CipherSession& s, std::span<const uint8_t> block) {
    std::vector<Word> bank = s.bank_enc;
    return wire_out(s.progs.encrypt, run_program(s.progs.encrypt, wire_in(s.progs.encrypt, block), &bank));
}

std::vector<uint8_t> decrypt_block(const CipherSession& s, std::span<const uint8_t> block) {
    std::vector<Word> bank = s.bank_dec;
    return wire_out(s.progs.decrypt, run_program(s.progs.decrypt, wire_in(s.progs.decrypt, block), &bank));
}

std::vector<uint8_t> ctr_crypt(const CipherSession& s, std::span<const uint8_t> data,
                               std::span<const uint8_t> nonce, uint32_t counter0) {
    const size_t bb = s.block_bytes();
    if (nonce.size() != bb - 4)
        raise(Errc::kBadNonce, "nonce must be block size minus the 32-bit counter");
    std::vector<uint8_t> out(data.size());
    std::vector<uint8_t> counter_block(bb);
    std::copy(nonce.begin(), nonce.end(), counter_block.begin());
    uint64_t blocks = (data.size() + bb - 1) / bb;
    for (uint64_t i = 0; i < blocks; ++i) {
        const uint32_t ctr = counter0 + static_cast<uint32_t>(i);
        counter_block[bb - 4] = static_cast<uint8_t>(ctr >> 24);
        counter_block[bb - 3] = static_cast<uint8_t>(ctr >> 16);
        counter_block[bb - 2] = static_cast<uint8_t>(ctr >> 8);
        counter_block[bb - 1] = static_cast<uint8_t>(ctr);
        std::vector<uint8_t> ks = encrypt_block(s, counter_block);
        const size_t off = i * bb;
        const size_t n = std::min(bb, data.size() - off);
        for (size_t j = 0; j < n; ++j) out[off + j] = data[off + j] ^ ks[j];
    }
    return out;
}

size_t functional_instr_count(const Microprogram& prog) {
    size_t n = 0;
    for (const Instr& in : prog.code)
        if (unit_of(in.op) != Unit::kReg) ++n;
    return n;
}

CipherAudit audit_cipher(CipherAlgo algo) {
    const CipherInfo& info = cipher_info(algo);
    CipherAudit audit;
    audit.algo = algo;
    audit.block_bits = 0;
    audit.granularity_bits = info.granularity_bits;
    audit.encrypt_instr_count = 0;

    for (int kb : info.key_bits) {
        CipherProgramSet ps = build_cipher(algo, kb);
        audit.block_bits = ps.block_bits;
        audit.key_bits.push_back(kb);

        int marks_enc = 0, marks_dec = 0;
        for (const Instr& in : ps.encrypt.code) {
            Unit u = unit_of(in.op);
            if (u != Unit::kReg) audit.units.insert(u);
            if (in.op == OpCode::kRoundMark) marks_enc += static_cast<int>(in.imm);
        }
        for (const Instr& in : ps.decrypt.code) {
            Unit u = unit_of(in.op);
            if (u != Unit::kReg) audit.units.insert(u);
            if (in.op == OpCode::kRoundMark) marks_dec += static_cast<int>(in.imm);
        }
        if (marks_enc != marks_dec)
            raise(Errc::kBadState, "encrypt and decrypt round structures differ");
        audit.rounds_x2.push_back(marks_enc);
        audit.encrypt_instr_count = std::max(audit.encrypt_instr_count,
                                             functional_instr_count(ps.encrypt));
    }
    return audit;
}

}  // namespace fv
