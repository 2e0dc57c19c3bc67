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
 * @file cipher_builder.hpp
 * @brief Internal assembler used by the cipher configuration builders.
 *
 * Emission helpers allocate a fresh destination register per result, so the
 * builders read like straight-line cipher pseudocode.  Register handles are
 * plain ints.
 */

#ifndef FV_SRC_CIPHER_BUILDER_HPP_
#define FV_SRC_CIPHER_BUILDER_HPP_

#include <array>
#include <utility>
#include <vector>

#include "fv/bce.hpp"
#include "fv/benes.hpp"
#include "fv/error.hpp"
#include "fv/sbox.hpp"

namespace fv {

class Asm {
  public:
    Microprogram take() {
        prog_.reg_count = next_reg_;
        return std::move(prog_);
    }

    int fresh() { return next_reg_++; }

    int emit(Instr in) {
        if (in.dst == -2) in.dst = fresh();
        prog_.code.push_back(in);
        return in.dst;
    }

    // REG wiring.
    int imm(uint64_t v, int w) { return emit({OpCode::kLoadImm, -2, -1, -1, v, -1, 0, w}); }
    int copy(int a) { return emit({OpCode::kCopy, -2, a}); }
    int extract(int a, int off, int w) { return emit({OpCode::kExtract, -2, a, -1, static_cast<uint64_t>(off), -1, 0, w}); }
    int pack(int a, int b, int off, int w) { return emit({OpCode::kPack, -2, a, b, static_cast<uint64_t>(off), -1, 0, w}); }
    int input(int idx) { return emit({OpCode::kLoadInput, -2, -1, -1, static_cast<uint64_t>(idx)}); }
    void output(int a, int idx) { emit({OpCode::kStoreOutput, -1, a, -1, static_cast<uint64_t>(idx)}); }
    int key(int slot) { return emit({OpCode::kLoadKey, -2, -1, -1, static_cast<uint64_t>(slot)}); }
    void store_key(int a, int slot) { emit({OpCode::kStoreKey, -1, a, -1, static_cast<uint64_t>(slot)}); }
    void mark(int half_rounds = 2) { emit({OpCode::kRoundMark, -1, -1, -1, static_cast<uint64_t>(half_rounds)}); }

    // LOU.
    int xor_(int a, int b) { return emit({OpCode::kXor, -2, a, b}); }
    int and_(int a, int b) { return emit({OpCode::kAnd, -2, a, b}); }
    int or_(int a, int b) { return emit({OpCode::kOr, -2, a, b}); }
    int not_(int a) { return emit({OpCode::kNot, -2, a}); }

    // AU.
    int addl(int a, int b, int lane) { return emit({OpCode::kAddLane, -2, a, b, 0, -1, lane}); }
    int subl(int a, int b, int lane) { return emit({OpCode::kSubLane, -2, a, b, 0, -1, lane}); }
    int mulm(int a, int b) { return emit({OpCode::kMulMod65537, -2, a, b}); }
    int gfmul(int a, uint8_t c, uint8_t poly) {
        return emit({OpCode::kGfMulConst, -2, a, -1, c, poly});
    }

    // SU.
    int shift(int a, int amount, ShiftMode mode) {
        return emit({OpCode::kShift, -2, a, -1, static_cast<uint64_t>(amount), static_cast<int>(mode)});
    }
    int rotl(int a, int amount) { return shift(a, amount, ShiftMode::kRotateLeft); }
    int rotr(int a, int amount) { return shift(a, amount, ShiftMode::kRotateRight); }
    int shl(int a, int amount) { return shift(a, amount, ShiftMode::kLogicalLeft); }
    int shr(int a, int amount) { return shift(a, amount, ShiftMode::kLogicalRight); }

    // PU / TU resource registration and use.
    int perm_id(BenesConfig cfg) {
        prog_.perms.push_back(std::move(cfg));
        return static_cast<int>(prog_.perms.size()) - 1;
    }
    int perm(int a, int id) { return emit({OpCode::kPermute, -2, a, -1, 0, id}); }
    int table_id(SBoxTable t) {
        prog_.tables.push_back(std::move(t));
        return static_cast<int>(prog_.tables.size()) - 1;
    }
    int sbox(int a, int id) { return emit({OpCode::kSbox, -2, a, -1, 0, id}); }
    int table_set_id(const std::array<int, 8>& lanes) {
        prog_.table_sets.push_back(lanes);
        return static_cast<int>(prog_.table_sets.size()) - 1;
    }
    int sbox_multi(int a, int set) { return emit({OpCode::kSboxMulti, -2, a, -1, 0, set}); }

    // Composite: AND with an immediate mask.
    int and_imm(int a, uint64_t mask, int w) { return and_(a, imm(mask, w)); }

    void set_io(int word_width, std::vector<ByteWire> in_map, std::vector<ByteWire> out_map,
                int input_words, int output_words) {
        prog_.word_width = word_width;
        prog_.input_map = std::move(in_map);
        prog_.output_map = std::move(out_map);
        prog_.input_words = input_words;
        prog_.output_words = output_words;
    }

  private:
    Microprogram prog_;
    int next_reg_ = 0;
};

// Fills the unspecified (-1) entries of a partial permutation so route_benes
// gets a bijection; callers mask off wherever the filler bits land.
inline std::vector<int> complete_perm(std::vector<int> perm) {
    std::vector<bool> used(perm.size(), false);
    for (int p : perm)
        if (p >= 0) used[p] = true;
    int next = 0;
    for (auto& p : perm) {
        if (p >= 0) continue;
        while (used[next]) ++next;
        p = next;
        used[next] = true;
    }
    return perm;
}

// Big-endian word wiring: byte 0 is the most significant byte of word 0.
inline std::vector<ByteWire> wires_be(int nbytes, int word_bytes) {
    std::vector<ByteWire> m(nbytes);
    for (int i = 0; i < nbytes; ++i)
        m[i] = {i / word_bytes, word_bytes - 1 - i % word_bytes};
    return m;
}

// Little-endian word wiring: byte 0 is the least significant byte of word 0.
inline std::vector<ByteWire> wires_le(int nbytes, int word_bytes) {
    std::vector<ByteWire> m(nbytes);
    for (int i = 0; i < nbytes; ++i) m[i] = {i / word_bytes, i % word_bytes};
    return m;
}

// Per-cipher configuration builders.
CipherProgramSet build_aes(int key_bits);
CipherProgramSet build_tdes(int key_bits);
CipherProgramSet build_idea(int key_bits);
CipherProgramSet build_serpent(int key_bits);
CipherProgramSet build_hight(int key_bits);
CipherProgramSet build_sm4(int key_bits);
CipherProgramSet build_camellia(int key_bits);

}  // namespace fv

#endif  // FV_SRC_CIPHER_BUILDER_HPP_
