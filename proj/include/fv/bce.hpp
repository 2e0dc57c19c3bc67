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
 * @file bce.hpp
 * @brief Block cipher engine: a microprogrammed datapath built from the five
 *        reconfigurable word units (arithmetic, logic, permutation, shift,
 *        table), plus the seven cipher configurations that run on it.
 *
 * A cipher is compiled ahead of time into flat instruction streams (key
 * schedule, encrypt, decrypt) over a small register file of variable-width
 * words.  Register moves, immediates, bit extraction and packing are wiring,
 * not functional units, and are excluded from the unit-usage audit.
 */

#ifndef FV_BCE_HPP_
#define FV_BCE_HPP_

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fv/benes.hpp"
#include "fv/sbox.hpp"
#include "fv/word.hpp"
#include "fv/word_ops.hpp"

namespace fv {

enum class Unit { kReg, kAu, kLou, kPu, kSu, kTu };

enum class OpCode {
    // REG wiring ops (audit-exempt).
    kLoadImm,      // dst <- imm (width from instr)
    kCopy,         // dst <- r[a]
    kExtract,      // dst <- bits [imm, imm+width) of r[a]
    kPack,         // dst <- r[a] | r[b] << imm, at the given width
    kLoadInput,    // dst <- input word imm
    kStoreOutput,  // output word imm <- r[a]
    kLoadKey,      // dst <- key bank slot imm
    kStoreKey,     // key bank slot imm <- r[a]
    kRoundMark,    // round boundary, imm = weight in half-rounds
    // LOU.
    kXor, kAnd, kOr, kNot, kNand, kNor,
    // AU.
    kAddLane,      // lane-wise modular add, lane width from instr
    kSubLane,
    kMulMod65537,  // 16-bit multiplicative group with 0 == 65536
    kGfMulConst,   // carry-less byte-lane multiply: imm = constant, aux = poly
    // SU.
    kShift,        // imm = amount, aux = ShiftMode
    // PU.
    kPermute,      // aux = permutation config id
    // TU.
    kSbox,         // aux = table id, every byte lane through one table
    kSboxMulti,    // aux = table-set id, one table per byte lane
};

Unit unit_of(OpCode op);

struct Instr {
    OpCode op;
    int dst = -1;
    int a = -1;
    int b = -1;
    uint64_t imm = 0;
    int aux = -1;
    int lane = 0;   // lane width for kAddLane/kSubLane
    int width = 0;  // result width for kLoadImm/kExtract/kPack
};

// Byte-to-word wiring for program I/O: entry i places block byte i into
// word `word` at byte lane `lane` (lane 0 = least significant byte).
struct ByteWire {
    int word;
    int lane;
};

struct Microprogram {
    std::vector<Instr> code;
    std::vector<BenesConfig> perms;
    std::vector<SBoxTable> tables;
    std::vector<std::array<int, 8>> table_sets;  // lane -> table id
    std::vector<ByteWire> input_map;             // size = input bytes
    std::vector<ByteWire> output_map;            // size = output bytes
    int word_width = 0;                          // width of I/O words
    int input_words = 0;
    int output_words = 0;
    int reg_count = 0;
};

// Runs a program over the register machine.  `bank` is the round-key store:
// key-schedule programs write it, data programs read it.
std::vector<Word> run_program(const Microprogram& prog, const std::vector<Word>& inputs,
                              std::vector<Word>* bank);

// Packs raw bytes into I/O words through the input wiring, and back.
std::vector<Word> wire_in(const Microprogram& prog, std::span<const uint8_t> bytes);
std::vector<uint8_t> wire_out(const Microprogram& prog, const std::vector<Word>& words);

enum class CipherAlgo { kAes, kTdes, kIdea, kSerpent, kHight, kSm4, kCamellia };

const char* cipher_name(CipherAlgo algo);
// Parses "aes", "3des", "idea", "serpent", "hight", "sm4", "camellia".
CipherAlgo cipher_from_name(const std::string& name);
constexpr std::array<CipherAlgo, 7> kAllCiphers = {
    CipherAlgo::kAes, CipherAlgo::kTdes, CipherAlgo::kIdea, CipherAlgo::kSerpent,
    CipherAlgo::kHight, CipherAlgo::kSm4, CipherAlgo::kCamellia};

struct CipherProgramSet {
    CipherAlgo algo;
    int key_bits = 0;
    int block_bits = 0;
    Microprogram key_schedule_enc;
    Microprogram key_schedule_dec;  // empty when decryption reads the encrypt
                                    // bank; populated when subkeys need
                                    // transformation first
    Microprogram encrypt;
    Microprogram decrypt;
};

// Compiles the cipher configuration for one key length.  Throws
// kIllegalKeyLength if the cipher does not support it.
CipherProgramSet build_cipher(CipherAlgo algo, int key_bits);

// Static configuration properties (the reconfiguration catalog).
struct CipherInfo {
    CipherAlgo algo;
    int block_bits;
    int granularity_bits;          // operand granularity of the core ops
    std::vector<int> key_bits;     // supported key lengths
    std::vector<int> rounds_x2;    // per key length, in half-rounds
};
const CipherInfo& cipher_info(CipherAlgo algo);

// A loaded key: programs plus materialized round-key banks.
struct CipherSession {
    CipherProgramSet progs;
    std::vector<Word> bank_enc;
    std::vector<Word> bank_dec;

    size_t block_bytes() const { return static_cast<size_t>(progs.block_bits) / 8; }
};

CipherSession make_session(CipherAlgo algo, std::span<const uint8_t> key);

std::vector<uint8_t> encrypt_block(const CipherSession& s, std::span<const uint8_t> block);
std::vector<uint8_t> decrypt_block(const CipherSession& s, std::span<const uint8_t> block);

// Counter mode over any block size: the counter block is nonce || counter,
// both big-endian, with a 32-bit counter field.  The nonce must be exactly
// block_bytes - 4 long.  Encrypt and decrypt are the same operation.
std::vector<uint8_t> ctr_crypt(const CipherSession& s, std::span<const uint8_t> data,
                               std::span<const uint8_t> nonce, uint32_t counter0);

// Unit-usage audit over the compiled encrypt+decrypt streams of every
// supported key length.  Rounds are measured from emitted round marks.
struct CipherAudit {
    CipherAlgo algo;
    std::set<Unit> units;           // functional units touched (REG excluded)
    int block_bits;
    int granularity_bits;
    std::vector<int> key_bits;
    std::vector<int> rounds_x2;     // measured, aligned with key_bits
    size_t encrypt_instr_count;     // for the largest key length
};
CipherAudit audit_cipher(CipherAlgo algo);

// Instructions that occupy a functional unit (wiring excluded), for coarse
// per-block work reporting.
size_t functional_instr_count(const Microprogram& prog);

}  // namespace fv

#endif  // FV_BCE_HPP_
