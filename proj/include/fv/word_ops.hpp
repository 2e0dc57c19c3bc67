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
 * @file word_ops.hpp
 * @brief Shift/rotate, bitwise logic and small modular arithmetic on datapath
 *        words.  These are the per-lane primitives the arithmetic and logic
 *        units expose to the cipher engine.
 */

#ifndef FV_WORD_OPS_HPP_
#define FV_WORD_OPS_HPP_

#include "fv/word.hpp"

namespace fv {

enum class ShiftMode { kLogicalLeft, kLogicalRight, kArithRight, kRotateLeft, kRotateRight };

enum class LogicOp { kXor, kAnd, kOr, kNot, kNand, kNor };

// Barrel shifter.  amount must lie in [0, width); arithmetic right replicates
// the sign bit of the word's own width.
Word barrel_shift(const Word& x, int amount, ShiftMode mode);

// Bitwise logic; kNot ignores b.  Operands must share a width.
Word logic_op(const Word& a, const Word& b, LogicOp op);

// Lane-wise wrap-around add/sub on lane_bits-wide lanes packed in the word.
Word lane_add(const Word& a, const Word& b, int lane_bits);
Word lane_sub(const Word& a, const Word& b, int lane_bits);

// 16-bit multiplication modulo 65537 with the all-zero word standing in for
// 65536, the usual extended-operand convention of the 16-bit multiplier.
uint16_t mul_mod65537(uint16_t a, uint16_t b);

// Carry-less multiply of each 8-bit lane by a constant, reduced by the given
// degree-8 field polynomial (low 8 bits of poly; x^8 implied).
Word lane_gf_mul(const Word& a, uint8_t constant, uint8_t poly);

}  // namespace fv

#endif  // FV_WORD_OPS_HPP_
