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
 * @file word_ops.cpp
 * @brief Word-level shift, logic and lane arithmetic.
 */

#include "fv/word_ops.hpp"

#include "fv/error.hpp"

namespace fv {

Word barrel_shift(const Word& x, int amount, ShiftMode mode) {
    const int w = x.width;
    if (amount < 0 || amount >= w) raise(Errc::kBadShiftAmount, "amount must lie in [0, width)");
    if (amount == 0) return x;
    const uint64_t m = x.mask();
    const uint64_t v = x.value;
    uint64_t r = 0;
    switch (mode) {
        case ShiftMode::kLogicalLeft:
            r = (v << amount) & m;
            break;
        case ShiftMode::kLogicalRight:
            r = v >> amount;
            break;
        case ShiftMode::kArithRight: {
            const uint64_t sign = (v >> (w - 1)) & 1;
            r = v >> amount;
            if (sign) r |= m & ~(m >> amount);
            break;
        }
        case ShiftMode::kRotateLeft:
            r = ((v << amount) | (v >> (w - amount))) & m;
            break;
        case ShiftMode::kRotateRight:
            r = ((v >> amount) | (v << (w - amount))) & m;
            break;
    }
    return Word{r, w};
}

Word logic_op(const Word& a, const Word& b, LogicOp op) {
    if (op != LogicOp::kNot && a.width != b.width) raise(Errc::kWidthMismatch, "logic operands differ in width");
    const uint64_t m = a.mask();
    uint64_t r = 0;
    switch (op) {
        case LogicOp::kXor: r = a.value ^ b.value; break;
        case LogicOp::kAnd: r = a.value & b.value; break;
        case LogicOp::kOr: r = a.value | b.value; break;
        case LogicOp::kNot: r = ~a.value; break;
        case LogicOp::kNand: r = ~(a.value & b.value); break;
        case LogicOp::kNor: r = ~(a.value | b.value); break;
    }
    return Word{r & m, a.width};
}

namespace {

template <typename F>
Word lane_map(const Word& a, const Word& b, int lane_bits, F f) {
    if (a.width != b.width) raise(Errc::kWidthMismatch, "lane operands differ in width");
    if (lane_bits <= 0 || a.width % lane_bits != 0)
        raise(Errc::kBadWidth, "word does not split into lanes of " + std::to_string(lane_bits) + " bits");
    const uint64_t lm = width_mask(lane_bits >= 64 ? 64 : lane_bits);
    uint64_t out = 0;
    for (int off = 0; off < a.width; off += lane_bits) {
        const uint64_t la = (a.value >> off) & lm;
        const uint64_t lb = (b.value >> off) & lm;
        out |= (f(la, lb) & lm) << off;
    }
    return Word{out, a.width};
}

}  // namespace

Word lane_add(const Word& a, const Word& b, int lane_bits) {
    return lane_map(a, b, lane_bits, [](uint64_t x, uint64_t y) { return x + y; });
}

Word lane_sub(const Word& a, const Word& b, int lane_bits) {
    return lane_map(a, b, lane_bits, [](uint64_t x, uint64_t y) { return x - y; });
}

uint16_t mul_mod65537(uint16_t a, uint16_t b) {
    // 0 acts as 65536 == -1 mod 65537.
    const uint32_t ea = a ? a : 65536u;
    const uint32_t eb = b ? b : 65536u;
    const uint32_t r = static_cast<uint32_t>((static_cast<uint64_t>(ea) * eb) % 65537u);
    return static_cast<uint16_t>(r == 65536u ? 0 : r);
}

Word lane_gf_mul(const Word& a, uint8_t constant, uint8_t poly) {
    if (a.width % 8 != 0) raise(Errc::kBadWidth, "field multiply needs byte lanes");
    uint64_t out = 0;
    for (int off = 0; off < a.width; off += 8) {
        uint8_t x = static_cast<uint8_t>(a.value >> off);
        uint8_t k = constant;
        uint8_t acc = 0;
        while (k) {
            if (k & 1) acc ^= x;
            const bool hi = x & 0x80;
            x = static_cast<uint8_t>(x << 1);
            if (hi) x ^= poly;
            k >>= 1;
        }
        out |= static_cast<uint64_t>(acc) << off;
    }
    return Word{out, a.width};
}

}  // namespace fv
