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
 * @file word.hpp
 * @brief Fixed-width datapath word.  Every value carries its lane width so the
 *        engine model can mix 4/8/16/23/32/64-bit operands safely.
 */

#ifndef FV_WORD_HPP_
#define FV_WORD_HPP_

#include <array>
#include <cstdint>

#include "fv/error.hpp"

namespace fv {

// Lane widths the reconfigurable datapath supports.  23 is the lattice
// coefficient width; the rest are the block/stream cipher granularities.
inline constexpr std::array<int, 6> kWordWidths = {4, 8, 16, 23, 32, 64};

constexpr bool is_word_width(int width) {
    for (int w : kWordWidths)
        if (w == width) return true;
    return false;
}

constexpr uint64_t width_mask(int width) {
    return width >= 64 ? ~0ULL : ((1ULL << width) - 1);
}

struct Word {
    uint64_t value = 0;
    int width = 64;

    // A word never holds set bits above its width.
    static Word make(uint64_t value, int width) {
        if (!is_word_width(width)) raise(Errc::kBadWidth, "unsupported word width " + std::to_string(width));
        if (value & ~width_mask(width)) raise(Errc::kBadWidth, "value exceeds word width");
        return Word{value, width};
    }

    // Wrap-around constructor for arithmetic results.
    static Word wrap(uint64_t value, int width) { return Word{value & width_mask(width), width}; }

    uint64_t mask() const { return width_mask(width); }

    bool operator==(const Word& other) const = default;
};

}  // namespace fv

#endif  // FV_WORD_HPP_
