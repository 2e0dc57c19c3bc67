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
 * @file benes.hpp
 * @brief Rearrangeable Benes permutation network: switch-level configuration,
 *        routing (the classic looping algorithm) and application to words.
 *
 * A width-w network has 2*log2(w)-1 stages of w/2 two-input switches.  The
 * permutation unit is built from two 32-bit cores; a 64-bit permutation is the
 * same recursive structure with the extra outer stage pair joining the cores,
 * so one implementation covers both the split and combined operating modes.
 */

#ifndef FV_BENES_HPP_
#define FV_BENES_HPP_

#include <cstdint>
#include <vector>

#include "fv/word.hpp"

namespace fv {

struct BenesConfig {
    int width = 0;                    // power of two in [2, 64]
    std::vector<uint8_t> stage_bits;  // stage-major, w/2 switch bits per stage

    int stages() const;
    // Switch s of stage st is crossed when its bit is 1.
    uint8_t bit(int stage, int sw) const { return stage_bits[static_cast<size_t>(stage) * (width / 2) + sw]; }
};

// Computes switch settings so that input bit i lands on output position
// perm[i].  Throws kNotAPermutation if perm is not a bijection on [0, w).
BenesConfig route_benes(const std::vector<int>& perm);

// Expands a config back into the permutation it realizes (perm[i] = output
// position of input bit i).  route_benes is verified against this expansion.
std::vector<int> benes_realized_perm(const BenesConfig& cfg);

// Applies the configured permutation to a word: output bit perm[i] = input
// bit i.  The word width must equal the network width.
Word benes_permute(const Word& input, const BenesConfig& cfg);

// Extracts the two half-width core configs inside a combined network (the
// middle stages of the recursion).  Width must be >= 4.
std::pair<BenesConfig, BenesConfig> benes_split_cores(const BenesConfig& cfg);

// Joins two half-width cores with explicit outer-stage switch settings into a
// combined network of twice the width.
BenesConfig benes_join_cores(const BenesConfig& top, const BenesConfig& bottom,
                             const std::vector<uint8_t>& outer_in, const std::vector<uint8_t>& outer_out);

}  // namespace fv

#endif  // FV_BENES_HPP_
