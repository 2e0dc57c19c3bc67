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
 * @file sbox.hpp
 * @brief 256-entry substitution tables.  A lookup unit holds four byte-wide
 *        tables; narrow (4/6-bit) S-boxes use the same tables with the unused
 *        high index bits zero-padded.
 */

#ifndef FV_SBOX_HPP_
#define FV_SBOX_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "fv/word.hpp"

namespace fv {

struct SBoxTable {
    std::array<uint8_t, 256> entries{};

    static SBoxTable from_array(const uint8_t (&bytes)[256]);
    // Builds a byte table from a 16-entry nibble box: index = zero-padded
    // value, entry = S[index & 15].  Matches the zero-padding lookup rule.
    static SBoxTable from_nibble_box(const std::array<uint8_t, 16>& box);
};

// Substitutes every 8-bit lane of the word through the table.  A 4-bit word
// is a single zero-padded lane; other widths that do not split into byte
// lanes are rejected.
Word sbox_lookup(const Word& x, const SBoxTable& table);

// Plain-text interchange format: 256 two-digit hex bytes separated by
// whitespace (line breaks allowed anywhere).
SBoxTable load_sbox_hex(const std::string& path);
void save_sbox_hex(const SBoxTable& table, const std::string& path);

}  // namespace fv

#endif  // FV_SBOX_HPP_
