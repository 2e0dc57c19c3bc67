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
 * @file sbox.cpp
 * @brief Substitution table lookup and the hex interchange format.
 */

#include "fv/sbox.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "fv/error.hpp"

namespace fv {

SBoxTable SBoxTable::from_array(const uint8_t (&bytes)[256]) {
    SBoxTable t;
    for (int i = 0; i < 256; ++i) t.entries[i] = bytes[i];
    return t;
}

SBoxTable SBoxTable::from_nibble_box(const std::array<uint8_t, 16>& box) {
    SBoxTable t;
    for (int i = 0; i < 256; ++i) t.entries[i] = box[i & 15];
    return t;
}

Word sbox_lookup(const Word& x, const SBoxTable& table) {
    if (x.width == 4) return Word{static_cast<uint64_t>(table.entries[x.value] & 0x0F), 4};
    if (x.width % 8 != 0) raise(Errc::kBadWidth, "lookup word does not split into byte lanes");
    uint64_t out = 0;
    for (int lane = 0; lane < x.width / 8; ++lane) {
        const uint8_t in = static_cast<uint8_t>(x.value >> (8 * lane));
        out |= static_cast<uint64_t>(table.entries[in]) << (8 * lane);
    }
    return Word{out, x.width};
}

SBoxTable load_sbox_hex(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::kIoError, "cannot open " + path);
    SBoxTable t;
    int count = 0;
    std::string tok;
    while (in >> tok) {
        if (count >= 256) raise(Errc::kBadConfig, path + ": more than 256 entries");
        if (tok.size() != 2 || !std::isxdigit(static_cast<unsigned char>(tok[0])) ||
            !std::isxdigit(static_cast<unsigned char>(tok[1])))
            raise(Errc::kBadConfig, path + ": token '" + tok + "' is not a two-digit hex byte");
        t.entries[count++] = static_cast<uint8_t>(std::stoi(tok, nullptr, 16));
    }
    if (count != 256) raise(Errc::kBadConfig, path + ": expected 256 entries, got " + std::to_string(count));
    return t;
}

void save_sbox_hex(const SBoxTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::kIoError, "cannot open " + path + " for writing");
    char buf[4];
    for (int i = 0; i < 256; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", table.entries[i]);
        out << buf << ((i % 16 == 15) ? '\n' : ' ');
    }
}

}  // namespace fv
