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
 * @file cipher_aes.cpp
 * @brief 128-bit block cipher configuration with 10/12/14 rounds.
 *
 * State lives in four 32-bit row words, so the row shifts are single barrel
 * rotations and the column mixing is lane-parallel across each row.  The key
 * schedule runs in column words and transposes each round key into row form
 * with wiring ops before storing it.
 */

#include <array>

#include "cipher_builder.hpp"

namespace fv {

namespace {

const uint8_t kSbox[256] = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16};

SBoxTable inverse_sbox() {
    SBoxTable t;
    for (int i = 0; i < 256; ++i) t.entries[kSbox[i]] = static_cast<uint8_t>(i);
    return t;
}

// Row-major block wiring: block byte i is state row i%4, column i/4.
std::vector<ByteWire> row_wires() {
    std::vector<ByteWire> m(16);
    for (int i = 0; i < 16; ++i) m[i] = {i % 4, i / 4};
    return m;
}

constexpr uint8_t kPoly = 0x1B;

Microprogram key_schedule(int nk, int nr) {
    Asm a;
    const int sbox_id = a.table_id(SBoxTable::from_array(kSbox));
    static const uint8_t kRcon[11] = {0, 0x01, 0x02, 0x04, 0x08, 0x10,
                                      0x20, 0x40, 0x80, 0x1B, 0x36};
    std::vector<int> w(4 * (nr + 1));
    for (int i = 0; i < nk; ++i) w[i] = a.input(i);
    for (int i = nk; i < 4 * (nr + 1); ++i) {
        int temp = w[i - 1];
        if (i % nk == 0) {
            temp = a.rotl(temp, 8);
            temp = a.sbox(temp, sbox_id);
            temp = a.xor_(temp, a.imm(static_cast<uint64_t>(kRcon[i / nk]) << 24, 32));
        } else if (nk > 6 && i % nk == 4) {
            temp = a.sbox(temp, sbox_id);
        }
        w[i] = a.xor_(w[i - nk], temp);
    }
    // Transpose each round key from column words into row words.
    for (int k = 0; k <= nr; ++k) {
        for (int r = 0; r < 4; ++r) {
            int row = -1;
            for (int c = 0; c < 4; ++c) {
                int byte = a.extract(w[4 * k + c], 8 * (3 - r), 8);
                row = (c == 0) ? a.pack(byte, a.imm(0, 8), 8, 32) : a.pack(row, byte, 8 * c, 32);
            }
            a.store_key(row, 4 * k + r);
        }
    }
    a.set_io(32, wires_be(nk * 4, 4), {}, nk, 0);
    return a.take();
}

}  // namespace

CipherProgramSet build_aes(int key_bits) {
    const int nk = key_bits / 32;
    const int nr = nk + 6;

    CipherProgramSet ps;
    ps.algo = CipherAlgo::kAes;
    ps.key_bits = key_bits;
    ps.block_bits = 128;
    ps.key_schedule_enc = key_schedule(nk, nr);

    {  // Encrypt.
        Asm a;
        const int sb = a.table_id(SBoxTable::from_array(kSbox));
        std::array<int, 4> row{};
        for (int r = 0; r < 4; ++r) row[r] = a.xor_(a.input(r), a.key(r));
        for (int round = 1; round <= nr; ++round) {
            for (int r = 0; r < 4; ++r) row[r] = a.sbox(row[r], sb);
            for (int r = 1; r < 4; ++r) row[r] = a.rotr(row[r], 8 * r);
            if (round < nr) {
                std::array<int, 4> g2{}, g3{};
                for (int r = 0; r < 4; ++r) {
                    g2[r] = a.gfmul(row[r], 2, kPoly);
                    g3[r] = a.gfmul(row[r], 3, kPoly);
                }
                std::array<int, 4> mixed{};
                for (int i = 0; i < 4; ++i) {
                    static const int kMat[4] = {2, 3, 1, 1};
                    int acc = -1;
                    for (int j = 0; j < 4; ++j) {
                        const int coef = kMat[(j - i + 4) % 4];
                        const int term = coef == 2 ? g2[j] : coef == 3 ? g3[j] : row[j];
                        acc = (j == 0) ? term : a.xor_(acc, term);
                    }
                    mixed[i] = acc;
                }
                row = mixed;
            }
            for (int r = 0; r < 4; ++r) row[r] = a.xor_(row[r], a.key(4 * round + r));
            a.mark();
        }
        for (int r = 0; r < 4; ++r) a.output(row[r], r);
        a.set_io(32, row_wires(), row_wires(), 4, 4);
        ps.encrypt = a.take();
    }

    {  // Decrypt: the straightforward inverse cipher on the same bank.
        Asm a;
        const int isb = a.table_id(inverse_sbox());
        std::array<int, 4> row{};
        for (int r = 0; r < 4; ++r) row[r] = a.xor_(a.input(r), a.key(4 * nr + r));
        for (int round = nr - 1; round >= 0; --round) {
            for (int r = 1; r < 4; ++r) row[r] = a.rotl(row[r], 8 * r);
            for (int r = 0; r < 4; ++r) row[r] = a.sbox(row[r], isb);
            for (int r = 0; r < 4; ++r) row[r] = a.xor_(row[r], a.key(4 * round + r));
            if (round > 0) {
                std::array<int, 4> g9{}, g11{}, g13{}, g14{};
                for (int r = 0; r < 4; ++r) {
                    g9[r] = a.gfmul(row[r], 9, kPoly);
                    g11[r] = a.gfmul(row[r], 11, kPoly);
                    g13[r] = a.gfmul(row[r], 13, kPoly);
                    g14[r] = a.gfmul(row[r], 14, kPoly);
                }
                std::array<int, 4> mixed{};
                for (int i = 0; i < 4; ++i) {
                    static const int kInvMat[4] = {14, 11, 13, 9};
                    int acc = -1;
                    for (int j = 0; j < 4; ++j) {
                        const int coef = kInvMat[(j - i + 4) % 4];
                        const int term = coef == 14 ? g14[j]
                                       : coef == 13 ? g13[j]
                                       : coef == 11 ? g11[j]
                                                    : g9[j];
                        acc = (j == 0) ? term : a.xor_(acc, term);
                    }
                    mixed[i] = acc;
                }
                row = mixed;
            }
            a.mark();
        }
        for (int r = 0; r < 4; ++r) a.output(row[r], r);
        a.set_io(32, row_wires(), row_wires(), 4, 4);
        ps.decrypt = a.take();
    }
    return ps;
}

}  // namespace fv
