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
 * @file cipher_serpent.cpp
 * @brief Serpent engine configuration (128-bit block, 32 rounds, bitsliced).
 *
 * The state is four 32-bit words holding bit slices: S-box input j is the
 * j-th bit of each word.  The engine gathers eight slices at a time through
 * the permutation unit into nibble-per-byte form, substitutes them with one
 * table lookup, and scatters the results back — four gather/scatter chunks
 * per S-box layer.  The linear transform is rotate/shift/XOR on the words.
 */

#include <array>
#include <cstdint>
#include <vector>

#include "cipher_builder.hpp"

namespace fv {

namespace {

constexpr uint8_t kS[8][16] = {
    {3, 8, 15, 1, 10, 6, 5, 11, 14, 13, 4, 2, 7, 0, 9, 12},
    {15, 12, 2, 7, 9, 0, 5, 10, 1, 11, 14, 8, 6, 13, 3, 4},
    {8, 6, 7, 9, 3, 12, 10, 15, 13, 1, 14, 4, 0, 11, 5, 2},
    {0, 15, 11, 8, 12, 9, 6, 3, 13, 1, 2, 4, 10, 7, 5, 14},
    {1, 15, 8, 3, 12, 0, 11, 6, 2, 5, 4, 10, 9, 14, 7, 13},
    {15, 5, 2, 11, 4, 10, 9, 12, 0, 3, 14, 8, 13, 6, 7, 1},
    {7, 2, 12, 5, 8, 4, 6, 11, 14, 9, 1, 15, 13, 3, 10, 0},
    {1, 13, 15, 0, 14, 8, 2, 11, 7, 4, 12, 10, 9, 3, 5, 6}};

constexpr uint8_t kSInv[8][16] = {
    {13, 3, 11, 0, 10, 6, 5, 12, 1, 14, 4, 7, 15, 9, 8, 2},
    {5, 8, 2, 14, 15, 6, 12, 3, 11, 4, 7, 9, 1, 13, 10, 0},
    {12, 9, 15, 4, 11, 14, 1, 2, 0, 3, 6, 13, 5, 8, 10, 7},
    {0, 9, 10, 7, 11, 14, 6, 13, 3, 5, 12, 2, 4, 8, 15, 1},
    {5, 0, 8, 3, 10, 9, 7, 14, 2, 12, 11, 6, 4, 15, 13, 1},
    {8, 15, 2, 9, 4, 1, 13, 14, 11, 6, 5, 3, 7, 12, 10, 0},
    {15, 10, 1, 13, 5, 3, 6, 0, 4, 9, 14, 7, 2, 12, 8, 11},
    {3, 0, 6, 13, 9, 14, 15, 8, 5, 12, 11, 7, 10, 1, 4, 2}};

constexpr uint32_t kPhi = 0x9e3779b9;

// Permutation ids for the four 8-slice chunks of one S-box layer.
struct SliceIds {
    std::array<int, 4> gather_a, gather_b, scatter_a, scatter_b;
};

SliceIds register_slice_perms(Asm& a) {
    SliceIds ids;
    for (int c = 0; c < 4; ++c) {
        std::vector<int> ga(64, -1), gb(64, -1), sa(64, -1), sb(64, -1);
        for (int j = 0; j < 8; ++j) {
            // Slice 8c+j of the packed halves gathers into byte lane j.
            ga[8 * c + j] = 8 * j;
            ga[32 + 8 * c + j] = 8 * j + 1;
            gb[8 * c + j] = 8 * j + 2;
            gb[32 + 8 * c + j] = 8 * j + 3;
            sa[8 * j] = 8 * c + j;
            sa[8 * j + 1] = 32 + 8 * c + j;
            sb[8 * j + 2] = 8 * c + j;
            sb[8 * j + 3] = 32 + 8 * c + j;
        }
        ids.gather_a[c] = a.perm_id(route_benes(complete_perm(ga)));
        ids.gather_b[c] = a.perm_id(route_benes(complete_perm(gb)));
        ids.scatter_a[c] = a.perm_id(route_benes(complete_perm(sa)));
        ids.scatter_b[c] = a.perm_id(route_benes(complete_perm(sb)));
    }
    return ids;
}

// One bitsliced S-box layer over the four state words.
std::array<int, 4> apply_sbox(Asm& a, const SliceIds& ids, std::array<int, 4> x, int table) {
    int pa = a.pack(x[0], x[1], 32, 64);
    int pb = a.pack(x[2], x[3], 32, 64);
    std::array<int, 4> sub{};
    for (int c = 0; c < 4; ++c) {
        int nib = a.or_(a.and_imm(a.perm(pa, ids.gather_a[c]), 0x0303030303030303ULL, 64),
                        a.and_imm(a.perm(pb, ids.gather_b[c]), 0x0c0c0c0c0c0c0c0cULL, 64));
        sub[c] = a.sbox(nib, table);
    }
    int oa = -1, ob = -1;
    for (int c = 0; c < 4; ++c) {
        uint64_t mask = (0xffULL << (8 * c)) | (0xffULL << (32 + 8 * c));
        int ta = a.and_imm(a.perm(sub[c], ids.scatter_a[c]), mask, 64);
        int tb = a.and_imm(a.perm(sub[c], ids.scatter_b[c]), mask, 64);
        oa = c == 0 ? ta : a.or_(oa, ta);
        ob = c == 0 ? tb : a.or_(ob, tb);
    }
    return {a.extract(oa, 0, 32), a.extract(oa, 32, 32), a.extract(ob, 0, 32),
            a.extract(ob, 32, 32)};
}

void linear_transform(Asm& a, std::array<int, 4>& x) {
    x[0] = a.rotl(x[0], 13);
    x[2] = a.rotl(x[2], 3);
    x[1] = a.xor_(x[1], a.xor_(x[0], x[2]));
    x[3] = a.xor_(x[3], a.xor_(x[2], a.shl(x[0], 3)));
    x[1] = a.rotl(x[1], 1);
    x[3] = a.rotl(x[3], 7);
    x[0] = a.xor_(x[0], a.xor_(x[1], x[3]));
    x[2] = a.xor_(x[2], a.xor_(x[3], a.shl(x[1], 7)));
    x[0] = a.rotl(x[0], 5);
    x[2] = a.rotl(x[2], 22);
}

void linear_transform_inv(Asm& a, std::array<int, 4>& x) {
    x[2] = a.rotr(x[2], 22);
    x[0] = a.rotr(x[0], 5);
    x[2] = a.xor_(x[2], a.xor_(x[3], a.shl(x[1], 7)));
    x[0] = a.xor_(x[0], a.xor_(x[1], x[3]));
    x[3] = a.rotr(x[3], 7);
    x[1] = a.rotr(x[1], 1);
    x[3] = a.xor_(x[3], a.xor_(x[2], a.shl(x[0], 3)));
    x[1] = a.xor_(x[1], a.xor_(x[0], x[2]));
    x[2] = a.rotr(x[2], 3);
    x[0] = a.rotr(x[0], 13);
}

void key_xor(Asm& a, std::array<int, 4>& x, int round) {
    for (int l = 0; l < 4; ++l) x[l] = a.xor_(x[l], a.key(4 * round + l));
}

std::array<int, 8> sbox_tables(Asm& a, const uint8_t (&boxes)[8][16]) {
    std::array<int, 8> t{};
    for (int i = 0; i < 8; ++i) {
        std::array<uint8_t, 16> box{};
        for (int j = 0; j < 16; ++j) box[j] = boxes[i][j];
        t[i] = a.table_id(SBoxTable::from_nibble_box(box));
    }
    return t;
}

// Prekey expansion plus the bitsliced S-box pass over each 33-subkey group.
Microprogram schedule_program(int key_bits) {
    Asm a;
    auto ids = register_slice_perms(a);
    auto tables = sbox_tables(a, kS);

    int n = key_bits / 32;
    std::vector<int> v;
    for (int i = 0; i < n; ++i) v.push_back(a.input(i));
    if (n < 8) v.push_back(a.imm(1, 32));  // key padding marker bit
    while (v.size() < 8) v.push_back(a.imm(0, 32));

    for (int j = 0; j < 132; ++j) {
        int t = a.xor_(a.xor_(v[j], v[j + 3]), a.xor_(v[j + 5], v[j + 7]));
        v.push_back(a.rotl(a.xor_(t, a.imm(kPhi ^ static_cast<uint32_t>(j), 32)), 11));
    }
    for (int i = 0; i < 33; ++i) {
        std::array<int, 4> g = {v[8 + 4 * i], v[9 + 4 * i], v[10 + 4 * i], v[11 + 4 * i]};
        g = apply_sbox(a, ids, g, tables[((3 - i) % 8 + 8) % 8]);
        for (int l = 0; l < 4; ++l) a.store_key(g[l], 4 * i + l);
    }
    a.set_io(32, wires_le(key_bits / 8, 4), {}, n, 0);
    return a.take();
}

Microprogram encrypt_program() {
    Asm a;
    auto ids = register_slice_perms(a);
    auto tables = sbox_tables(a, kS);

    std::array<int, 4> x{};
    for (int l = 0; l < 4; ++l) x[l] = a.input(l);
    for (int i = 0; i < 32; ++i) {
        key_xor(a, x, i);
        x = apply_sbox(a, ids, x, tables[i % 8]);
        if (i < 31)
            linear_transform(a, x);
        else
            key_xor(a, x, 32);
        a.mark();
    }
    for (int l = 0; l < 4; ++l) a.output(x[l], l);
    a.set_io(32, wires_le(16, 4), wires_le(16, 4), 4, 4);
    return a.take();
}

Microprogram decrypt_program() {
    Asm a;
    auto ids = register_slice_perms(a);
    auto tables = sbox_tables(a, kSInv);

    std::array<int, 4> x{};
    for (int l = 0; l < 4; ++l) x[l] = a.input(l);
    for (int i = 31; i >= 0; --i) {
        if (i == 31)
            key_xor(a, x, 32);
        else
            linear_transform_inv(a, x);
        x = apply_sbox(a, ids, x, tables[i % 8]);
        key_xor(a, x, i);
        a.mark();
    }
    for (int l = 0; l < 4; ++l) a.output(x[l], l);
    a.set_io(32, wires_le(16, 4), wires_le(16, 4), 4, 4);
    return a.take();
}

}  // namespace

CipherProgramSet build_serpent(int key_bits) {
    CipherProgramSet s;
    s.algo = CipherAlgo::kSerpent;
    s.key_bits = key_bits;
    s.block_bits = 128;
    s.key_schedule_enc = schedule_program(key_bits);
    s.encrypt = encrypt_program();
    s.decrypt = decrypt_program();
    return s;
}

}  // namespace fv
