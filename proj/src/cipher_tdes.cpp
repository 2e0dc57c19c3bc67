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
 * @file cipher_tdes.cpp
 * @brief Triple-DES engine configuration (64-bit block, EDE, 48 rounds).
 *
 * The published tables index bits 1..n from the most significant end, so
 * table entry t for output position o routes word bit (width - t) to word
 * bit (n - 1 - o) and every intermediate value sits right-aligned in a
 * 64-bit register.  The expansion E duplicates half its inputs, which the
 * permutation unit cannot, so it runs as two routings OR-ed together.  The
 * S-box row/column split is folded into direct-indexed tables and the
 * compaction back to 32 bits is folded into the P permutation.
 */

#include <array>
#include <cstdint>
#include <vector>

#include "cipher_builder.hpp"

namespace fv {

namespace {

constexpr int kIp[64] = {58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4,
                         62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8,
                         57, 49, 41, 33, 25, 17, 9,  1, 59, 51, 43, 35, 27, 19, 11, 3,
                         61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7};

constexpr int kFp[64] = {40, 8, 48, 16, 56, 24, 64, 32, 39, 7, 47, 15, 55, 23, 63, 31,
                         38, 6, 46, 14, 54, 22, 62, 30, 37, 5, 45, 13, 53, 21, 61, 29,
                         36, 4, 44, 12, 52, 20, 60, 28, 35, 3, 43, 11, 51, 19, 59, 27,
                         34, 2, 42, 10, 50, 18, 58, 26, 33, 1, 41, 9,  49, 17, 57, 25};

constexpr int kE[48] = {32, 1,  2,  3,  4,  5,  4,  5,  6,  7,  8,  9,  8,  9,  10, 11,
                        12, 13, 12, 13, 14, 15, 16, 17, 16, 17, 18, 19, 20, 21, 20, 21,
                        22, 23, 24, 25, 24, 25, 26, 27, 28, 29, 28, 29, 30, 31, 32, 1};

constexpr int kP[32] = {16, 7, 20, 21, 29, 12, 28, 17, 1,  15, 23, 26, 5,  18, 31, 10,
                        2,  8, 24, 14, 32, 27, 3,  9,  19, 13, 30, 6,  22, 11, 4,  25};

constexpr int kPc1[56] = {57, 49, 41, 33, 25, 17, 9,  1,  58, 50, 42, 34, 26, 18,
                          10, 2,  59, 51, 43, 35, 27, 19, 11, 3,  60, 52, 44, 36,
                          63, 55, 47, 39, 31, 23, 15, 7,  62, 54, 46, 38, 30, 22,
                          14, 6,  61, 53, 45, 37, 29, 21, 13, 5,  28, 20, 12, 4};

constexpr int kPc2[48] = {14, 17, 11, 24, 1,  5,  3,  28, 15, 6,  21, 10, 23, 19, 12, 4,
                          26, 8,  16, 7,  27, 20, 13, 2,  41, 52, 31, 37, 47, 55, 30, 40,
                          51, 45, 33, 48, 44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32};

constexpr int kShifts[16] = {1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1};

// Selection tables in the published 4x16 row/column layout; row is the outer
// bit pair of the 6-bit group, column the middle four bits.
constexpr uint8_t kSbox[8][4][16] = {
    {{14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7},
     {0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8},
     {4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0},
     {15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13}},
    {{15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10},
     {3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5},
     {0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15},
     {13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9}},
    {{10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8},
     {13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1},
     {13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7},
     {1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12}},
    {{7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15},
     {13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9},
     {10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4},
     {3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14}},
    {{2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9},
     {14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6},
     {4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14},
     {11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3}},
    {{12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11},
     {10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8},
     {9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6},
     {4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13}},
    {{4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1},
     {13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6},
     {1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2},
     {6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12}},
    {{13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7},
     {1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2},
     {7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8},
     {2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11}}};

struct RoutedPerm {
    int id;
    uint64_t mask;
};

// Translates a published 1-indexed-from-MSB table into permutation unit
// routings.  Entries that repeat a source bit spill into a second routing.
std::vector<RoutedPerm> route_table(Asm& a, const int* table, int n, int width_in) {
    std::vector<std::vector<int>> perms;
    std::vector<uint64_t> masks;
    for (int o = 0; o < n; ++o) {
        int src = width_in - table[o];
        int dst = n - 1 - o;
        size_t pi = 0;
        while (pi < perms.size() && perms[pi][src] != -1) ++pi;
        if (pi == perms.size()) {
            perms.emplace_back(64, -1);
            masks.push_back(0);
        }
        perms[pi][src] = dst;
        masks[pi] |= 1ULL << dst;
    }
    std::vector<RoutedPerm> out;
    for (size_t i = 0; i < perms.size(); ++i)
        out.push_back({a.perm_id(route_benes(complete_perm(perms[i]))), masks[i]});
    return out;
}

int apply_routed(Asm& a, int x, const std::vector<RoutedPerm>& rp) {
    int acc = -1;
    for (const auto& r : rp) {
        int t = a.perm(x, r.id);
        if (r.mask != ~0ULL) t = a.and_imm(t, r.mask, 64);
        acc = acc < 0 ? t : a.or_(acc, t);
    }
    return acc;
}

// Everything one DES pass needs; registered once per program.
struct DesIds {
    std::vector<RoutedPerm> ip, fp, e;
    int spread;        // 6-bit groups into byte lanes
    int compact_p;     // lane nibbles back to 32 bits, P folded in
    int sbox_set;
    int zero32;
};

DesIds register_des(Asm& a) {
    DesIds ids;
    ids.ip = route_table(a, kIp, 64, 64);
    ids.fp = route_table(a, kFp, 64, 64);
    ids.e = route_table(a, kE, 48, 32);

    std::vector<int> spread(64, -1);
    for (int g = 0; g < 8; ++g)
        for (int k = 0; k < 6; ++k) spread[47 - 6 * g - k] = 8 * (7 - g) + 5 - k;
    ids.spread = a.perm_id(route_benes(complete_perm(spread)));

    std::vector<int> compact(64, -1);
    for (int o = 0; o < 32; ++o) {
        int c = kP[o] - 1;
        compact[8 * (7 - c / 4) + 3 - c % 4] = 31 - o;
    }
    ids.compact_p = a.perm_id(route_benes(complete_perm(compact)));

    std::array<int, 8> tables{};
    for (int g = 0; g < 8; ++g) {
        uint8_t direct[256];
        for (int b = 0; b < 256; ++b) {
            int six = b & 0x3F;
            direct[b] = kSbox[g][((six >> 4) & 2) | (six & 1)][(six >> 1) & 0xF];
        }
        tables[g] = a.table_id(SBoxTable::from_array(direct));
    }
    std::array<int, 8> lanes{};
    for (int l = 0; l < 8; ++l) lanes[l] = tables[7 - l];
    ids.sbox_set = a.table_set_id(lanes);

    ids.zero32 = a.imm(0, 32);
    return ids;
}

// f(R, k): expand, key-mix, substitute, permute; R arrives as a 32-bit
// register and the result is returned the same way.
int feistel(Asm& a, const DesIds& ids, int r32, int key) {
    int x = apply_routed(a, a.pack(r32, ids.zero32, 32, 64), ids.e);
    x = a.xor_(x, key);
    x = a.and_imm(a.perm(x, ids.spread), 0x3f3f3f3f3f3f3f3fULL, 64);
    x = a.sbox_multi(x, ids.sbox_set);
    x = a.perm(x, ids.compact_p);
    return a.extract(x, 0, 32);
}

// One DES application; `reversed` walks the 16 subkey slots backwards, which
// is all that distinguishes deciphering.
int des_pass(Asm& a, const DesIds& ids, int x, int base_slot, bool reversed) {
    int v = apply_routed(a, x, ids.ip);
    int l = a.extract(v, 32, 32);
    int r = a.extract(v, 0, 32);
    for (int i = 0; i < 16; ++i) {
        int slot = base_slot + (reversed ? 15 - i : i);
        int nr = a.xor_(l, feistel(a, ids, r, a.key(slot)));
        l = r;
        r = nr;
        a.mark();
    }
    // Pre-output swaps the halves.
    return apply_routed(a, a.pack(l, r, 32, 64), ids.fp);
}

Microprogram data_program(bool decrypt) {
    Asm a;
    DesIds ids = register_des(a);
    int x = a.input(0);
    if (!decrypt) {
        x = des_pass(a, ids, x, 0, false);
        x = des_pass(a, ids, x, 16, true);
        x = des_pass(a, ids, x, 32, false);
    } else {
        x = des_pass(a, ids, x, 32, true);
        x = des_pass(a, ids, x, 16, false);
        x = des_pass(a, ids, x, 0, true);
    }
    a.output(x, 0);
    a.set_io(64, wires_be(8, 8), wires_be(8, 8), 1, 1);
    return a.take();
}

int rot28(Asm& a, int x, int s) {
    return a.and_imm(a.or_(a.shl(x, s), a.shr(x, 28 - s)), 0x0FFFFFFF, 64);
}

// Subkey slots: pass p's sixteen round keys occupy 16p..16p+15.  Two-key
// keying repeats the first key word for the final pass.
Microprogram schedule_program(int key_bits) {
    Asm a;
    int words = key_bits == 112 ? 2 : 3;
    auto pc1 = route_table(a, kPc1, 56, 64);
    auto pc2 = route_table(a, kPc2, 48, 56);

    std::array<int, 3> kw{};
    for (int i = 0; i < words; ++i) kw[i] = a.input(i);
    if (words == 2) kw[2] = kw[0];

    for (int p = 0; p < 3; ++p) {
        int cd = apply_routed(a, kw[p], pc1);
        int c = a.shr(cd, 28);
        int d = a.and_imm(cd, 0x0FFFFFFF, 64);
        for (int i = 0; i < 16; ++i) {
            c = rot28(a, c, kShifts[i]);
            d = rot28(a, d, kShifts[i]);
            int k = apply_routed(a, a.or_(a.shl(c, 28), d), pc2);
            a.store_key(k, 16 * p + i);
        }
    }
    a.set_io(64, wires_be(words * 8, 8), {}, words, 0);
    return a.take();
}

}  // namespace

CipherProgramSet build_tdes(int key_bits) {
    CipherProgramSet s;
    s.algo = CipherAlgo::kTdes;
    s.key_bits = key_bits;
    s.block_bits = 64;
    s.key_schedule_enc = schedule_program(key_bits);
    s.encrypt = data_program(false);
    s.decrypt = data_program(true);
    return s;
}

}  // namespace fv
