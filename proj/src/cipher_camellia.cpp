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
 * @file cipher_camellia.cpp
 * @brief Camellia engine configuration (128-bit block, 18 or 24 rounds).
 *
 * Feistel network over two 64-bit halves.  The F-function substitutes all
 * eight bytes in one multi-table lookup and then mixes them with the
 * byte-transpose P-layer, expressed here as extract/XOR/pack wiring.  FL/FL^-1
 * layers every six rounds use AND/OR/rotate on 32-bit halves.  Decryption is
 * the encryption program over a bank with the subkey order reversed, so both
 * directions share one data program per key size.
 */

#include <array>
#include <cstdint>
#include <vector>

#include "cipher_builder.hpp"

namespace fv {

namespace {

// First substitution table; the other three are the published derivations
// s2 = s1 <<< 1, s3 = s1 >>> 1, s4 = s1 applied to the rotated index.
constexpr uint8_t kS1[256] = {
    0x70, 0x82, 0x2c, 0xec, 0xb3, 0x27, 0xc0, 0xe5, 0xe4, 0x85, 0x57, 0x35,
    0xea, 0x0c, 0xae, 0x41, 0x23, 0xef, 0x6b, 0x93, 0x45, 0x19, 0xa5, 0x21,
    0xed, 0x0e, 0x4f, 0x4e, 0x1d, 0x65, 0x92, 0xbd, 0x86, 0xb8, 0xaf, 0x8f,
    0x7c, 0xeb, 0x1f, 0xce, 0x3e, 0x30, 0xdc, 0x5f, 0x5e, 0xc5, 0x0b, 0x1a,
    0xa6, 0xe1, 0x39, 0xca, 0xd5, 0x47, 0x5d, 0x3d, 0xd9, 0x01, 0x5a, 0xd6,
    0x51, 0x56, 0x6c, 0x4d, 0x8b, 0x0d, 0x9a, 0x66, 0xfb, 0xcc, 0xb0, 0x2d,
    0x74, 0x12, 0x2b, 0x20, 0xf0, 0xb1, 0x84, 0x99, 0xdf, 0x4c, 0xcb, 0xc2,
    0x34, 0x7e, 0x76, 0x05, 0x6d, 0xb7, 0xa9, 0x31, 0xd1, 0x17, 0x04, 0xd7,
    0x14, 0x58, 0x3a, 0x61, 0xde, 0x1b, 0x11, 0x1c, 0x32, 0x0f, 0x9c, 0x16,
    0x53, 0x18, 0xf2, 0x22, 0xfe, 0x44, 0xcf, 0xb2, 0xc3, 0xb5, 0x7a, 0x91,
    0x24, 0x08, 0xe8, 0xa8, 0x60, 0xfc, 0x69, 0x50, 0xaa, 0xd0, 0xa0, 0x7d,
    0xa1, 0x89, 0x62, 0x97, 0x54, 0x5b, 0x1e, 0x95, 0xe0, 0xff, 0x64, 0xd2,
    0x10, 0xc4, 0x00, 0x48, 0xa3, 0xf7, 0x75, 0xdb, 0x8a, 0x03, 0xe6, 0xda,
    0x09, 0x3f, 0xdd, 0x94, 0x87, 0x5c, 0x83, 0x02, 0xcd, 0x4a, 0x90, 0x33,
    0x73, 0x67, 0xf6, 0xf3, 0x9d, 0x7f, 0xbf, 0xe2, 0x52, 0x9b, 0xd8, 0x26,
    0xc8, 0x37, 0xc6, 0x3b, 0x81, 0x96, 0x6f, 0x4b, 0x13, 0xbe, 0x63, 0x2e,
    0xe9, 0x79, 0xa7, 0x8c, 0x9f, 0x6e, 0xbc, 0x8e, 0x29, 0xf5, 0xf9, 0xb6,
    0x2f, 0xfd, 0xb4, 0x59, 0x78, 0x98, 0x06, 0x6a, 0xe7, 0x46, 0x71, 0xba,
    0xd4, 0x25, 0xab, 0x42, 0x88, 0xa2, 0x8d, 0xfa, 0x72, 0x07, 0xb9, 0x55,
    0xf8, 0xee, 0xac, 0x0a, 0x36, 0x49, 0x2a, 0x68, 0x3c, 0x38, 0xf1, 0xa4,
    0x40, 0x28, 0xd3, 0x7b, 0xbb, 0xc9, 0x43, 0xc1, 0x15, 0xe3, 0xad, 0xf4,
    0x77, 0xc7, 0x80, 0x9e};

constexpr uint64_t kSigma[6] = {
    0xa09e667f3bcc908bULL, 0xb67ae8584caa73b2ULL, 0xc6ef372fe94f82beULL,
    0x54ff53a5f1d36f1cULL, 0x10e527fade682d1dULL, 0xb05688c2b3e6c1fdULL};

uint8_t rotl8(uint8_t v, int n) { return static_cast<uint8_t>((v << n) | (v >> (8 - n))); }

// Registers the four tables and returns the per-lane set for the F-function
// byte order (most significant byte goes through s1).
int register_sbox_set(Asm& a) {
    uint8_t s2[256], s3[256], s4[256];
    for (int x = 0; x < 256; ++x) {
        s2[x] = rotl8(kS1[x], 1);
        s3[x] = rotl8(kS1[x], 7);
        s4[x] = kS1[rotl8(static_cast<uint8_t>(x), 1)];
    }
    int t1 = a.table_id(SBoxTable::from_array(kS1));
    int t2 = a.table_id(SBoxTable::from_array(s2));
    int t3 = a.table_id(SBoxTable::from_array(s3));
    int t4 = a.table_id(SBoxTable::from_array(s4));
    return a.table_set_id({t1, t4, t3, t2, t4, t3, t2, t1});
}

int xors(Asm& a, std::initializer_list<int> regs) {
    int acc = -1;
    for (int r : regs) acc = acc < 0 ? r : a.xor_(acc, r);
    return acc;
}

// F-function: key XOR, bytewise substitution, then the P byte-diffusion
// layer written out as the published per-byte XOR sums.
int feistel_f(Asm& a, int x, int k, int sbox_set) {
    int s = a.sbox_multi(a.xor_(x, k), sbox_set);
    std::array<int, 9> t{};  // 1-based, t[1] is the most significant byte
    for (int j = 1; j <= 8; ++j) t[j] = a.extract(s, 8 * (8 - j), 8);
    std::array<int, 9> y{};
    y[1] = xors(a, {t[1], t[3], t[4], t[6], t[7], t[8]});
    y[2] = xors(a, {t[1], t[2], t[4], t[5], t[7], t[8]});
    y[3] = xors(a, {t[1], t[2], t[3], t[5], t[6], t[8]});
    y[4] = xors(a, {t[2], t[3], t[4], t[5], t[6], t[7]});
    y[5] = xors(a, {t[1], t[2], t[6], t[7], t[8]});
    y[6] = xors(a, {t[2], t[3], t[5], t[7], t[8]});
    y[7] = xors(a, {t[3], t[4], t[5], t[6], t[8]});
    y[8] = xors(a, {t[1], t[4], t[5], t[6], t[7]});
    int acc = a.pack(y[8], y[7], 8, 64);
    for (int j = 6; j >= 1; --j) acc = a.pack(acc, y[j], 8 * (8 - j), 64);
    return acc;
}

int fl(Asm& a, int in, int k) {
    int x1 = a.extract(in, 32, 32);
    int x2 = a.extract(in, 0, 32);
    int k1 = a.extract(k, 32, 32);
    int k2 = a.extract(k, 0, 32);
    x2 = a.xor_(x2, a.rotl(a.and_(x1, k1), 1));
    x1 = a.xor_(x1, a.or_(x2, k2));
    return a.pack(x2, x1, 32, 64);
}

int fl_inv(Asm& a, int in, int k) {
    int y1 = a.extract(in, 32, 32);
    int y2 = a.extract(in, 0, 32);
    int k1 = a.extract(k, 32, 32);
    int k2 = a.extract(k, 0, 32);
    y1 = a.xor_(y1, a.or_(y2, k2));
    y2 = a.xor_(y2, a.rotl(a.and_(y1, k1), 1));
    return a.pack(y2, y1, 32, 64);
}

struct Pair {
    int hi;
    int lo;
};

// Upper/lower half of the 128-bit pair rotated left by `s` (the two helpers
// swap roles past 64, matching how the subkey tables index them).
int rot_hi(Asm& a, Pair p, int s) {
    if (s >= 64) s -= 64;
    return a.or_(a.shl(p.hi, s), a.shr(p.lo, 64 - s));
}

int rot_lo(Asm& a, Pair p, int s) {
    if (s >= 64) s -= 64;
    return a.or_(a.shr(p.hi, 64 - s), a.shl(p.lo, s));
}

// Derives KA (and KB for long keys) and lists the flat subkey array in the
// order the data program consumes it.
std::vector<int> schedule_registers(Asm& a, int key_bits, int sbox_set) {
    Pair kl{a.input(0), a.input(1)};
    Pair kr{-1, -1};
    if (key_bits == 128) {
        kr = {a.imm(0, 64), a.imm(0, 64)};
    } else if (key_bits == 192) {
        kr.hi = a.input(2);
        kr.lo = a.not_(kr.hi);
    } else {
        kr = {a.input(2), a.input(3)};
    }

    int d1 = a.xor_(kl.hi, kr.hi);
    int d2 = a.xor_(kl.lo, kr.lo);
    d2 = a.xor_(d2, feistel_f(a, d1, a.imm(kSigma[0], 64), sbox_set));
    d1 = a.xor_(d1, feistel_f(a, d2, a.imm(kSigma[1], 64), sbox_set));
    d1 = a.xor_(d1, kl.hi);
    d2 = a.xor_(d2, kl.lo);
    d2 = a.xor_(d2, feistel_f(a, d1, a.imm(kSigma[2], 64), sbox_set));
    d1 = a.xor_(d1, feistel_f(a, d2, a.imm(kSigma[3], 64), sbox_set));
    Pair ka{d1, d2};

    if (key_bits == 128) {
        return {kl.hi,
                kl.lo,
                ka.hi,
                ka.lo,
                rot_hi(a, kl, 15),
                rot_lo(a, kl, 15),
                rot_hi(a, ka, 15),
                rot_lo(a, ka, 15),
                rot_hi(a, ka, 30),
                rot_lo(a, ka, 30),
                rot_hi(a, kl, 45),
                rot_lo(a, kl, 45),
                rot_hi(a, ka, 45),
                rot_lo(a, kl, 60),
                rot_hi(a, ka, 60),
                rot_lo(a, ka, 60),
                rot_lo(a, kl, 77),
                rot_hi(a, kl, 77),
                rot_lo(a, kl, 94),
                rot_hi(a, kl, 94),
                rot_lo(a, ka, 94),
                rot_hi(a, ka, 94),
                rot_lo(a, kl, 111),
                rot_hi(a, kl, 111),
                rot_lo(a, ka, 111),
                rot_hi(a, ka, 111)};
    }

    int e1 = a.xor_(ka.hi, kr.hi);
    int e2 = a.xor_(ka.lo, kr.lo);
    e2 = a.xor_(e2, feistel_f(a, e1, a.imm(kSigma[4], 64), sbox_set));
    e1 = a.xor_(e1, feistel_f(a, e2, a.imm(kSigma[5], 64), sbox_set));
    Pair kb{e1, e2};

    return {kl.hi,
            kl.lo,
            kb.hi,
            kb.lo,
            rot_hi(a, kr, 15),
            rot_lo(a, kr, 15),
            rot_hi(a, ka, 15),
            rot_lo(a, ka, 15),
            rot_hi(a, kr, 30),
            rot_lo(a, kr, 30),
            rot_hi(a, kb, 30),
            rot_lo(a, kb, 30),
            rot_hi(a, kl, 45),
            rot_lo(a, kl, 45),
            rot_hi(a, ka, 45),
            rot_lo(a, ka, 45),
            rot_hi(a, kl, 60),
            rot_lo(a, kl, 60),
            rot_hi(a, kr, 60),
            rot_lo(a, kr, 60),
            rot_hi(a, kb, 60),
            rot_lo(a, kb, 60),
            rot_lo(a, kl, 77),
            rot_hi(a, kl, 77),
            rot_lo(a, ka, 77),
            rot_hi(a, ka, 77),
            rot_lo(a, kr, 94),
            rot_hi(a, kr, 94),
            rot_lo(a, ka, 94),
            rot_hi(a, ka, 94),
            rot_lo(a, kl, 111),
            rot_hi(a, kl, 111),
            rot_lo(a, kb, 111),
            rot_hi(a, kb, 111)};
}

Microprogram schedule_program(int key_bits, bool reversed) {
    Asm a;
    int set = register_sbox_set(a);
    auto k = schedule_registers(a, key_bits, set);
    int rk = static_cast<int>(k.size());
    if (!reversed) {
        for (int j = 0; j < rk; ++j) a.store_key(k[j], j);
    } else {
        // Decryption consumes the schedule back to front, whitening included.
        a.store_key(k[rk - 2], 0);
        a.store_key(k[rk - 1], 1);
        for (int j = 2; j < rk - 2; ++j) a.store_key(k[rk - 1 - j], j);
        a.store_key(k[0], rk - 2);
        a.store_key(k[1], rk - 1);
    }
    int kb = key_bits / 8;
    a.set_io(64, wires_be(kb, 8), {}, kb / 8, 0);
    return a.take();
}

Microprogram data_program(int key_bits) {
    Asm a;
    int set = register_sbox_set(a);
    int rk = key_bits == 128 ? 26 : 34;

    int d1 = a.input(0);
    int d2 = a.input(1);
    d1 = a.xor_(d1, a.key(0));
    d2 = a.xor_(d2, a.key(1));
    for (int i = 2; i < rk - 2; i += 2) {
        if (i % 8 == 0) {
            d1 = fl(a, d1, a.key(i));
            d2 = fl_inv(a, d2, a.key(i + 1));
            continue;
        }
        d2 = a.xor_(d2, feistel_f(a, d1, a.key(i), set));
        a.mark();
        d1 = a.xor_(d1, feistel_f(a, d2, a.key(i + 1), set));
        a.mark();
    }
    d2 = a.xor_(d2, a.key(rk - 2));
    d1 = a.xor_(d1, a.key(rk - 1));

    // The halves swap on output.
    a.output(d2, 0);
    a.output(d1, 1);
    a.set_io(64, wires_be(16, 8), wires_be(16, 8), 2, 2);
    return a.take();
}

}  // namespace

CipherProgramSet build_camellia(int key_bits) {
    CipherProgramSet s;
    s.algo = CipherAlgo::kCamellia;
    s.key_bits = key_bits;
    s.block_bits = 128;
    s.key_schedule_enc = schedule_program(key_bits, false);
    s.key_schedule_dec = schedule_program(key_bits, true);
    s.encrypt = data_program(key_bits);
    s.decrypt = s.encrypt;
    return s;
}

}  // namespace fv
