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
 * @file cipher_hight.cpp
 * @brief HIGHT engine configuration (64-bit block, 128-bit key, 32 rounds).
 *
 * Byte-oriented ARX cipher: the state is eight 8-bit words, mixed with
 * rotate-XOR auxiliary functions and mod-256 add/subtract.  Subkeys are the
 * master key bytes plus a 7-bit-LFSR-derived delta sequence; whitening keys
 * are straight master key bytes.  The final round keeps bytes in place, which
 * the builder expresses by relabeling registers rather than emitting moves.
 */

#include <array>
#include <cstdint>

#include "cipher_builder.hpp"

namespace fv {

namespace {

// Delta constants: d_i = bits s_i..s_{i+6} of the LFSR stream
// s_{i+6} = s_{i+2} ^ s_{i-1} seeded with 0101101.
std::array<uint8_t, 128> delta_table() {
    std::array<int, 134> seq{};
    const int seed[7] = {0, 1, 0, 1, 1, 0, 1};
    for (int i = 0; i < 7; ++i) seq[i] = seed[i];
    for (int n = 7; n < 134; ++n) {
        int i = n - 6;
        seq[n] = seq[i + 2] ^ seq[i - 1];
    }
    std::array<uint8_t, 128> d{};
    for (int i = 0; i < 128; ++i) {
        int v = 0;
        for (int b = 0; b < 7; ++b) v |= seq[i + b] << b;
        d[i] = static_cast<uint8_t>(v);
    }
    return d;
}

// Subkey bank layout: slots 0..127 hold the round subkeys, 128..135 the
// whitening keys wk0..wk7.
constexpr int kWk = 128;

Microprogram schedule_program() {
    Asm a;
    std::array<int, 16> mk{};
    for (int i = 0; i < 16; ++i) mk[i] = a.input(i);

    auto delta = delta_table();
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            int lo = 16 * i + j;
            int hi = 16 * i + j + 8;
            int m = ((j - i) % 8 + 8) % 8;
            a.store_key(a.addl(mk[m], a.imm(delta[lo], 8), 8), lo);
            a.store_key(a.addl(mk[m + 8], a.imm(delta[hi], 8), 8), hi);
        }
    }
    // wk0..wk3 = mk12..mk15, wk4..wk7 = mk0..mk3.
    for (int i = 0; i < 4; ++i) a.store_key(mk[12 + i], kWk + i);
    for (int i = 0; i < 4; ++i) a.store_key(mk[i], kWk + 4 + i);

    a.set_io(8, wires_be(16, 1), {}, 16, 0);
    return a.take();
}

int f0(Asm& a, int x) {
    return a.xor_(a.xor_(a.rotl(x, 1), a.rotl(x, 2)), a.rotl(x, 7));
}

int f1(Asm& a, int x) {
    return a.xor_(a.xor_(a.rotl(x, 3), a.rotl(x, 4)), a.rotl(x, 6));
}

Microprogram encrypt_program() {
    Asm a;
    std::array<int, 8> x{};
    for (int i = 0; i < 8; ++i) x[i] = a.input(i);

    x[0] = a.addl(x[0], a.key(kWk + 0), 8);
    x[2] = a.xor_(x[2], a.key(kWk + 1));
    x[4] = a.addl(x[4], a.key(kWk + 2), 8);
    x[6] = a.xor_(x[6], a.key(kWk + 3));

    for (int r = 0; r < 32; ++r) {
        std::array<int, 8> n{};
        n[1] = x[0];
        n[3] = x[2];
        n[5] = x[4];
        n[7] = x[6];
        n[0] = a.xor_(x[7], a.addl(f0(a, x[6]), a.key(4 * r + 3), 8));
        n[2] = a.addl(x[1], a.xor_(f1(a, x[0]), a.key(4 * r + 2)), 8);
        n[4] = a.xor_(x[3], a.addl(f0(a, x[2]), a.key(4 * r + 1), 8));
        n[6] = a.addl(x[5], a.xor_(f1(a, x[4]), a.key(4 * r)), 8);
        x = n;
        a.mark();
    }
    // Round 32 keeps bytes in place: undo the positional rotation.
    x = {x[1], x[2], x[3], x[4], x[5], x[6], x[7], x[0]};

    x[0] = a.addl(x[0], a.key(kWk + 4), 8);
    x[2] = a.xor_(x[2], a.key(kWk + 5));
    x[4] = a.addl(x[4], a.key(kWk + 6), 8);
    x[6] = a.xor_(x[6], a.key(kWk + 7));

    for (int i = 0; i < 8; ++i) a.output(x[i], i);
    a.set_io(8, wires_be(8, 1), wires_be(8, 1), 8, 8);
    return a.take();
}

Microprogram decrypt_program() {
    Asm a;
    std::array<int, 8> x{};
    for (int i = 0; i < 8; ++i) x[i] = a.input(i);

    x[0] = a.subl(x[0], a.key(kWk + 4), 8);
    x[2] = a.xor_(x[2], a.key(kWk + 5));
    x[4] = a.subl(x[4], a.key(kWk + 6), 8);
    x[6] = a.xor_(x[6], a.key(kWk + 7));
    x = {x[7], x[0], x[1], x[2], x[3], x[4], x[5], x[6]};

    for (int r = 31; r >= 0; --r) {
        std::array<int, 8> p{};
        p[0] = x[1];
        p[2] = x[3];
        p[4] = x[5];
        p[6] = x[7];
        p[7] = a.xor_(x[0], a.addl(f0(a, p[6]), a.key(4 * r + 3), 8));
        p[1] = a.subl(x[2], a.xor_(f1(a, p[0]), a.key(4 * r + 2)), 8);
        p[3] = a.xor_(x[4], a.addl(f0(a, p[2]), a.key(4 * r + 1), 8));
        p[5] = a.subl(x[6], a.xor_(f1(a, p[4]), a.key(4 * r)), 8);
        x = p;
        a.mark();
    }

    x[0] = a.subl(x[0], a.key(kWk + 0), 8);
    x[2] = a.xor_(x[2], a.key(kWk + 1));
    x[4] = a.subl(x[4], a.key(kWk + 2), 8);
    x[6] = a.xor_(x[6], a.key(kWk + 3));

    for (int i = 0; i < 8; ++i) a.output(x[i], i);
    a.set_io(8, wires_be(8, 1), wires_be(8, 1), 8, 8);
    return a.take();
}

}  // namespace

CipherProgramSet build_hight(int key_bits) {
    CipherProgramSet s;
    s.algo = CipherAlgo::kHight;
    s.key_bits = key_bits;
    s.block_bits = 64;
    s.key_schedule_enc = schedule_program();
    s.encrypt = encrypt_program();
    s.decrypt = decrypt_program();
    return s;
}

}  // namespace fv
