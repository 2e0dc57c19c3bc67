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
 * @file cipher_idea.cpp
 * @brief IDEA engine configuration (64-bit block, 128-bit key, 8.5 rounds).
 *
 * The state is four 16-bit words combined with three incompatible group
 * operations: XOR, addition mod 2^16, and multiplication mod 2^16+1 (zero
 * standing in for 2^16).  Decryption runs the same data program against a
 * bank of inverted subkeys, so the inverse schedule computes multiplicative
 * inverses by exponentiation inside the arithmetic unit.
 */

#include <array>
#include <vector>

#include "cipher_builder.hpp"

namespace fv {

namespace {

// Multiplicative inverse mod 2^16+1 as x^(2^16-1): fifteen square-multiply
// steps keep the whole inversion inside the 16-bit multiplier.
int inv16(Asm& a, int x) {
    int acc = x;
    for (int i = 0; i < 15; ++i) acc = a.mulm(a.mulm(acc, acc), x);
    return acc;
}

int neg16(Asm& a, int zero, int x) { return a.subl(zero, x, 16); }

// Emits the 52 encryption subkeys as registers, in Z1..Z52 order: eight
// 16-bit slices of the key, then eight more after each 25-bit left rotation
// of the full 128-bit string.
std::vector<int> schedule_registers(Asm& a) {
    int hi = a.input(0);
    int lo = a.input(1);
    std::vector<int> z;
    while (static_cast<int>(z.size()) < 52) {
        for (int j = 0; j < 8 && static_cast<int>(z.size()) < 52; ++j) {
            int word = j < 4 ? hi : lo;
            z.push_back(a.extract(word, 48 - 16 * (j % 4), 16));
        }
        int nh = a.or_(a.shl(hi, 25), a.shr(lo, 39));
        int nl = a.or_(a.shl(lo, 25), a.shr(hi, 39));
        hi = nh;
        lo = nl;
    }
    return z;
}

Microprogram schedule_enc() {
    Asm a;
    auto z = schedule_registers(a);
    for (int i = 0; i < 52; ++i) a.store_key(z[i], i);
    a.set_io(64, wires_be(16, 8), {}, 2, 0);
    return a.take();
}

// Inverse schedule: decryption round r uses the inverses of the keys that
// encryption applies last-to-first, with the two middle adds swapped for the
// inner rounds (the round's B/C exchange folds into the key order there).
Microprogram schedule_dec() {
    Asm a;
    auto z = schedule_registers(a);
    int zero = a.imm(0, 16);

    a.store_key(inv16(a, z[48]), 0);
    a.store_key(neg16(a, zero, z[49]), 1);
    a.store_key(neg16(a, zero, z[50]), 2);
    a.store_key(inv16(a, z[51]), 3);
    a.store_key(z[46], 4);
    a.store_key(z[47], 5);
    for (int r = 2; r <= 8; ++r) {
        int be = 6 * (9 - r);   // whose Z1..Z4 get inverted
        int bf = 6 * (8 - r);   // whose Z5/Z6 carry over
        int base = 6 * (r - 1);
        a.store_key(inv16(a, z[be]), base);
        a.store_key(neg16(a, zero, z[be + 2]), base + 1);
        a.store_key(neg16(a, zero, z[be + 1]), base + 2);
        a.store_key(inv16(a, z[be + 3]), base + 3);
        a.store_key(z[bf + 4], base + 4);
        a.store_key(z[bf + 5], base + 5);
    }
    a.store_key(inv16(a, z[0]), 48);
    a.store_key(neg16(a, zero, z[1]), 49);
    a.store_key(neg16(a, zero, z[2]), 50);
    a.store_key(inv16(a, z[3]), 51);

    a.set_io(64, wires_be(16, 8), {}, 2, 0);
    return a.take();
}

Microprogram data_program() {
    Asm a;
    int x1 = a.input(0);
    int x2 = a.input(1);
    int x3 = a.input(2);
    int x4 = a.input(3);

    for (int r = 0; r < 8; ++r) {
        int b = 6 * r;
        int A = a.mulm(x1, a.key(b));
        int B = a.addl(x2, a.key(b + 1), 16);
        int C = a.addl(x3, a.key(b + 2), 16);
        int D = a.mulm(x4, a.key(b + 3));
        int E = a.xor_(A, C);
        int F = a.xor_(B, D);
        int t0 = a.mulm(E, a.key(b + 4));
        int t1 = a.mulm(a.addl(F, t0, 16), a.key(b + 5));
        int t2 = a.addl(t0, t1, 16);
        x1 = a.xor_(A, t1);
        x2 = a.xor_(C, t1);
        x3 = a.xor_(B, t2);
        x4 = a.xor_(D, t2);
        a.mark();
    }
    // Output transform: undo the last swap, then one more half-round.
    a.output(a.mulm(x1, a.key(48)), 0);
    a.output(a.addl(x3, a.key(49), 16), 1);
    a.output(a.addl(x2, a.key(50), 16), 2);
    a.output(a.mulm(x4, a.key(51)), 3);
    a.mark(1);

    a.set_io(16, wires_be(8, 2), wires_be(8, 2), 4, 4);
    return a.take();
}

}  // namespace

CipherProgramSet build_idea(int key_bits) {
    CipherProgramSet s;
    s.algo = CipherAlgo::kIdea;
    s.key_bits = key_bits;
    s.block_bits = 64;
    s.key_schedule_enc = schedule_enc();
    s.key_schedule_dec = schedule_dec();
    s.encrypt = data_program();
    s.decrypt = data_program();
    return s;
}

}  // namespace fv
