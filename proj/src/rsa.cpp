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
 * @file rsa.cpp
 * @brief RSA keygen, signing and verification over the limb integers.
 *
 * Key generation is fully deterministic: prime candidates come from a
 * SHAKE-256 stream keyed by the caller's seed, so a given (bits, seed) pair
 * always yields the same key.  Miller-Rabin witnesses come from the same
 * stream; 24 rounds leaves the error probability far below anything the
 * simulator could ever observe.
 */

#include <cmath>
#include <cstring>
#include <string_view>

#include "fv/asym.hpp"
#include "fv/error.hpp"
#include "fv/hash.hpp"

namespace fv {

namespace {

// Deterministic byte stream: SHAKE256(seed || label || counter).
std::vector<uint8_t> xof_bytes(uint64_t seed, std::string_view label, uint32_t counter,
                               size_t out_bytes) {
    std::vector<uint8_t> input;
    for (int i = 0; i < 8; ++i) input.push_back(uint8_t(seed >> (8 * i)));
    input.insert(input.end(), label.begin(), label.end());
    for (int i = 0; i < 4; ++i) input.push_back(uint8_t(counter >> (8 * i)));
    return shake256(input, out_bytes);
}

constexpr uint32_t kSmallPrimes[] = {
    3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
    59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127,
    131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
    211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
    293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383,
    389, 397, 401, 409, 419, 421, 431, 433, 439, 443, 449, 457, 461, 463, 467,
    479, 487, 491, 499, 503, 509, 521, 523, 541};

uint64_t mod_small(const LimbInt& v, uint32_t m) {
    uint64_t r = 0;
    for (size_t i = v.limb_count(); i-- > 0;) {
        // 128-bit fold: r = (r * 2^64 + limb) mod m
        unsigned __int128 acc = (static_cast<unsigned __int128>(r) << 64) | v.limb(i);
        r = uint64_t(acc % m);
    }
    return r;
}

bool miller_rabin(const LimbInt& n, uint64_t seed, uint32_t nonce, int rounds) {
    const LimbInt one = LimbInt::from_u64(1);
    const LimbInt two = LimbInt::from_u64(2);
    LimbInt n_minus_1 = LimbInt::sub(n, one);
    // n - 1 = d * 2^s
    int s = 0;
    LimbInt d = n_minus_1;
    while (!d.is_odd()) {
        d = d.shr(1);
        ++s;
    }
    auto ctx = ModContext::make(n);
    size_t nbytes = size_t(n.bit_length() + 7) / 8;
    for (int round = 0; round < rounds; ++round) {
        auto raw = xof_bytes(seed, "mr-base", nonce * 1000 + round, nbytes + 8);
        LimbInt a = LimbInt::divmod(LimbInt::from_bytes_be(raw),
                                    LimbInt::sub(n, LimbInt::from_u64(3))).second;
        a = LimbInt::add(a, two);  // a in [2, n-2]
        LimbInt x = ctx.pow(a, d);
        if (x == one || x == n_minus_1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = ctx.mul(x, x);
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

LimbInt next_prime_candidate(int bits, uint64_t seed, std::string_view label,
                             uint32_t counter) {
    auto raw = xof_bytes(seed, label, counter, size_t(bits) / 8);
    raw[0] |= 0xC0;               // full length and guaranteed n = p*q length
    raw.back() |= 0x01;           // odd
    return LimbInt::from_bytes_be(raw);
}

LimbInt gen_prime(int bits, uint64_t seed, std::string_view label, const LimbInt& e) {
    for (uint32_t counter = 0; counter < 100000; ++counter) {
        LimbInt p = next_prime_candidate(bits, seed, label, counter);
        bool composite = false;
        for (uint32_t sp : kSmallPrimes)
            if (mod_small(p, sp) == 0) {
                composite = true;
                break;
            }
        if (composite) continue;
        if (!miller_rabin(p, seed, counter, 24)) continue;
        // gcd(e, p-1) must be 1 for d to exist; e is prime, so a single
        // divisibility check suffices.
        LimbInt p1 = LimbInt::sub(p, LimbInt::from_u64(1));
        if (LimbInt::divmod(p1, e).second.is_zero()) continue;
        return p;
    }
    raise(Errc::kBadState, "rsa: prime search exhausted");
}

// Signed value for the extended-Euclid bookkeeping.
struct SignedInt {
    LimbInt mag;
    bool neg = false;
};

SignedInt s_sub(const SignedInt& a, const SignedInt& b) {
    if (a.neg != b.neg) {
        // a - (-|b|) = |a| + |b| with a's sign
        return {LimbInt::add(a.mag, b.mag), a.neg};
    }
    if (a.mag >= b.mag) return {LimbInt::sub(a.mag, b.mag), a.neg && !a.mag.is_zero()};
    return {LimbInt::sub(b.mag, a.mag), !a.neg};
}

SignedInt s_mul(const SignedInt& a, const LimbInt& k) {
    return {LimbInt::mul(a.mag, k), a.neg};
}

// a^-1 mod m for any m with gcd(a, m) == 1 (extended Euclid; composite
// moduli allowed, unlike the Fermat path in ModContext).
LimbInt modinv_general(const LimbInt& a, const LimbInt& m) {
    LimbInt r0 = m, r1 = LimbInt::divmod(a, m).second;
    SignedInt x0{LimbInt(), false}, x1{LimbInt::from_u64(1), false};
    while (!r1.is_zero()) {
        auto [q, r2] = LimbInt::divmod(r0, r1);
        SignedInt x2 = s_sub(x0, s_mul(x1, q));
        r0 = r1;
        r1 = r2;
        x0 = x1;
        x1 = x2;
    }
    if (!(r0 == LimbInt::from_u64(1)))
        raise(Errc::kBadState, "modinv: operands not coprime");
    if (x0.neg) return LimbInt::sub(m, LimbInt::divmod(x0.mag, m).second);
    return LimbInt::divmod(x0.mag, m).second;
}

LimbInt gcd(LimbInt a, LimbInt b) {
    while (!b.is_zero()) {
        LimbInt r = LimbInt::divmod(a, b).second;
        a = b;
        b = r;
    }
    return a;
}

// 0x00 0x01 FF..FF 0x00 digest, sized to the modulus.
LimbInt pad_digest(const RsaKey& key, std::span<const uint8_t> digest) {
    size_t mod_bytes = size_t(key.bits) / 8;
    if (digest.size() + 11 > mod_bytes)
        raise(Errc::kWidthMismatch, "rsa: digest too long for modulus");
    std::vector<uint8_t> block(mod_bytes, 0xFF);
    block[0] = 0x00;
    block[1] = 0x01;
    block[mod_bytes - digest.size() - 1] = 0x00;
    std::copy(digest.begin(), digest.end(), block.end() - digest.size());
    return LimbInt::from_bytes_be(block);
}

uint64_t modexp_cycles(const LimbInt& exp, int limbs, const AsymCostModel& costs) {
    return uint64_t(std::llround(double(modexp_steps(exp)) *
                                 costs.modmul_per_limb * limbs));
}

}  // namespace

uint64_t modexp_steps(const LimbInt& exp) {
    if (exp.is_zero()) return 0;
    uint64_t squarings = uint64_t(exp.bit_length()) - 1;
    uint64_t multiplies = 0;
    for (int i = 0; i < exp.bit_length(); ++i) multiplies += uint64_t(exp.bit(i));
    return squarings + (multiplies - 1);
}

RsaKey rsa_generate(int bits, uint64_t seed) {
    if (bits < 512 || bits % 128 != 0)
        raise(Errc::kIllegalKeyLength, "rsa: unsupported modulus size");
    LimbInt e = LimbInt::from_u64(65537);
    for (uint32_t attempt = 0;; ++attempt) {
        uint64_t s = seed + (uint64_t(attempt) << 48);
        LimbInt p = gen_prime(bits / 2, s, "rsa-p", e);
        LimbInt q = gen_prime(bits / 2, s, "rsa-q", e);
        if (p == q) continue;
        LimbInt n = LimbInt::mul(p, q);
        if (n.bit_length() != bits) continue;
        LimbInt p1 = LimbInt::sub(p, LimbInt::from_u64(1));
        LimbInt q1 = LimbInt::sub(q, LimbInt::from_u64(1));
        LimbInt lambda = LimbInt::divmod(LimbInt::mul(p1, q1), gcd(p1, q1)).first;
        LimbInt d = modinv_general(e, lambda);
        return RsaKey{n, e, d, bits};
    }
}

AsymResult rsa_sign(const RsaKey& key, std::span<const uint8_t> digest,
                    const AsymCostModel& costs) {
    LimbInt m = pad_digest(key, digest);
    auto ctx = ModContext::make(key.n);
    LimbInt s = ctx.pow(m, key.d);
    AsymResult r;
    r.signature = s.to_bytes_be(size_t(key.bits) / 8);
    r.accept = true;
    r.cycles = modexp_cycles(key.d, int(key.n.limb_count()), costs);
    return r;
}

AsymResult rsa_verify(const RsaKey& key, std::span<const uint8_t> digest,
                      std::span<const uint8_t> signature, const AsymCostModel& costs) {
    if (signature.size() != size_t(key.bits) / 8)
        raise(Errc::kWidthMismatch, "rsa: signature length does not match modulus");
    LimbInt s = LimbInt::from_bytes_be(signature);
    AsymResult r;
    r.cycles = modexp_cycles(key.e, int(key.n.limb_count()), costs);
    if (s >= key.n) {
        r.accept = false;
        return r;
    }
    auto ctx = ModContext::make(key.n);
    r.accept = ctx.pow(s, key.e) == pad_digest(key, digest);
    return r;
}

}  // namespace fv
