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
 * @file ntt.cpp
 * @brief Negacyclic number-theoretic transform.
 *
 * The negacyclic transform is the cyclic one applied after twisting the
 * input by powers of psi; pointwise products then correspond to polynomial
 * products mod x^n + 1.  One parameter check runs per call — the transform
 * is used at configuration time, not in inner loops.
 */

#include <bit>

#include "fv/asym.hpp"
#include "fv/error.hpp"

namespace fv {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q) {
    return uint64_t(static_cast<unsigned __int128>(a) * b % q);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t q) {
    uint64_t r = 1 % q;
    base %= q;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, q);
        base = mulmod(base, base, q);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, exact for anything below 3.3 * 10^24.
bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL})
        if (n % p == 0) return n == p;
    uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                       29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

void validate_params(const NttParams& params) {
    if (params.n < 2 || (params.n & (params.n - 1)) != 0)
        raise(Errc::kBadConfig, "ntt: n must be a power of two");
    if (params.q >= (1ULL << 31) || !is_prime_u64(params.q))
        raise(Errc::kBadConfig, "ntt: q must be a small prime");
    uint64_t psi_n = powmod(params.psi, uint64_t(params.n), params.q);
    if (psi_n != params.q - 1 ||
        powmod(params.psi, uint64_t(2 * params.n), params.q) != 1)
        raise(Errc::kBadConfig, "ntt: psi is not a primitive 2n-th root of unity");
}

void check_poly(std::span<const uint32_t> poly, const NttParams& params) {
    if (poly.size() != size_t(params.n))
        raise(Errc::kWidthMismatch, "ntt: polynomial length does not match n");
    for (uint32_t c : poly)
        if (c >= params.q) raise(Errc::kReductionDomain, "ntt: coefficient out of range");
}

// In-place cyclic transform with the given root of unity (omega^n == 1).
void cyclic_ntt(std::vector<uint64_t>& a, uint64_t omega, uint64_t q) {
    const size_t n = a.size();
    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        uint64_t wlen = powmod(omega, uint64_t(n / len), q);
        for (size_t i = 0; i < n; i += len) {
            uint64_t w = 1;
            for (size_t j = 0; j < len / 2; ++j) {
                uint64_t u = a[i + j];
                uint64_t v = mulmod(a[i + j + len / 2], w, q);
                a[i + j] = (u + v) % q;
                a[i + j + len / 2] = (u + q - v) % q;
                w = mulmod(w, wlen, q);
            }
        }
    }
}

}  // namespace

NttParams NttParams::dilithium() { return {8380417, 256, 1753}; }
NttParams NttParams::toy() { return {97, 8, 8}; }

std::vector<uint32_t> ntt_forward(std::span<const uint32_t> poly, const NttParams& params) {
    validate_params(params);
    check_poly(poly, params);
    const uint64_t q = params.q;
    std::vector<uint64_t> a(poly.size());
    // Twist by psi^j, then the cyclic transform with omega = psi^2.
    uint64_t pw = 1;
    for (size_t j = 0; j < a.size(); ++j) {
        a[j] = mulmod(poly[j], pw, q);
        pw = mulmod(pw, params.psi, q);
    }
    cyclic_ntt(a, mulmod(params.psi, params.psi, q), q);
    return std::vector<uint32_t>(a.begin(), a.end());
}

std::vector<uint32_t> ntt_inverse(std::span<const uint32_t> poly, const NttParams& params) {
    validate_params(params);
    check_poly(poly, params);
    const uint64_t q = params.q;
    std::vector<uint64_t> a(poly.begin(), poly.end());
    uint64_t omega_inv = powmod(mulmod(params.psi, params.psi, q), q - 2, q);
    cyclic_ntt(a, omega_inv, q);
    uint64_t n_inv = powmod(uint64_t(params.n), q - 2, q);
    uint64_t psi_inv = powmod(params.psi, q - 2, q);
    uint64_t pw = 1;
    for (size_t j = 0; j < a.size(); ++j) {
        a[j] = mulmod(mulmod(a[j], n_inv, q), pw, q);
        pw = mulmod(pw, psi_inv, q);
    }
    return std::vector<uint32_t>(a.begin(), a.end());
}

std::vector<uint32_t> ntt_pointwise(std::span<const uint32_t> a, std::span<const uint32_t> b,
                                    const NttParams& params) {
    validate_params(params);
    check_poly(a, params);
    check_poly(b, params);
    std::vector<uint32_t> out(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        out[i] = uint32_t(mulmod(a[i], b[i], params.q));
    return out;
}

}  // namespace fv
