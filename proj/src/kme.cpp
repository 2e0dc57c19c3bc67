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
 * @file kme.cpp
 * @brief RO-PUF simulation and HKDF-based key derivation.
 */

#include "fv/kme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fv/error.hpp"
#include "fv/hash.hpp"

namespace fv {

namespace {

// Box-Muller on raw engine output.  std::normal_distribution is not pinned
// across standard library implementations; this is, so chip frequencies and
// noise replay identically everywhere.
double normal01(std::mt19937_64& rng) {
    double u1 = double((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = double(rng() >> 11) * 0x1.0p-53;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

uint64_t mix(uint64_t a, uint64_t b) {
    uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    return x;
}

void require_pairs(const PufChallenge& challenge, int oscillators) {
    for (auto [a, b] : challenge.pairs) {
        if (a < 0 || a >= oscillators || b < 0 || b >= oscillators)
            raise(Errc::kBoundViolation, "puf: challenge index out of range");
        if (a == b)
            raise(Errc::kBadConfig, "puf: degenerate pair compares an oscillator with itself");
    }
}

}  // namespace

PufChallenge PufChallenge::sequential(int bits) {
    if (bits < 1) raise(Errc::kBadConfig, "puf: challenge needs at least one bit");
    PufChallenge ch;
    ch.pairs.reserve(size_t(bits));
    for (int i = 0; i < bits; ++i) ch.pairs.emplace_back(2 * i, 2 * i + 1);
    return ch;
}

PufChallenge PufChallenge::shuffled(int bits, int oscillator_count, uint64_t seed) {
    if (bits < 1) raise(Errc::kBadConfig, "puf: challenge needs at least one bit");
    if (oscillator_count < 2 * bits)
        raise(Errc::kBadConfig, "puf: not enough oscillators for disjoint pairs");
    std::vector<int> order(static_cast<size_t>(oscillator_count), 0);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    PufChallenge ch;
    ch.pairs.reserve(size_t(bits));
    for (int i = 0; i < bits; ++i) ch.pairs.emplace_back(order[2 * i], order[2 * i + 1]);
    return ch;
}

RoPuf::RoPuf(const RoPufConfig& config) : config_(config) {
    if (config.oscillator_count < 2)
        raise(Errc::kBadConfig, "puf: need at least two oscillators");
    if (config.f0_mhz <= 0.0 || config.sigma_process_mhz < 0.0 ||
        config.noise_sigma_mhz < 0.0)
        raise(Errc::kBadConfig, "puf: bad frequency parameters");
    std::mt19937_64 rng(config.chip_seed);
    freqs_mhz_.resize(size_t(config.oscillator_count));
    for (auto& f : freqs_mhz_)
        f = config.f0_mhz + config.sigma_process_mhz * normal01(rng);
}

double RoPuf::frequency_mhz(int index) const {
    if (index < 0 || index >= oscillator_count())
        raise(Errc::kBoundViolation, "puf: oscillator index out of range");
    return freqs_mhz_[size_t(index)];
}

std::vector<uint8_t> RoPuf::response(const PufChallenge& challenge,
                                     uint64_t read_nonce) const {
    if (challenge.pairs.empty())
        raise(Errc::kEmptyInput, "puf: empty challenge");
    require_pairs(challenge, oscillator_count());
    std::mt19937_64 noise_rng(mix(config_.chip_seed, read_nonce));
    std::vector<uint8_t> bits;
    bits.reserve(challenge.pairs.size());
    for (auto [a, b] : challenge.pairs) {
        double fa = freqs_mhz_[size_t(a)];
        double fb = freqs_mhz_[size_t(b)];
        if (config_.noise_sigma_mhz > 0.0) {
            // Each comparison is a fresh measurement of both rings.
            fa += config_.noise_sigma_mhz * normal01(noise_rng);
            fb += config_.noise_sigma_mhz * normal01(noise_rng);
        }
        bits.push_back(fa > fb ? 1 : 0);
    }
    return bits;
}

std::vector<uint8_t> RoPuf::stable_response(const PufChallenge& challenge,
                                            int reads, uint64_t nonce_base) const {
    if (reads < 1 || reads % 2 == 0)
        raise(Errc::kBadConfig, "puf: majority vote needs an odd number of reads");
    std::vector<int> ones(challenge.pairs.size(), 0);
    for (int r = 0; r < reads; ++r) {
        auto bits = response(challenge, nonce_base + uint64_t(r));
        for (size_t i = 0; i < bits.size(); ++i) ones[i] += bits[i];
    }
    std::vector<uint8_t> voted(challenge.pairs.size());
    for (size_t i = 0; i < voted.size(); ++i)
        voted[i] = ones[i] * 2 > reads ? 1 : 0;
    return voted;
}

std::vector<uint8_t> derive_key(std::span<const uint8_t> root_bits,
                                const KdfContext& ctx) {
    if (root_bits.empty()) raise(Errc::kEmptyInput, "kdf: empty root");
    if (ctx.out_len < 1) raise(Errc::kBadConfig, "kdf: out_len must be >= 1");
    std::vector<uint8_t> packed((root_bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < root_bits.size(); ++i) {
        if (root_bits[i] > 1) raise(Errc::kBadConfig, "kdf: root must be raw bits");
        packed[i >> 3] |= uint8_t(root_bits[i] << (i & 7));
    }
    return hkdf_sha256(packed, ctx.salt, ctx.context, ctx.out_len);
}

KeyManager::KeyManager(const RoPufConfig& config, int root_bits) {
    if (root_bits < 1) raise(Errc::kBadConfig, "kme: root must have at least one bit");
    if (config.oscillator_count < 2 * root_bits)
        raise(Errc::kBadConfig, "kme: oscillator array too small for the root width");
    RoPuf puf(config);
    root_bits_ = puf.response(PufChallenge::sequential(root_bits));
}

std::vector<uint8_t> KeyManager::derive(std::string_view label, size_t out_len) const {
    KdfContext ctx;
    ctx.context.assign(label.begin(), label.end());
    ctx.out_len = out_len;
    return derive_key(root_bits_, ctx);
}

uint64_t KeyManager::seed64(std::string_view label) const {
    auto bytes = derive(label, 8);
    uint64_t seed = 0;
    for (int i = 7; i >= 0; --i) seed = seed << 8 | bytes[size_t(i)];
    return seed;
}

}  // namespace fv
