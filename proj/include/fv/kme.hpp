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
 * @file kme.hpp
 * @brief Key management: a ring-oscillator PUF model and the KDF that
 *        expands its response into working key material.
 *
 * The PUF side simulates process variation as a per-chip draw of oscillator
 * frequencies; a challenge selects oscillator pairs and each response bit is
 * the sign of one frequency comparison.  The same die always produces the
 * same frequencies, so the response doubles as a chip-unique root key.
 *
 * KeyManager is the facade the rest of the stack should use: it keeps the
 * root response private and only hands out HKDF-derived material.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace fv {

/// One simulated die's ring-oscillator array.
struct RoPufConfig {
    uint64_t chip_seed = 0;           ///< process lottery for this die
    int oscillator_count = 512;
    double f0_mhz = 500.0;            ///< nominal ring frequency
    double sigma_process_mhz = 5.0;   ///< inter-die process spread (1%)
    double noise_sigma_mhz = 0.0;     ///< per-read measurement noise
};

/// A challenge names one ordered oscillator pair per response bit.
struct PufChallenge {
    std::vector<std::pair<int, int>> pairs;

    /// (0,1), (2,3), ... — disjoint pairs, the usual readout layout.
    static PufChallenge sequential(int bits);
    /// Disjoint pairs over a seeded shuffle of the first 2*bits oscillators.
    static PufChallenge shuffled(int bits, int oscillator_count, uint64_t seed);
};

class RoPuf {
  public:
    explicit RoPuf(const RoPufConfig& config);

    const RoPufConfig& config() const { return config_; }
    int oscillator_count() const { return int(freqs_mhz_.size()); }
    /// Process-determined frequency, before any read noise.
    double frequency_mhz(int index) const;

    /// One readout: bit i = [read(a_i) > read(b_i)].  read_nonce seeds the
    /// measurement noise and has no effect at noise_sigma_mhz = 0.
    std::vector<uint8_t> response(const PufChallenge& challenge,
                                  uint64_t read_nonce = 0) const;

    /// Majority vote over an odd number of reads; a cheap stand-in for a
    /// fuzzy extractor when studying noisy readout.
    std::vector<uint8_t> stable_response(const PufChallenge& challenge, int reads,
                                         uint64_t nonce_base = 0) const;

  private:
    RoPufConfig config_;
    std::vector<double> freqs_mhz_;
};

/// Inputs to one key derivation.
struct KdfContext {
    std::vector<uint8_t> salt;
    std::vector<uint8_t> context;
    size_t out_len = 32;  ///< bytes, >= 1
};

/// Packs the root bits LSB-first and runs HKDF-SHA-256 extract-then-expand.
std::vector<uint8_t> derive_key(std::span<const uint8_t> root_bits,
                                const KdfContext& ctx);

/// Owns the PUF readout; key material leaves only as derived outputs.
class KeyManager {
  public:
    explicit KeyManager(const RoPufConfig& config, int root_bits = 256);

    std::vector<uint8_t> derive(std::string_view label, size_t out_len) const;
    /// Little-endian fold of an 8-byte derivation; feeds asymmetric keygen.
    uint64_t seed64(std::string_view label) const;

  private:
    std::vector<uint8_t> root_bits_;
};

}  // namespace fv
