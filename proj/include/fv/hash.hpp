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
 * @file hash.hpp
 * @brief Hash ALU cluster: SHA-2, Keccak-f[1600] with the SHA-3/SHAKE sponge,
 *        and the HMAC/HKDF constructions built on top.
 *
 * Digest values are always the standard ones.  The ALU count enters only
 * through cycle accounting, and only where the workload actually contains
 * independent streams (segment lists); a single chained message cannot be
 * split, so its cycle count ignores the cluster width.
 */

#ifndef FV_HASH_HPP_
#define FV_HASH_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace fv {

enum class Sha2Variant { kSha256, kSha512 };

std::vector<uint8_t> sha256(std::span<const uint8_t> msg);
std::vector<uint8_t> sha512(std::span<const uint8_t> msg);
// SHA-512 with the truncated-variant IV, cut to 48 bytes; the digest width
// that pairs with the 384-bit curve.
std::vector<uint8_t> sha384(std::span<const uint8_t> msg);
std::vector<uint8_t> sha2(Sha2Variant variant, std::span<const uint8_t> msg);

// Cycle model constants: one compression round per cycle, a small fixed
// charge for init/length padding/output.
inline constexpr uint64_t kSha256BlockCycles = 64;
inline constexpr uint64_t kSha512BlockCycles = 80;
inline constexpr uint64_t kSha2SetupCycles = 8;

// Padded block count for a message of `bytes` length.
uint64_t sha2_block_count(Sha2Variant variant, size_t bytes);

struct HashJob {
    std::vector<uint8_t> message;
    Sha2Variant variant = Sha2Variant::kSha256;
    int alu_count = 8;
};

struct HashResult {
    std::vector<uint8_t> digest;
    uint64_t cycles = 0;
};

// Chained digest of one message.  The blocks depend on each other, so the
// cycle count is the serial one regardless of job.alu_count.
HashResult sha2_digest(const HashJob& job);

// Timing-only model for hashing `segment_count` independent chunks that
// together cover `total_bytes` (boot-image verification hashes per-segment).
// Segments are dealt round-robin onto `alu_count` ALUs; the cluster finishes
// with the busiest ALU.  Digest values for such a workload come from calling
// sha2_digest per segment; this function only prices the parallelism.
uint64_t segmented_hash_cycles(uint64_t total_bytes, int segment_count,
                               Sha2Variant variant, int alu_count);

// --- Keccak -----------------------------------------------------------------

// Lane order: index = x + 5*y, little-endian lanes (the standard flat layout).
using KeccakState = std::array<uint64_t, 25>;

// The full 24-round permutation, in place.
void keccak_f1600(KeccakState& state);

std::vector<uint8_t> sha3_256(std::span<const uint8_t> msg);
std::vector<uint8_t> sha3_512(std::span<const uint8_t> msg);
std::vector<uint8_t> shake256(std::span<const uint8_t> msg, size_t out_bytes);

// SHAKE-256 sponge absorbs/squeezes at this rate; used by the cycle models
// that count permutation invocations for message hashing.
inline constexpr size_t kShake256RateBytes = 136;
inline constexpr uint64_t kKeccakPermCycles = 24;  // one round per cycle

// --- MAC / KDF ---------------------------------------------------------------

std::vector<uint8_t> hmac_sha256(std::span<const uint8_t> key,
                                 std::span<const uint8_t> msg);

// RFC-style extract-and-expand on HMAC-SHA256.
std::vector<uint8_t> hkdf_extract(std::span<const uint8_t> salt,
                                  std::span<const uint8_t> ikm);
std::vector<uint8_t> hkdf_expand(std::span<const uint8_t> prk,
                                 std::span<const uint8_t> info, size_t out_bytes);
std::vector<uint8_t> hkdf_sha256(std::span<const uint8_t> ikm,
                                 std::span<const uint8_t> salt,
                                 std::span<const uint8_t> info, size_t out_bytes);

}  // namespace fv

#endif  // FV_HASH_HPP_
