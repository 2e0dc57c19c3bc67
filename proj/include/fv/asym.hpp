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
 * @file asym.hpp
 * @brief Asymmetric cipher ALUs: RSA and ECDSA over limb arithmetic, the
 *        negacyclic NTT primitive, and cycle-schedule models for the
 *        post-quantum signature schemes.
 *
 * RSA and ECDSA are functional — signatures really verify — with cycle
 * counts folded over the modular operations actually executed.  The PQC
 * schemes are cycle models only: per-operation primitive counts priced by a
 * unit-cost table, plus a message-hash term that scales with input length.
 */

#ifndef FV_ASYM_HPP_
#define FV_ASYM_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fv/limbint.hpp"

namespace fv {

// ------------------------------------------------------------- catalog

enum class AsymAlgo { kRsa, kEcdsa, kDilithium, kFalcon, kSphincsPlus };

constexpr std::array<AsymAlgo, 5> kAllAsymAlgos = {
    AsymAlgo::kRsa, AsymAlgo::kEcdsa, AsymAlgo::kDilithium, AsymAlgo::kFalcon,
    AsymAlgo::kSphincsPlus};

const char* asym_name(AsymAlgo algo);
AsymAlgo asym_from_name(const std::string& name);

// Reconfiguration catalog row: supported key lengths, accepted digest input
// sizes, and operand granularity of the core arithmetic.
struct SchemeSpec {
    AsymAlgo algo;
    std::vector<int> key_bits;
    std::vector<int> digest_bits;  // input unit sizes
    int granularity_bits;
};
const SchemeSpec& scheme_spec(AsymAlgo algo);

// Config default for pairing a digest width with a key size: 256 below the
// 384-bit security tier, 512 from there up.
int default_digest_bits(AsymAlgo algo, int key_bits);

// ------------------------------------------------------------- cost model

// Unit costs in engine cycles.  Fractional values are allowed so the
// calibration file can scale models without restructuring them.
struct AsymCostModel {
    double keccak_perm = 24;        // one permutation, one round per cycle
    double ntt_pass = 128;          // one 256-point negacyclic transform
    double pqc_modmul = 1;          // small-modulus multiply
    double comparison = 1;
    double fft_pass = 160;          // floating-point FFT pass
    double modmul_per_limb = 2;     // big-number ModMult, per 64-bit limb
    double ec_modinv = 100;         // dedicated ModInv unit, per inversion
};

enum class SigOp { kSign, kVerify };

// ------------------------------------------------------------------- RSA

struct RsaKey {
    LimbInt n;
    LimbInt e;
    LimbInt d;
    int bits = 0;
};

// Deterministic key generation: primes are drawn from a seed-keyed XOF
// stream and Miller-Rabin tested.  Same seed, same key.
RsaKey rsa_generate(int bits, uint64_t seed);

struct AsymResult {
    std::vector<uint8_t> signature;  // sign: the signature; verify: empty
    bool accept = false;             // verify outcome (sign: always true)
    uint64_t cycles = 0;
};

// Signature = pad(digest)^d mod n with deterministic full-domain-style
// padding (0x00 0x01 FF.. 0x00 digest).  Cycles follow the square-and-
// multiply steps actually taken, each priced at modmul_per_limb * limbs.
AsymResult rsa_sign(const RsaKey& key, std::span<const uint8_t> digest,
                    const AsymCostModel& costs = {});
AsymResult rsa_verify(const RsaKey& key, std::span<const uint8_t> digest,
                      std::span<const uint8_t> signature,
                      const AsymCostModel& costs = {});

// Square-and-multiply step count for an exponent: squarings plus multiplies.
uint64_t modexp_steps(const LimbInt& exp);

// ----------------------------------------------------------------- ECDSA

enum class EcCurve { kP256, kP384 };

struct EcdsaKey {
    EcCurve curve = EcCurve::kP256;
    LimbInt d;        // private scalar
    LimbInt qx, qy;   // public point
};

// Deterministic from seed bytes (scalar derived through the KDF).
EcdsaKey ecdsa_keygen(EcCurve curve, std::span<const uint8_t> seed);

// Public point for a given scalar, for vector checks and key import.
void ec_public_key(EcCurve curve, const LimbInt& d, LimbInt* qx, LimbInt* qy);

struct EcdsaSignature {
    LimbInt r, s;
    uint64_t cycles = 0;
};

// Nonce is derived deterministically from (nonce_seed, digest) and re-drawn
// if it yields r == 0 or s == 0.
EcdsaSignature ecdsa_sign(const EcdsaKey& key, std::span<const uint8_t> digest,
                          std::span<const uint8_t> nonce_seed,
                          const AsymCostModel& costs = {});

// Fixed-nonce path for known-answer vectors.
EcdsaSignature ecdsa_sign_with_k(EcCurve curve, const LimbInt& d,
                                 std::span<const uint8_t> digest, const LimbInt& k,
                                 const AsymCostModel& costs = {});

struct EcdsaVerifyResult {
    bool accept = false;
    uint64_t cycles = 0;
};

EcdsaVerifyResult ecdsa_verify(EcCurve curve, const LimbInt& qx, const LimbInt& qy,
                               std::span<const uint8_t> digest, const LimbInt& r,
                               const LimbInt& s, const AsymCostModel& costs = {});

// ------------------------------------------------------------------- NTT

// Negacyclic number-theoretic transform: q prime, n a power of two, psi a
// primitive 2n-th root of unity mod q (psi^n == -1).
struct NttParams {
    uint64_t q = 0;
    int n = 0;
    uint64_t psi = 0;

    static NttParams dilithium();  // q = 8380417, n = 256, psi = 1753
    static NttParams toy();        // q = 97, n = 8, psi = 8
};

std::vector<uint32_t> ntt_forward(std::span<const uint32_t> poly, const NttParams& params);
std::vector<uint32_t> ntt_inverse(std::span<const uint32_t> poly, const NttParams& params);
std::vector<uint32_t> ntt_pointwise(std::span<const uint32_t> a, std::span<const uint32_t> b,
                                    const NttParams& params);

// ----------------------------------------------------------- PQC schedules

// Primitive invocation counts for one signature operation.
struct PqcCycleSchedule {
    uint64_t keccak_perms = 0;
    uint64_t ntt_passes = 0;
    uint64_t modmuls = 0;
    uint64_t comparisons = 0;
    uint64_t fft_passes = 0;
};

uint64_t schedule_cycles(const PqcCycleSchedule& sched, const AsymCostModel& costs);

// Fixed core schedule (message hashing excluded) for a scheme and key size.
PqcCycleSchedule pqc_core_schedule(AsymAlgo scheme, int key_bits, SigOp op);

// Core cost plus the message-hash term: XOF permutations over msg_bytes.
uint64_t pqc_latency(AsymAlgo scheme, int key_bits, SigOp op, uint64_t msg_bytes,
                     const AsymCostModel& costs = {});

}  // namespace fv

#endif  // FV_ASYM_HPP_
