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
 * @file pqc.cpp
 * @brief Scheme catalog and cycle-schedule models for the signature schemes.
 *
 * The core schedules below are calibration data: effective primitive counts
 * per operation after the hash-tree parts have been spread across the ALU
 * cluster.  They are sized so that, at the 200 MHz engine clock, signing and
 * verification land at millisecond scale with the hash-based scheme an order
 * of magnitude above the lattice ones — the relative picture that drives
 * every placement comparison downstream.
 */

#include <algorithm>
#include <cmath>

#include "fv/asym.hpp"
#include "fv/error.hpp"
#include "fv/hash.hpp"

namespace fv {

namespace {

const SchemeSpec kSpecs[] = {
    {AsymAlgo::kRsa, {1024, 2048, 3072, 4096}, {256, 512}, 1024},
    {AsymAlgo::kEcdsa, {160, 224, 256, 384, 521}, {256, 512}, 256},
    {AsymAlgo::kDilithium, {2048, 3072}, {256, 512}, 23},
    {AsymAlgo::kFalcon, {896, 1280}, {256, 512}, 64},
    {AsymAlgo::kSphincsPlus, {256, 384, 512}, {256, 512}, 32},
};

struct ScheduleRow {
    AsymAlgo scheme;
    int key_bits;
    PqcCycleSchedule sign;
    PqcCycleSchedule verify;
};

// {keccak_perms, ntt_passes, modmuls, comparisons, fft_passes}
const ScheduleRow kSchedules[] = {
    {AsymAlgo::kDilithium, 2048,
     {1200, 64, 160000, 40000, 0}, {400, 32, 80000, 16000, 0}},
    {AsymAlgo::kDilithium, 3072,
     {1500, 80, 200000, 50000, 0}, {500, 40, 100000, 20000, 0}},
    {AsymAlgo::kFalcon, 896,
     {300, 0, 200000, 20000, 384}, {150, 0, 60000, 8000, 128}},
    {AsymAlgo::kFalcon, 1280,
     {400, 0, 280000, 30000, 512}, {200, 0, 80000, 10000, 160}},
    {AsymAlgo::kSphincsPlus, 256,
     {75000, 0, 0, 30000, 0}, {2500, 0, 0, 2000, 0}},
    {AsymAlgo::kSphincsPlus, 384,
     {110000, 0, 0, 45000, 0}, {3600, 0, 0, 3000, 0}},
    {AsymAlgo::kSphincsPlus, 512,
     {150000, 0, 0, 60000, 0}, {5000, 0, 0, 4000, 0}},
};

}  // namespace

const char* asym_name(AsymAlgo algo) {
    switch (algo) {
        case AsymAlgo::kRsa: return "rsa";
        case AsymAlgo::kEcdsa: return "ecdsa";
        case AsymAlgo::kDilithium: return "dilithium";
        case AsymAlgo::kFalcon: return "falcon";
        case AsymAlgo::kSphincsPlus: return "sphincs+";
    }
    raise(Errc::kUnknownAlgorithm, "asym: bad enum value");
}

AsymAlgo asym_from_name(const std::string& name) {
    for (AsymAlgo algo : kAllAsymAlgos)
        if (name == asym_name(algo)) return algo;
    raise(Errc::kUnknownAlgorithm, "asym: unknown scheme '" + name + "'");
}

const SchemeSpec& scheme_spec(AsymAlgo algo) {
    for (const auto& spec : kSpecs)
        if (spec.algo == algo) return spec;
    raise(Errc::kUnknownAlgorithm, "asym: no spec row");
}

int default_digest_bits(AsymAlgo algo, int key_bits) {
    const auto& spec = scheme_spec(algo);
    if (std::find(spec.key_bits.begin(), spec.key_bits.end(), key_bits) ==
        spec.key_bits.end())
        raise(Errc::kIllegalKeyLength, "asym: unsupported key size");
    // The 384-bit security tier and above pairs with the wide digest.  RSA
    // tiers are keyed on modulus growth past the 3072-bit baseline.
    switch (algo) {
        case AsymAlgo::kRsa: return key_bits >= 4096 ? 512 : 256;
        case AsymAlgo::kEcdsa: return key_bits >= 384 ? 512 : 256;
        case AsymAlgo::kDilithium: return key_bits >= 3072 ? 512 : 256;
        case AsymAlgo::kFalcon: return key_bits >= 1280 ? 512 : 256;
        case AsymAlgo::kSphincsPlus: return key_bits >= 384 ? 512 : 256;
    }
    raise(Errc::kUnknownAlgorithm, "asym: bad enum value");
}

uint64_t schedule_cycles(const PqcCycleSchedule& sched, const AsymCostModel& costs) {
    double total = double(sched.keccak_perms) * costs.keccak_perm +
                   double(sched.ntt_passes) * costs.ntt_pass +
                   double(sched.modmuls) * costs.pqc_modmul +
                   double(sched.comparisons) * costs.comparison +
                   double(sched.fft_passes) * costs.fft_pass;
    return uint64_t(std::llround(total));
}

PqcCycleSchedule pqc_core_schedule(AsymAlgo scheme, int key_bits, SigOp op) {
    for (const auto& row : kSchedules)
        if (row.scheme == scheme && row.key_bits == key_bits)
            return op == SigOp::kSign ? row.sign : row.verify;
    if (scheme == AsymAlgo::kRsa || scheme == AsymAlgo::kEcdsa)
        raise(Errc::kUnknownAlgorithm, "pqc: scheme has a functional model, not a schedule");
    raise(Errc::kIllegalKeyLength, "pqc: no schedule for this key size");
}

uint64_t pqc_latency(AsymAlgo scheme, int key_bits, SigOp op, uint64_t msg_bytes,
                     const AsymCostModel& costs) {
    PqcCycleSchedule sched = pqc_core_schedule(scheme, key_bits, op);
    // Message absorption through the XOF: one permutation per rate block
    // (the +1 is the domain/padding byte).
    sched.keccak_perms += (msg_bytes + 1 + kShake256RateBytes - 1) / kShake256RateBytes;
    return schedule_cycles(sched, costs);
}

}  // namespace fv
