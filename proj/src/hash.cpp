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
 * @file hash.cpp
 * @brief SHA-2 compression, Keccak-f[1600], sponge modes, HMAC and HKDF.
 */

#include "fv/hash.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "fv/error.hpp"

namespace fv {

namespace {

// ---------------------------------------------------------------- SHA-256

constexpr uint32_t kK256[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

void sha256_compress(uint32_t h[8], const uint8_t* block) {
    uint32_t w[64];
    for (int i = 0; i < 16; ++i)
        w[i] = (uint32_t(block[4 * i]) << 24) | (uint32_t(block[4 * i + 1]) << 16) |
               (uint32_t(block[4 * i + 2]) << 8) | uint32_t(block[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
        uint32_t s0 = std::rotr(w[i - 15], 7) ^ std::rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
        uint32_t s1 = std::rotr(w[i - 2], 17) ^ std::rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
    uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
        uint32_t s1 = std::rotr(e, 6) ^ std::rotr(e, 11) ^ std::rotr(e, 25);
        uint32_t ch = (e & f) ^ (~e & g);
        uint32_t t1 = hh + s1 + ch + kK256[i] + w[i];
        uint32_t s0 = std::rotr(a, 2) ^ std::rotr(a, 13) ^ std::rotr(a, 22);
        uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
        uint32_t t2 = s0 + maj;
        hh = g; g = f; f = e; e = d + t1;
        d = c; c = b; b = a; a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d;
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
}

// ---------------------------------------------------------------- SHA-512

constexpr uint64_t kK512[80] = {
    0x428a2f98d728ae22ULL, 0x7137449123ef65cdULL, 0xb5c0fbcfec4d3b2fULL,
    0xe9b5dba58189dbbcULL, 0x3956c25bf348b538ULL, 0x59f111f1b605d019ULL,
    0x923f82a4af194f9bULL, 0xab1c5ed5da6d8118ULL, 0xd807aa98a3030242ULL,
    0x12835b0145706fbeULL, 0x243185be4ee4b28cULL, 0x550c7dc3d5ffb4e2ULL,
    0x72be5d74f27b896fULL, 0x80deb1fe3b1696b1ULL, 0x9bdc06a725c71235ULL,
    0xc19bf174cf692694ULL, 0xe49b69c19ef14ad2ULL, 0xefbe4786384f25e3ULL,
    0x0fc19dc68b8cd5b5ULL, 0x240ca1cc77ac9c65ULL, 0x2de92c6f592b0275ULL,
    0x4a7484aa6ea6e483ULL, 0x5cb0a9dcbd41fbd4ULL, 0x76f988da831153b5ULL,
    0x983e5152ee66dfabULL, 0xa831c66d2db43210ULL, 0xb00327c898fb213fULL,
    0xbf597fc7beef0ee4ULL, 0xc6e00bf33da88fc2ULL, 0xd5a79147930aa725ULL,
    0x06ca6351e003826fULL, 0x142929670a0e6e70ULL, 0x27b70a8546d22ffcULL,
    0x2e1b21385c26c926ULL, 0x4d2c6dfc5ac42aedULL, 0x53380d139d95b3dfULL,
    0x650a73548baf63deULL, 0x766a0abb3c77b2a8ULL, 0x81c2c92e47edaee6ULL,
    0x92722c851482353bULL, 0xa2bfe8a14cf10364ULL, 0xa81a664bbc423001ULL,
    0xc24b8b70d0f89791ULL, 0xc76c51a30654be30ULL, 0xd192e819d6ef5218ULL,
    0xd69906245565a910ULL, 0xf40e35855771202aULL, 0x106aa07032bbd1b8ULL,
    0x19a4c116b8d2d0c8ULL, 0x1e376c085141ab53ULL, 0x2748774cdf8eeb99ULL,
    0x34b0bcb5e19b48a8ULL, 0x391c0cb3c5c95a63ULL, 0x4ed8aa4ae3418acbULL,
    0x5b9cca4f7763e373ULL, 0x682e6ff3d6b2b8a3ULL, 0x748f82ee5defb2fcULL,
    0x78a5636f43172f60ULL, 0x84c87814a1f0ab72ULL, 0x8cc702081a6439ecULL,
    0x90befffa23631e28ULL, 0xa4506cebde82bde9ULL, 0xbef9a3f7b2c67915ULL,
    0xc67178f2e372532bULL, 0xca273eceea26619cULL, 0xd186b8c721c0c207ULL,
    0xeada7dd6cde0eb1eULL, 0xf57d4f7fee6ed178ULL, 0x06f067aa72176fbaULL,
    0x0a637dc5a2c898a6ULL, 0x113f9804bef90daeULL, 0x1b710b35131c471bULL,
    0x28db77f523047d84ULL, 0x32caab7b40c72493ULL, 0x3c9ebe0a15c9bebcULL,
    0x431d67c49c100d4cULL, 0x4cc5d4becb3e42b6ULL, 0x597f299cfc657e2aULL,
    0x5fcb6fab3ad6faecULL, 0x6c44198c4a475817ULL};

void sha512_compress(uint64_t h[8], const uint8_t* block) {
    uint64_t w[80];
    for (int i = 0; i < 16; ++i) {
        uint64_t v = 0;
        for (int j = 0; j < 8; ++j) v = (v << 8) | block[8 * i + j];
        w[i] = v;
    }
    for (int i = 16; i < 80; ++i) {
        uint64_t s0 = std::rotr(w[i - 15], 1) ^ std::rotr(w[i - 15], 8) ^ (w[i - 15] >> 7);
        uint64_t s1 = std::rotr(w[i - 2], 19) ^ std::rotr(w[i - 2], 61) ^ (w[i - 2] >> 6);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint64_t a = h[0], b = h[1], c = h[2], d = h[3];
    uint64_t e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int i = 0; i < 80; ++i) {
        uint64_t s1 = std::rotr(e, 14) ^ std::rotr(e, 18) ^ std::rotr(e, 41);
        uint64_t ch = (e & f) ^ (~e & g);
        uint64_t t1 = hh + s1 + ch + kK512[i] + w[i];
        uint64_t s0 = std::rotr(a, 28) ^ std::rotr(a, 34) ^ std::rotr(a, 39);
        uint64_t maj = (a & b) ^ (a & c) ^ (b & c);
        uint64_t t2 = s0 + maj;
        hh = g; g = f; f = e; e = d + t1;
        d = c; c = b; b = a; a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d;
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
}

// Merkle-Damgard padding: 0x80, zeros, then the bit length in the trailing
// length field (8 bytes for SHA-256, 16 for SHA-512 — the high half is
// always zero at the sizes this model sees).
template <typename State, size_t BlockBytes, size_t LenBytes>
std::vector<uint8_t> md_pad(std::span<const uint8_t> msg) {
    std::vector<uint8_t> padded(msg.begin(), msg.end());
    padded.push_back(0x80);
    while (padded.size() % BlockBytes != BlockBytes - LenBytes) padded.push_back(0);
    uint64_t bits = uint64_t(msg.size()) * 8;
    for (size_t i = 0; i < LenBytes; ++i) {
        size_t shift = 8 * (LenBytes - 1 - i);
        padded.push_back(shift < 64 ? uint8_t(bits >> shift) : 0);
    }
    return padded;
}

}  // namespace

std::vector<uint8_t> sha256(std::span<const uint8_t> msg) {
    uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                     0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    auto padded = md_pad<uint32_t, 64, 8>(msg);
    for (size_t off = 0; off < padded.size(); off += 64) sha256_compress(h, &padded[off]);
    std::vector<uint8_t> out(32);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 4; ++j) out[4 * i + j] = uint8_t(h[i] >> (24 - 8 * j));
    return out;
}

std::vector<uint8_t> sha512(std::span<const uint8_t> msg) {
    uint64_t h[8] = {0x6a09e667f3bcc908ULL, 0xbb67ae8584caa73bULL, 0x3c6ef372fe94f82bULL,
                     0xa54ff53a5f1d36f1ULL, 0x510e527fade682d1ULL, 0x9b05688c2b3e6c1fULL,
                     0x1f83d9abfb41bd6bULL, 0x5be0cd19137e2179ULL};
    auto padded = md_pad<uint64_t, 128, 16>(msg);
    for (size_t off = 0; off < padded.size(); off += 128) sha512_compress(h, &padded[off]);
    std::vector<uint8_t> out(64);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) out[8 * i + j] = uint8_t(h[i] >> (56 - 8 * j));
    return out;
}

std::vector<uint8_t> sha384(std::span<const uint8_t> msg) {
    uint64_t h[8] = {0xcbbb9d5dc1059ed8ULL, 0x629a292a367cd507ULL, 0x9159015a3070dd17ULL,
                     0x152fecd8f70e5939ULL, 0x67332667ffc00b31ULL, 0x8eb44a8768581511ULL,
                     0xdb0c2e0d64f98fa7ULL, 0x47b5481dbefa4fa4ULL};
    auto padded = md_pad<uint64_t, 128, 16>(msg);
    for (size_t off = 0; off < padded.size(); off += 128) sha512_compress(h, &padded[off]);
    std::vector<uint8_t> out(48);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 8; ++j) out[8 * i + j] = uint8_t(h[i] >> (56 - 8 * j));
    return out;
}

std::vector<uint8_t> sha2(Sha2Variant variant, std::span<const uint8_t> msg) {
    return variant == Sha2Variant::kSha256 ? sha256(msg) : sha512(msg);
}

uint64_t sha2_block_count(Sha2Variant variant, size_t bytes) {
    // Message + 0x80 + length field, rounded up to whole blocks.
    size_t block = variant == Sha2Variant::kSha256 ? 64 : 128;
    size_t len_field = variant == Sha2Variant::kSha256 ? 8 : 16;
    return (bytes + 1 + len_field + block - 1) / block;
}

HashResult sha2_digest(const HashJob& job) {
    uint64_t per_block =
        job.variant == Sha2Variant::kSha256 ? kSha256BlockCycles : kSha512BlockCycles;
    HashResult r;
    r.digest = sha2(job.variant, job.message);
    r.cycles = kSha2SetupCycles + sha2_block_count(job.variant, job.message.size()) * per_block;
    return r;
}

uint64_t segmented_hash_cycles(uint64_t total_bytes, int segment_count,
                               Sha2Variant variant, int alu_count) {
    if (segment_count < 1 || alu_count < 1) raise(Errc::kBadConfig, "segmented-hash: counts must be positive");
    uint64_t per_block =
        variant == Sha2Variant::kSha256 ? kSha256BlockCycles : kSha512BlockCycles;
    // Even split; the busiest ALU serializes ceil(segments/alus) segments.
    uint64_t seg_bytes = (total_bytes + segment_count - 1) / segment_count;
    uint64_t waves = (uint64_t(segment_count) + alu_count - 1) / alu_count;
    uint64_t per_segment = kSha2SetupCycles + sha2_block_count(variant, seg_bytes) * per_block;
    return waves * per_segment;
}

// ------------------------------------------------------------------ Keccak

namespace {

constexpr uint64_t kIota[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

// Rotation offsets indexed [x][y].
constexpr int kRho[5][5] = {{0, 36, 3, 41, 18},
                            {1, 44, 10, 45, 2},
                            {62, 6, 43, 15, 61},
                            {28, 55, 25, 21, 56},
                            {27, 20, 39, 8, 14}};

// Generic sponge with the given rate and domain-separation byte.
std::vector<uint8_t> sponge(std::span<const uint8_t> msg, size_t rate, size_t out_bytes,
                            uint8_t domain) {
    KeccakState st{};
    std::vector<uint8_t> padded(msg.begin(), msg.end());
    padded.push_back(domain);
    while (padded.size() % rate != 0) padded.push_back(0);
    padded.back() ^= 0x80;
    for (size_t off = 0; off < padded.size(); off += rate) {
        for (size_t i = 0; i < rate / 8; ++i) {
            uint64_t lane = 0;
            for (int j = 7; j >= 0; --j) lane = (lane << 8) | padded[off + 8 * i + j];
            st[i] ^= lane;
        }
        keccak_f1600(st);
    }
    std::vector<uint8_t> out;
    out.reserve(out_bytes);
    while (out.size() < out_bytes) {
        for (size_t i = 0; i < rate / 8 && out.size() < out_bytes; ++i)
            for (int j = 0; j < 8 && out.size() < out_bytes; ++j)
                out.push_back(uint8_t(st[i] >> (8 * j)));
        if (out.size() < out_bytes) keccak_f1600(st);
    }
    return out;
}

}  // namespace

void keccak_f1600(KeccakState& state) {
    auto& a = state;  // a[x + 5y]
    for (int rnd = 0; rnd < 24; ++rnd) {
        uint64_t c[5], d[5];
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x)
            d[x] = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y) a[x + 5 * y] ^= d[x];

        uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(a[x + 5 * y], kRho[x][y]);

        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                a[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);

        a[0] ^= kIota[rnd];
    }
}

std::vector<uint8_t> sha3_256(std::span<const uint8_t> msg) {
    return sponge(msg, 136, 32, 0x06);
}

std::vector<uint8_t> sha3_512(std::span<const uint8_t> msg) {
    return sponge(msg, 72, 64, 0x06);
}

std::vector<uint8_t> shake256(std::span<const uint8_t> msg, size_t out_bytes) {
    return sponge(msg, kShake256RateBytes, out_bytes, 0x1F);
}

// --------------------------------------------------------------- MAC / KDF

std::vector<uint8_t> hmac_sha256(std::span<const uint8_t> key,
                                 std::span<const uint8_t> msg) {
    std::vector<uint8_t> k(key.begin(), key.end());
    if (k.size() > 64) k = sha256(k);
    k.resize(64, 0);
    std::vector<uint8_t> inner(64 + msg.size());
    for (int i = 0; i < 64; ++i) inner[i] = k[i] ^ 0x36;
    std::copy(msg.begin(), msg.end(), inner.begin() + 64);
    auto inner_digest = sha256(inner);
    std::vector<uint8_t> outer(64 + 32);
    for (int i = 0; i < 64; ++i) outer[i] = k[i] ^ 0x5c;
    std::copy(inner_digest.begin(), inner_digest.end(), outer.begin() + 64);
    return sha256(outer);
}

std::vector<uint8_t> hkdf_extract(std::span<const uint8_t> salt,
                                  std::span<const uint8_t> ikm) {
    std::vector<uint8_t> s(salt.begin(), salt.end());
    if (s.empty()) s.assign(32, 0);
    return hmac_sha256(s, ikm);
}

std::vector<uint8_t> hkdf_expand(std::span<const uint8_t> prk,
                                 std::span<const uint8_t> info, size_t out_bytes) {
    if (out_bytes > 255 * 32) raise(Errc::kBadConfig, "hkdf: output too long");
    std::vector<uint8_t> out;
    std::vector<uint8_t> t;
    uint8_t counter = 1;
    while (out.size() < out_bytes) {
        std::vector<uint8_t> block(t);
        block.insert(block.end(), info.begin(), info.end());
        block.push_back(counter++);
        t = hmac_sha256(prk, block);
        out.insert(out.end(), t.begin(), t.end());
    }
    out.resize(out_bytes);
    return out;
}

std::vector<uint8_t> hkdf_sha256(std::span<const uint8_t> ikm,
                                 std::span<const uint8_t> salt,
                                 std::span<const uint8_t> info, size_t out_bytes) {
    return hkdf_expand(hkdf_extract(salt, ikm), info, out_bytes);
}

}  // namespace fv
