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

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fv/asym.hpp"
#include "fv/error.hpp"
#include "fv/hash.hpp"

using namespace fv;

namespace {

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

std::vector<uint8_t> from_hex(const std::string& hex) {
    std::vector<uint8_t> out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>(std::stoi(hex.substr(2 * i, 2), nullptr, 16));
    return out;
}

std::string to_hex(std::span<const uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

std::vector<uint8_t> bytes_of(const std::string& s) {
    return std::vector<uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_SUITE_BEGIN("ace");

TEST_CASE("sha-2 standard vectors") {
    struct Vec {
        const char* msg_hex;
        const char* d256;
        const char* d512;
    };
    // Empty, "abc", the classic 448-bit chaining message, and 0..255.
    std::string all_bytes;
    for (int i = 0; i < 256; ++i) {
        static const char* digits = "0123456789abcdef";
        all_bytes.push_back(digits[i >> 4]);
        all_bytes.push_back(digits[i & 0xF]);
    }
    const Vec vecs[] = {
        {"",
         "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
         "cf83e1357eefb8bdf1542850d66d8007d620e4050b5715dc83f4a921d36ce9ce"
         "47d0d13c5d85f2b0ff8318d2877eec2f63b931bd47417a81a538327af927da3e"},
        {"616263",
         "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
         "ddaf35a193617abacc417349ae20413112e6fa4e89a97ea20a9eeee64b55d39a"
         "2192992a274fc1a836ba3c23a3feebbd454d4423643ce80e2a9ac94fa54ca49f"},
        {"6162636462636465636465666465666765666768666768696768696a68696a6b"
         "696a6b6c6a6b6c6d6b6c6d6e6c6d6e6f6d6e6f706e6f7071",
         "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1",
         "204a8fc6dda82f0a0ced7beb8e08a41657c16ef468b228a8279be331a703c335"
         "96fd15c13b1b07f9aa1d3bea57789ca031ad85c7a71dd70354ec631238ca3445"},
        {all_bytes.c_str(),
         "40aff2e9d2d8922e47afd4648e6967497158785fbd1da870e7110266bf944880",
         "1e7b80bc8edc552c8feeb2780e111477e5bc70465fac1a77b29b35980c3f0ce4"
         "a036a6c9462036824bd56801e62af7e9feba5c22ed8a5af877bf7de117dcac6d"},
    };
    for (const auto& v : vecs) {
        auto msg = from_hex(v.msg_hex);
        CHECK(to_hex(sha256(msg)) == v.d256);
        CHECK(to_hex(sha512(msg)) == v.d512);
    }
    CHECK(to_hex(sha384(bytes_of("abc"))) ==
          "cb00753f45a35e8bb5a03d699ac65007272c32ab0eded1631a8b605a43ff5bed"
          "8086072ba1e7cc2358baeca134c825a7");
}

TEST_CASE("sha-2 digest is independent of the alu count, cycles are not zero") {
    HashJob job;
    job.message = bytes_of("block boundary straddling message for the hash cluster");
    for (auto variant : {Sha2Variant::kSha256, Sha2Variant::kSha512}) {
        job.variant = variant;
        job.alu_count = 1;
        auto one = sha2_digest(job);
        job.alu_count = 8;
        auto eight = sha2_digest(job);
        CHECK(one.digest == eight.digest);
        CHECK(one.cycles == eight.cycles);  // one chained message: no parallelism
        CHECK(one.cycles > 0);
    }
}

TEST_CASE("sha-2 cycle model: more blocks cost more") {
    HashJob one_block{bytes_of("abc"), Sha2Variant::kSha256, 8};
    HashJob two_block{std::vector<uint8_t>(64, 0x61), Sha2Variant::kSha256, 8};
    CHECK(sha2_digest(two_block).cycles > sha2_digest(one_block).cycles);

    // Exact fold: setup plus block count times per-block cost.
    CHECK(sha2_digest(one_block).cycles == kSha2SetupCycles + 1 * kSha256BlockCycles);
    CHECK(sha2_digest(two_block).cycles == kSha2SetupCycles + 2 * kSha256BlockCycles);
    CHECK(sha2_block_count(Sha2Variant::kSha256, 55) == 1);
    CHECK(sha2_block_count(Sha2Variant::kSha256, 56) == 2);
    CHECK(sha2_block_count(Sha2Variant::kSha512, 111) == 1);
    CHECK(sha2_block_count(Sha2Variant::kSha512, 112) == 2);
}

TEST_CASE("segmented hashing spreads independent chunks over the cluster") {
    // 8 segments on 8 ALUs finish in one wave; on 1 ALU they serialize.
    uint64_t wide = segmented_hash_cycles(8 * 4096, 8, Sha2Variant::kSha256, 8);
    uint64_t narrow = segmented_hash_cycles(8 * 4096, 8, Sha2Variant::kSha256, 1);
    CHECK(narrow == 8 * wide);
    // More ALUs never cost more.
    for (int alus = 2; alus <= 8; ++alus)
        CHECK(segmented_hash_cycles(1 << 20, 16, Sha2Variant::kSha256, alus) <=
              segmented_hash_cycles(1 << 20, 16, Sha2Variant::kSha256, alus - 1));
    CHECK(thrown_code([] { segmented_hash_cycles(100, 0, Sha2Variant::kSha256, 8); }) ==
          Errc::kBadConfig);
    CHECK(thrown_code([] { segmented_hash_cycles(100, 4, Sha2Variant::kSha256, 0); }) ==
          Errc::kBadConfig);
}

TEST_CASE("keccak-f1600 permutation of the zero state") {
    const uint64_t expected[25] = {
        0xf1258f7940e1dde7ULL, 0x84d5ccf933c0478aULL, 0xd598261ea65aa9eeULL,
        0xbd1547306f80494dULL, 0x8b284e056253d057ULL, 0xff97a42d7f8e6fd4ULL,
        0x90fee5a0a44647c4ULL, 0x8c5bda0cd6192e76ULL, 0xad30a6f71b19059cULL,
        0x30935ab7d08ffc64ULL, 0xeb5aa93f2317d635ULL, 0xa9a6e6260d712103ULL,
        0x81a57c16dbcf555fULL, 0x43b831cd0347c826ULL, 0x01f22f1a11a5569fULL,
        0x05e5635a21d9ae61ULL, 0x64befef28cc970f2ULL, 0x613670957bc46611ULL,
        0xb87c5a554fd00ecbULL, 0x8c3ee88a1ccf32c8ULL, 0x940c7922ae3a2614ULL,
        0x1841f924a2c509e4ULL, 0x16f53526e70465c2ULL, 0x75f644e97f30a13bULL,
        0xeaf1ff7b5ceca249ULL};
    KeccakState st{};
    keccak_f1600(st);
    for (int i = 0; i < 25; ++i) CHECK(st[i] == expected[i]);
    // Second application, spot lanes (chained-permutation vector).
    keccak_f1600(st);
    CHECK(st[0] == 0x2d5c954df96ecb3cULL);
    CHECK(st[24] == 0x20d06cd26a8fbf5cULL);
}

TEST_CASE("keccak-f1600 behaves as a bijection on random states") {
    std::mt19937_64 rng(0x452821e638d01377ULL);
    for (int trial = 0; trial < 1000; ++trial) {
        KeccakState a, b;
        for (auto& lane : a) lane = rng();
        b = a;
        b[rng() % 25] ^= 1ULL << (rng() % 64);
        keccak_f1600(a);
        keccak_f1600(b);
        CHECK(a != b);
    }
}

TEST_CASE("sha-3 and shake standard vectors") {
    CHECK(to_hex(sha3_256({})) ==
          "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
    CHECK(to_hex(sha3_256(bytes_of("abc"))) ==
          "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");
    CHECK(to_hex(sha3_512(bytes_of("abc"))) ==
          "b751850b1a57168a5693cd924b6b096e08f621827444f70d884f5d0240d2712e"
          "10e116e9192af3c91a7ec57647e3934057340b4cf408d5a56592f8274eec53f0");
    CHECK(to_hex(shake256({}, 32)) ==
          "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f");
    CHECK(to_hex(shake256(bytes_of("abc"), 32)) ==
          "483366601360a8771c6863080cc4114d8db44530f8f1e1ee4f94ea37e78b5739");
    // Squeezing more than one rate block exercises the output loop.
    auto long_out = shake256(bytes_of("abc"), 200);
    CHECK(long_out.size() == 200);
    CHECK(to_hex(std::span(long_out).first(32)) ==
          "483366601360a8771c6863080cc4114d8db44530f8f1e1ee4f94ea37e78b5739");
}

TEST_CASE("hmac and hkdf vectors") {
    CHECK(to_hex(hmac_sha256(std::vector<uint8_t>(20, 0x0b), bytes_of("Hi There"))) ==
          "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");
    CHECK(to_hex(hkdf_sha256(std::vector<uint8_t>(22, 0x0b),
                             from_hex("000102030405060708090a0b0c"),
                             from_hex("f0f1f2f3f4f5f6f7f8f9"), 42)) ==
          "3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf"
          "34007208d5b887185865");
    CHECK(to_hex(hkdf_sha256(std::vector<uint8_t>(32, 0xA5), bytes_of("chip-salt"),
                             bytes_of("fv-kdf"), 64)) ==
          "cce09339aaba285bce9190978fdc0364235f41c3849587c65fe05abb272eafda"
          "d7968d0ace75e9fae11353e9fb3c3facd7a0e63ceb6bb63c8c3d7996e904cdbc");
}

// Fixed 2048-bit key for the modular-exponentiation anchor and the
// signature paths; generated once with a standard library and frozen.
static RsaKey fixed_rsa_key() {
    RsaKey k;
    k.n = LimbInt::from_hex(
        "e1f42d8f268917bc33be7c4aa5e9c90fecc1e85269d17ac37a5b13b38136aa92"
        "ba7996ef06ce7317cf4e3a892dbbf7b59c3b0130c509d908d30df29271ea97f8"
        "4566f56fa99f08358d578ea0f86350e287c76f0308634b4f51d2b23dfb30f2c8"
        "f503b8484f28721cf59578cd425b4f4e50730d44ae2c6cff27377be92a227e4f"
        "aa8116a6605f10ee902776458693981ee0e0a1f631b0451d580d9a6dedfe720d"
        "d18a5b5131148188ae9277a95e64775cc91c0bed0530abc6bb18d15ebfbe2c4c"
        "6c64f2ad334c9a449088b1d80fe433e08468ae2217b4117fac6bad3ec782e544"
        "5acc98660299209b70ee30556015958cf2560c00501362507f6f42632288c6b5");
    k.e = LimbInt::from_u64(65537);
    k.d = LimbInt::from_hex(
        "6bb6e3a9aae6ca80c59b1f0892b901f334fa0a5918f17462f653f39970af316f"
        "59c5f9c4d7de9cc05b6298ac8fc04b3475c54f661cb30c0de1f1407a23dfe6a2"
        "6e66950a58e19f536c6b3b26dc424d491f525c8b13f95fb6797cc63238195146"
        "31d857db8b6521635220b317804192e2c0f40f63feddaba2e838274b7803b435"
        "90b4d24f18379e16da5d0c46d5b261cf3f37f9928439751afb917f5d1e9f95a7"
        "4a6b58f4ef88a55befbbff837611c285623ce76c46b907f23fc06ec88121196c"
        "77a86ff54c98f1897796e3ce79c8747ecaa439c9607dbe3f54b6c61fb2892637"
        "f1a2e9bfa0a4c8e5f29052e37a2bcb78d8098211c5a6770d64d500ac730426f");
    k.bits = 2048;
    return k;
}

TEST_CASE("rsa toy numbers against a brute-force exponentiation loop") {
    // n = 3233, e = 17, d = 2753: small enough to grind out directly.
    auto modpow_loop = [](uint64_t base, uint64_t exp, uint64_t mod) {
        uint64_t acc = 1;
        for (uint64_t i = 0; i < exp; ++i) acc = acc * base % mod;
        return acc;
    };
    uint64_t sig = modpow_loop(65, 2753, 3233);
    CHECK(modpow_loop(sig, 17, 3233) == 65);

    auto ctx = ModContext::make(LimbInt::from_u64(3233));
    CHECK(ctx.pow(LimbInt::from_u64(65), LimbInt::from_u64(2753)).low_u64() == sig);
}

TEST_CASE("rsa fixed-key anchor and signature round-trip") {
    RsaKey key = fixed_rsa_key();
    // Raw modexp pair frozen from an independent implementation.
    LimbInt m = LimbInt::from_hex(
        "cdc10e8b75a2240211e2a24011ae68173a52eaa1936e094af0739f749c54d508"
        "cdc10e8b75a2240211e2a24011ae68173a52eaa1936e094af0739f749c54d508"
        "cdc10e8b75a2240211e2a24011ae68173a52eaa1936e094af0739f749c54d508"
        "cdc10e8b75a2240211e2a24011ae68173a52eaa1936e094af0739f749c54d508"
        "cdc10e8b75a2240211e2a24011ae68173a52eaa1936e094af0739f749c54d508"
        "cdc10e8b75a2240211e2a24011ae68173a52eaa1936e094af0739f749c54d508"
        "cdc10e8b75a2240211e2a24011ae68173a52eaa1936e094af0739f749c54d508"
        "cdc10e8b75a2240211e2a24011ae68173a52eaa1936e094af0739f749c54d508");
    LimbInt c = LimbInt::from_hex(
        "8b1b5009bf690e20fcabb25ef9c2164d1665988c0c62fc25f5f942bb5ab221fc"
        "4c8a7ac66543abff48ad9ae311a0c12aec17a63a5843cc32ffb79285056a089d"
        "89214369259948a502aef12fff2020f105eadb3c88f796a331ccf56a57289761"
        "325fc549f08285f514f3cb373cc7ae3f352d0cc9ccd96fecd667b2b76ea1bc9b"
        "a3d25fe3a7bf8fd99d1bdd66d575f10153f052dee78ce4fedd1dfd12529a9103"
        "1b4a34a78028c3019553f4dc4a2c99fe99879b6ea8e4c4b8d2da2bbd97e602db"
        "fc6ea3d07927b6e9f7f087060e8a3e2714926fa2304494c07189d51225267ab7"
        "2f08c3ae466821c959629c476691177004240a1781d4dd54574ccae47bd0c3e8");
    auto ctx = ModContext::make(key.n);
    CHECK(ctx.pow(m, key.e) == c);
    CHECK(ctx.pow(c, key.d) == m);

    auto digest = sha256(bytes_of("firmware-image-digest"));
    auto sig = rsa_sign(key, digest);
    CHECK(sig.accept);
    CHECK(sig.signature.size() == 256);
    CHECK(sig.cycles > 0);
    CHECK(rsa_verify(key, digest, sig.signature).accept);

    // Wrong digest rejects.
    auto other = sha256(bytes_of("some-other-image"));
    CHECK_FALSE(rsa_verify(key, other, sig.signature).accept);
    // Mismatched signature length is a caller error, not a reject.
    CHECK(thrown_code([&] {
              (void)rsa_verify(key, digest, std::vector<uint8_t>(128));
          }) == Errc::kWidthMismatch);
}

TEST_CASE("rsa single-bit perturbations always reject") {
    RsaKey key = fixed_rsa_key();
    auto digest = sha256(bytes_of("attestation-payload"));
    auto sig = rsa_sign(key, digest);
    std::mt19937_64 rng(0xbe5466cf34e90c6cULL);
    for (int trial = 0; trial < 500; ++trial) {
        auto tampered = sig.signature;
        tampered[rng() % tampered.size()] ^= uint8_t(1u << (rng() % 8));
        CHECK_FALSE(rsa_verify(key, digest, tampered).accept);
    }
    for (int trial = 0; trial < 500; ++trial) {
        auto wrong = digest;
        wrong[rng() % wrong.size()] ^= uint8_t(1u << (rng() % 8));
        CHECK_FALSE(rsa_verify(key, wrong, sig.signature).accept);
    }
}

TEST_CASE("rsa deterministic key generation") {
    RsaKey a = rsa_generate(1024, 7);
    RsaKey b = rsa_generate(1024, 7);
    RsaKey c = rsa_generate(1024, 8);
    CHECK(a.n == b.n);
    CHECK(a.d == b.d);
    CHECK_FALSE(a.n == c.n);
    CHECK(a.n.bit_length() == 1024);

    auto digest = sha256(bytes_of("boot-stage-2"));
    auto sig = rsa_sign(a, digest);
    CHECK(rsa_verify(a, digest, sig.signature).accept);
    CHECK_FALSE(rsa_verify(c, digest, sig.signature).accept);

    CHECK(thrown_code([] { rsa_generate(1000, 1); }) == Errc::kIllegalKeyLength);
}

TEST_CASE("rsa cycle model scales with limb count at equal exponent") {
    // Cost model: cycles = square-and-multiply steps for the exponent times
    // (per-limb cost * modulus limbs).  At the same public exponent the
    // 3072/2048 ratio is exactly the limb ratio 48/32 = 1.5.
    AsymCostModel costs;
    LimbInt e = LimbInt::from_u64(65537);
    uint64_t steps = modexp_steps(e);
    CHECK(steps == 17);  // 16 squarings + 1 multiply for 0x10001

    auto synthetic_key = [](int bits) {
        RsaKey k;
        std::vector<uint8_t> n_bytes(size_t(bits) / 8, 0xA7);
        n_bytes[0] |= 0x80;
        n_bytes.back() |= 1;
        k.n = LimbInt::from_bytes_be(n_bytes);
        k.e = LimbInt::from_u64(65537);
        k.d = LimbInt::from_u64(3);
        k.bits = bits;
        return k;
    };
    auto digest = sha256(bytes_of("x"));
    RsaKey k2048 = synthetic_key(2048);
    RsaKey k3072 = synthetic_key(3072);
    uint64_t c2048 = rsa_verify(k2048, digest, std::vector<uint8_t>(256, 1)).cycles;
    uint64_t c3072 = rsa_verify(k3072, digest, std::vector<uint8_t>(384, 1)).cycles;
    CHECK(c2048 == uint64_t(steps * costs.modmul_per_limb * 32));
    CHECK(c3072 == uint64_t(steps * costs.modmul_per_limb * 48));
    CHECK(2 * c3072 == 3 * c2048);  // exact 1.5x limb scaling
}

// --------------------------------------------------------------------- ECDSA

TEST_CASE("ecdsa p-256 known answers") {
    // Standard deterministic-nonce consistency vector (SHA-256, "sample").
    LimbInt d = LimbInt::from_hex(
        "c9afa9d845ba75166b5c215767b1d6934e50c3db36e89b127b8a622b120f6721");
    LimbInt qx, qy;
    ec_public_key(EcCurve::kP256, d, &qx, &qy);
    CHECK(qx.to_hex() == "60fed4ba255a9d31c961eb74c6356d68c049b8923b61fa6ce669622e60f29fb6");
    CHECK(qy.to_hex() == "7903fe1008b8bc99a41ae9e95628bc64f2f1b20c2d7e9f5177a3c294d4462299");
    auto digest = sha256(bytes_of("sample"));
    LimbInt k = LimbInt::from_hex(
        "a6e3c57dd01abe90086538398355dd4c3b17aa873382b0f24d6129493d8aad60");
    auto sig = ecdsa_sign_with_k(EcCurve::kP256, d, digest, k);
    CHECK(sig.r.to_hex() == "efd48b2aacb6a8fd1140dd9cd45e81d69d2c877b56aaf991c34d0ea84eaf3716");
    CHECK(sig.s.to_hex() == "f7cb1c942d657c41d436c7a1b6e29f65f3e900dbb9aff4064dc4ab2f843acda8");
    CHECK(ecdsa_verify(EcCurve::kP256, qx, qy, digest, sig.r, sig.s).accept);

    // Frozen fixed-nonce vector cross-checked with an independent verifier.
    LimbInt d2 = LimbInt::from_hex(
        "9cee0a4834acd923910443cc4e6454839dfcb7270c641b143cf41fe614bd0029");
    LimbInt k2 = LimbInt::from_hex(
        "ce3faac8de037e85f830122be7953d4fd22f69cba3dd780c0ee5b52a6afdb298");
    ec_public_key(EcCurve::kP256, d2, &qx, &qy);
    CHECK(qx.to_hex() == "dc8908d406af1e736884771332cb065fcd277fff49a1b4425660d729fe37a7af");
    CHECK(qy.to_hex() == "24c310c0b862035f6d7bcdb736991d2d7a33ea0f832160e45c8fbdd1cb695b44");
    auto digest2 = sha256(bytes_of("attestation-record-0001"));
    auto sig2 = ecdsa_sign_with_k(EcCurve::kP256, d2, digest2, k2);
    CHECK(sig2.r.to_hex() == "43aeb17c0749655b65fe1bb04404aaa705a4bfbb3e3da08a0f786eb93e5f5825");
    CHECK(sig2.s.to_hex() == "e7cee91d1c338663e3e657f5885447ab9793dae01fa7d4809bf8efab7465e8af");
    CHECK(ecdsa_verify(EcCurve::kP256, qx, qy, digest2, sig2.r, sig2.s).accept);
}

TEST_CASE("ecdsa p-384 known answers") {
    LimbInt d = LimbInt::from_hex(
        "bdd0620c32b60e93779d6f7ffd1efa7ba67d604610cd8ad4fe0f4faf31724acb"
        "3f65ad1c26fbb37b4facccc5f6bff2db");
    LimbInt k = LimbInt::from_hex(
        "eb9457559e692d51632129b46e02be5482ff34c6f27972358e52ea53d56ecf28"
        "d8bed334d684336516b2c63ed5a0d715");
    LimbInt qx, qy;
    ec_public_key(EcCurve::kP384, d, &qx, &qy);
    CHECK(qx.to_hex() ==
          "ac6f664c2dea42abaf2024da7db9226279b0780723fd268594935895406338bd"
          "50842fddb3888b975dcb8803210efd83");
    CHECK(qy.to_hex() ==
          "4ac9ede405424aec4b3803d74d953dfde00d8017f734e18e72b487a11980dcb8"
          "5a0bb581eb13fbfc91ab8ff5da5ca61c");
    auto digest = sha384(bytes_of("attestation-record-0001"));
    auto sig = ecdsa_sign_with_k(EcCurve::kP384, d, digest, k);
    CHECK(sig.r.to_hex() ==
          "8fe974fc35a1f027c130f8ca8803507bf2e61fef6f1e5e613bd42046ba52e7ec"
          "475ebe776d70035ed9b13ccfd8f5c70d");
    CHECK(sig.s.to_hex() ==
          "3ee14981ed192bf7f22cddd409a90f5867219a7db59ccefbedd41a7de0f89283"
          "d48b82b2b7c64ed4bb4ff53e129bbab0");
    CHECK(ecdsa_verify(EcCurve::kP384, qx, qy, digest, sig.r, sig.s).accept);
}

TEST_CASE("ecdsa sign/verify round-trips with derived keys and nonces") {
    std::mt19937_64 rng(0xc0ac29b7c97c50ddULL);
    for (EcCurve curve : {EcCurve::kP256, EcCurve::kP384}) {
        INFO("curve index ", int(curve));
        auto key = ecdsa_keygen(curve, from_hex("00112233445566778899aabbccddeeff"));
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<uint8_t> msg(64);
            for (auto& b : msg) b = uint8_t(rng());
            auto digest = curve == EcCurve::kP256 ? sha256(msg) : sha384(msg);
            auto sig = ecdsa_sign(key, digest, from_hex("deadbeef"));
            CHECK(ecdsa_verify(curve, key.qx, key.qy, digest, sig.r, sig.s).accept);
            CHECK(sig.cycles > 0);

            // Determinism: same seed, same signature.
            auto again = ecdsa_sign(key, digest, from_hex("deadbeef"));
            CHECK(sig.r == again.r);
            CHECK(sig.s == again.s);
        }
    }
}

TEST_CASE("ecdsa rejects tampered inputs") {
    auto key = ecdsa_keygen(EcCurve::kP256, bytes_of("tamper-suite-key"));
    auto digest = sha256(bytes_of("log-entry-42"));
    auto sig = ecdsa_sign(key, digest, bytes_of("tamper-suite-nonce"));
    REQUIRE(ecdsa_verify(EcCurve::kP256, key.qx, key.qy, digest, sig.r, sig.s).accept);

    // Swapped (r, s) rejects.
    CHECK_FALSE(ecdsa_verify(EcCurve::kP256, key.qx, key.qy, digest, sig.s, sig.r).accept);

    // Single-bit flips in digest or signature reject.
    std::mt19937_64 rng(0x3f84d5b5b5470917ULL);
    for (int trial = 0; trial < 48; ++trial) {
        auto wrong = digest;
        wrong[rng() % wrong.size()] ^= uint8_t(1u << (rng() % 8));
        CHECK_FALSE(ecdsa_verify(EcCurve::kP256, key.qx, key.qy, wrong, sig.r, sig.s).accept);
    }
    for (int trial = 0; trial < 48; ++trial) {
        auto r_bytes = sig.r.to_bytes_be(32);
        r_bytes[rng() % r_bytes.size()] ^= uint8_t(1u << (rng() % 8));
        LimbInt r_bad = LimbInt::from_bytes_be(r_bytes);
        CHECK_FALSE(
            ecdsa_verify(EcCurve::kP256, key.qx, key.qy, digest, r_bad, sig.s).accept);
    }

    // Out-of-range scalars and off-curve points are caller errors.
    CHECK(thrown_code([&] {
              LimbInt qx, qy;
              ec_public_key(EcCurve::kP256, LimbInt(), &qx, &qy);
          }) == Errc::kBadConfig);
    CHECK(thrown_code([&] {
              (void)ecdsa_verify(EcCurve::kP256, key.qx, LimbInt::from_u64(12345), digest,
                                 sig.r, sig.s);
          }) == Errc::kBadConfig);
}

// ----------------------------------------------------------------------- NTT

TEST_CASE("ntt inverse composes to identity") {
    auto params = NttParams::dilithium();
    CHECK(params.q < (1u << 23));  // coefficients fit the 23-bit lane width
    std::mt19937_64 rng(0x9216d5d98979fb1bULL);
    std::vector<uint32_t> poly(size_t(params.n));
    for (int trial = 0; trial < 1000; ++trial) {
        for (auto& c : poly) c = uint32_t(rng() % params.q);
        auto round = ntt_inverse(ntt_forward(poly, params), params);
        REQUIRE(round == poly);  // REQUIRE: one message per failure, not 256
    }
    std::vector<uint32_t> zero(size_t(params.n), 0);
    CHECK(ntt_forward(zero, params) == zero);
    CHECK(ntt_inverse(zero, params) == zero);
}

TEST_CASE("ntt pointwise product equals schoolbook negacyclic convolution") {
    auto toy = NttParams::toy();
    std::mt19937_64 rng(0xb8e1afed6a267e96ULL);
    for (int trial = 0; trial < 64; ++trial) {
        std::vector<uint32_t> a(8), b(8);
        for (auto& c : a) c = uint32_t(rng() % toy.q);
        for (auto& c : b) c = uint32_t(rng() % toy.q);
        auto fast = ntt_inverse(
            ntt_pointwise(ntt_forward(a, toy), ntt_forward(b, toy), toy), toy);

        // O(n^2) reference: x^8 == -1.
        std::vector<int64_t> ref(8, 0);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                int64_t sign = (i + j) < 8 ? 1 : -1;
                ref[(i + j) % 8] += sign * int64_t(a[i]) * int64_t(b[j]);
            }
        for (int i = 0; i < 8; ++i) {
            int64_t want = ((ref[i] % int64_t(toy.q)) + int64_t(toy.q)) % int64_t(toy.q);
            REQUIRE(fast[i] == uint32_t(want));
        }
    }
}

TEST_CASE("ntt input validation") {
    auto params = NttParams::dilithium();
    CHECK(thrown_code([&] { (void)ntt_forward(std::vector<uint32_t>(255), params); }) ==
          Errc::kWidthMismatch);
    CHECK(thrown_code([&] {
              std::vector<uint32_t> poly(256, 0);
              poly[3] = uint32_t(params.q);
              (void)ntt_forward(poly, params);
          }) == Errc::kReductionDomain);
    CHECK(thrown_code([&] {
              NttParams bad{15, 8, 2};  // q composite
              (void)ntt_forward(std::vector<uint32_t>(8, 1), bad);
          }) == Errc::kBadConfig);
    CHECK(thrown_code([&] {
              NttParams bad{97, 8, 3};  // 3^8 != -1 mod 97
              (void)ntt_forward(std::vector<uint32_t>(8, 1), bad);
          }) == Errc::kBadConfig);
    CHECK(thrown_code([&] {
              NttParams bad{97, 6, 8};  // n not a power of two
              (void)ntt_forward(std::vector<uint32_t>(6, 1), bad);
          }) == Errc::kBadConfig);
}

// ------------------------------------------------------------ PQC schedules

TEST_CASE("scheme catalog matches the reconfiguration table") {
    struct Expect {
        AsymAlgo algo;
        std::vector<int> key_bits;
        int granularity;
    };
    const Expect expects[] = {
        {AsymAlgo::kRsa, {1024, 2048, 3072, 4096}, 1024},
        {AsymAlgo::kEcdsa, {160, 224, 256, 384, 521}, 256},
        {AsymAlgo::kDilithium, {2048, 3072}, 23},
        {AsymAlgo::kFalcon, {896, 1280}, 64},
        {AsymAlgo::kSphincsPlus, {256, 384, 512}, 32},
    };
    for (const auto& e : expects) {
        const auto& spec = scheme_spec(e.algo);
        CHECK(spec.key_bits == e.key_bits);
        CHECK(spec.granularity_bits == e.granularity);
        CHECK(spec.digest_bits == std::vector<int>{256, 512});
    }
    for (AsymAlgo algo : kAllAsymAlgos) CHECK(asym_from_name(asym_name(algo)) == algo);
    CHECK(thrown_code([] { asym_from_name("dsa"); }) == Errc::kUnknownAlgorithm);

    CHECK(default_digest_bits(AsymAlgo::kEcdsa, 256) == 256);
    CHECK(default_digest_bits(AsymAlgo::kEcdsa, 384) == 512);
    CHECK(default_digest_bits(AsymAlgo::kSphincsPlus, 256) == 256);
    CHECK(default_digest_bits(AsymAlgo::kSphincsPlus, 512) == 512);
    CHECK(thrown_code([] { default_digest_bits(AsymAlgo::kFalcon, 1024); }) ==
          Errc::kIllegalKeyLength);
}

TEST_CASE("pqc cycle schedules fold exactly over unit costs") {
    AsymCostModel costs;
    auto sched = pqc_core_schedule(AsymAlgo::kDilithium, 3072, SigOp::kVerify);
    uint64_t manual = uint64_t(double(sched.keccak_perms) * costs.keccak_perm +
                               double(sched.ntt_passes) * costs.ntt_pass +
                               double(sched.modmuls) * costs.pqc_modmul +
                               double(sched.comparisons) * costs.comparison +
                               double(sched.fft_passes) * costs.fft_pass);
    CHECK(schedule_cycles(sched, costs) == manual);

    // msg_bytes = 0 still absorbs one padding block.
    CHECK(pqc_latency(AsymAlgo::kDilithium, 3072, SigOp::kVerify, 0) ==
          manual + uint64_t(costs.keccak_perm));

    // Doubling the unit costs doubles the fold.
    AsymCostModel doubled = costs;
    doubled.keccak_perm *= 2;
    doubled.ntt_pass *= 2;
    doubled.pqc_modmul *= 2;
    doubled.comparison *= 2;
    doubled.fft_pass *= 2;
    CHECK(schedule_cycles(sched, doubled) == 2 * manual);
}

TEST_CASE("pqc latency is monotone in message size with the hash slope") {
    AsymCostModel costs;
    for (AsymAlgo scheme : {AsymAlgo::kDilithium, AsymAlgo::kFalcon, AsymAlgo::kSphincsPlus}) {
        int kb = scheme_spec(scheme).key_bits.front();
        uint64_t base = pqc_latency(scheme, kb, SigOp::kSign, 1000);
        uint64_t more = pqc_latency(scheme, kb, SigOp::kSign, 1000 + 10 * kShake256RateBytes);
        CHECK(more > base);
        // Slope: exactly one extra permutation per extra rate block.
        CHECK(more - base == uint64_t(10 * costs.keccak_perm));
    }
}

TEST_CASE("hash-based signing dwarfs the lattice schemes") {
    uint64_t sphincs = pqc_latency(AsymAlgo::kSphincsPlus, 256, SigOp::kSign, 10240);
    uint64_t dilithium = pqc_latency(AsymAlgo::kDilithium, 3072, SigOp::kSign, 10240);
    uint64_t falcon = pqc_latency(AsymAlgo::kFalcon, 1280, SigOp::kSign, 10240);
    CHECK(sphincs > 4 * dilithium);
    CHECK(sphincs > 4 * falcon);
    // Verification is cheap for all of them.
    for (auto [scheme, kb] : {std::pair{AsymAlgo::kDilithium, 3072},
                              {AsymAlgo::kFalcon, 1280},
                              {AsymAlgo::kSphincsPlus, 256}})
        CHECK(pqc_latency(scheme, kb, SigOp::kVerify, 0) <
              pqc_latency(scheme, kb, SigOp::kSign, 0));
}

TEST_CASE("pqc schedule errors") {
    CHECK(thrown_code([] { (void)pqc_core_schedule(AsymAlgo::kRsa, 2048, SigOp::kSign); }) ==
          Errc::kUnknownAlgorithm);
    CHECK(thrown_code([] {
              (void)pqc_core_schedule(AsymAlgo::kDilithium, 1024, SigOp::kSign);
          }) == Errc::kIllegalKeyLength);
}

TEST_SUITE_END();
