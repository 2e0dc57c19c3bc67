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
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "fv/benes.hpp"
#include "fv/error.hpp"
#include "fv/limbint.hpp"
#include "fv/sbox.hpp"
#include "fv/word.hpp"
#include "fv/word_ops.hpp"

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

// Direct bit-by-bit application of a permutation, independent of the
// switch-network machinery: output bit perm[i] = input bit i.
uint64_t apply_perm_direct(uint64_t v, const std::vector<int>& perm) {
    uint64_t out = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        out |= ((v >> i) & 1ULL) << perm[i];
    return out;
}

std::vector<int> random_perm(int w, std::mt19937_64& rng) {
    std::vector<int> p(w);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_SUITE("word") {
    TEST_CASE("make validates width and range") {
        CHECK(Word::make(0x1F, 8).value == 0x1F);
        CHECK(Word::make(0, 23).width == 23);
        CHECK(thrown_code([] { Word::make(1, 5); }) == Errc::kBadWidth);
        CHECK(thrown_code([] { Word::make(0x100, 8); }) == Errc::kBadWidth);
        CHECK(Word::wrap(0x1FF, 8).value == 0xFF);
        CHECK(Word::make(~0ULL, 64).value == ~0ULL);
    }
}

TEST_SUITE("benes") {
    TEST_CASE("exhaustive width 4: every permutation routes and realizes itself") {
        std::vector<int> perm(4);
        std::iota(perm.begin(), perm.end(), 0);
        int count = 0;
        do {
            BenesConfig cfg = route_benes(perm);
            CHECK(benes_realized_perm(cfg) == perm);
            for (uint64_t v : {0x5ULL, 0xAULL, 0x3ULL, 0xFULL}) {
                Word out = benes_permute(Word::make(v, 4), cfg);
                CHECK(out.value == apply_perm_direct(v, perm));
            }
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(count == 24);
    }

    TEST_CASE("exhaustive width 8: every permutation routes and realizes itself") {
        std::vector<int> perm(8);
        std::iota(perm.begin(), perm.end(), 0);
        int count = 0;
        do {
            BenesConfig cfg = route_benes(perm);
            CHECK(benes_realized_perm(cfg) == perm);
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(count == 40320);
    }

    TEST_CASE("random permutations at hardware widths") {
        std::mt19937_64 rng(0x1CEB00DAULL);
        for (int w : {16, 32, 64}) {
            for (int iter = 0; iter < 300; ++iter) {
                std::vector<int> perm = random_perm(w, rng);
                BenesConfig cfg = route_benes(perm);
                CHECK(benes_realized_perm(cfg) == perm);
                uint64_t v = rng() & width_mask(w);
                Word out = benes_permute(Word::make(v, w), cfg);
                CHECK(out.value == apply_perm_direct(v, perm));
            }
        }
    }

    TEST_CASE("identity and bit reversal") {
        for (int w : {8, 32, 64}) {
            std::vector<int> ident(w);
            std::iota(ident.begin(), ident.end(), 0);
            BenesConfig cfg = route_benes(ident);
            Word x = Word::make(0x123456789ABCDEFULL & width_mask(w), w);
            CHECK(benes_permute(x, cfg) == x);

            std::vector<int> rev(w);
            for (int i = 0; i < w; ++i) rev[i] = w - 1 - i;
            BenesConfig rcfg = route_benes(rev);
            CHECK(benes_realized_perm(rcfg) == rev);
        }
    }

    TEST_CASE("split and join preserve the combined configuration") {
        std::mt19937_64 rng(0xB1F0CA1ULL);
        for (int w : {32, 64}) {
            for (int iter = 0; iter < 50; ++iter) {
                BenesConfig cfg = route_benes(random_perm(w, rng));
                auto [top, bottom] = benes_split_cores(cfg);
                CHECK(top.width == w / 2);
                CHECK(bottom.width == w / 2);
                // Half-width cores are valid networks in their own right.
                std::vector<int> tp = benes_realized_perm(top);
                std::vector<int> bp = benes_realized_perm(bottom);
                std::vector<int> sorted_tp = tp, sorted_bp = bp;
                std::sort(sorted_tp.begin(), sorted_tp.end());
                std::sort(sorted_bp.begin(), sorted_bp.end());
                for (int i = 0; i < w / 2; ++i) {
                    CHECK(sorted_tp[i] == i);
                    CHECK(sorted_bp[i] == i);
                }

                std::vector<uint8_t> outer_in(cfg.stage_bits.begin(), cfg.stage_bits.begin() + w / 2);
                std::vector<uint8_t> outer_out(cfg.stage_bits.end() - w / 2, cfg.stage_bits.end());
                BenesConfig joined = benes_join_cores(top, bottom, outer_in, outer_out);
                CHECK(joined.width == cfg.width);
                CHECK(joined.stage_bits == cfg.stage_bits);
                CHECK(benes_realized_perm(joined) == benes_realized_perm(cfg));
            }
        }
    }

    TEST_CASE("rejects non-bijections and bad widths") {
        CHECK(thrown_code([] { route_benes({0, 0, 1, 2}); }) == Errc::kNotAPermutation);
        CHECK(thrown_code([] { route_benes({0, 1, 2, 4}); }) == Errc::kNotAPermutation);
        CHECK(thrown_code([] { route_benes({0, 1, 2}); }) == Errc::kBadWidth);
        CHECK(thrown_code([] {
            std::vector<int> p(128);
            std::iota(p.begin(), p.end(), 0);
            route_benes(p);
        }) == Errc::kBadWidth);
        BenesConfig cfg = route_benes({1, 0, 3, 2});
        CHECK(thrown_code([&] { benes_permute(Word::make(0, 8), cfg); }) == Errc::kWidthMismatch);
    }
}

TEST_SUITE("shift") {
    TEST_CASE("all modes match direct expressions across widths and amounts") {
        std::mt19937_64 rng(0x5EEDBEEFULL);
        for (int w : {8, 16, 23, 32, 64}) {
            const uint64_t mask = width_mask(w);
            for (int iter = 0; iter < 40; ++iter) {
                uint64_t v = rng() & mask;
                for (int k = 0; k < w; ++k) {
                    Word x = Word::make(v, w);
                    CHECK(barrel_shift(x, k, ShiftMode::kLogicalLeft).value == ((v << k) & mask));
                    CHECK(barrel_shift(x, k, ShiftMode::kLogicalRight).value == (v >> k));

                    uint64_t rot_l = k ? (((v << k) | (v >> (w - k))) & mask) : v;
                    uint64_t rot_r = k ? (((v >> k) | (v << (w - k))) & mask) : v;
                    CHECK(barrel_shift(x, k, ShiftMode::kRotateLeft).value == rot_l);
                    CHECK(barrel_shift(x, k, ShiftMode::kRotateRight).value == rot_r);

                    uint64_t sign = (v >> (w - 1)) & 1;
                    uint64_t fill = (sign && k) ? (mask & ~(mask >> k)) : 0;
                    CHECK(barrel_shift(x, k, ShiftMode::kArithRight).value == ((v >> k) | fill));
                }
            }
        }
    }

    TEST_CASE("arithmetic right replicates the word sign bit") {
        CHECK(barrel_shift(Word::make(0x80, 8), 3, ShiftMode::kArithRight).value == 0xF0);
        CHECK(barrel_shift(Word::make(0x40, 8), 3, ShiftMode::kArithRight).value == 0x08);
        CHECK(barrel_shift(Word::make(0x400000, 23), 4, ShiftMode::kArithRight).value == 0x7C0000);
    }

    TEST_CASE("rotating by k then width-k is the identity") {
        std::mt19937_64 rng(77);
        for (int w : {8, 23, 64}) {
            for (int k = 1; k < w; ++k) {
                Word x = Word::wrap(rng(), w);
                Word mid = barrel_shift(x, k, ShiftMode::kRotateLeft);
                CHECK(barrel_shift(mid, w - k, ShiftMode::kRotateLeft) == x);
                CHECK(barrel_shift(mid, k, ShiftMode::kRotateRight) == x);
            }
        }
    }

    TEST_CASE("rejects out-of-range amounts") {
        Word x = Word::make(1, 8);
        CHECK(thrown_code([&] { barrel_shift(x, 8, ShiftMode::kLogicalLeft); }) == Errc::kBadShiftAmount);
        CHECK(thrown_code([&] { barrel_shift(x, -1, ShiftMode::kRotateLeft); }) == Errc::kBadShiftAmount);
    }
}

TEST_SUITE("logic") {
    TEST_CASE("gates match built-in operators") {
        std::mt19937_64 rng(0xAB);
        for (int w : {4, 8, 23, 32, 64}) {
            const uint64_t mask = width_mask(w);
            for (int iter = 0; iter < 200; ++iter) {
                uint64_t a = rng() & mask, b = rng() & mask;
                Word wa = Word::make(a, w), wb = Word::make(b, w);
                CHECK(logic_op(wa, wb, LogicOp::kXor).value == (a ^ b));
                CHECK(logic_op(wa, wb, LogicOp::kAnd).value == (a & b));
                CHECK(logic_op(wa, wb, LogicOp::kOr).value == (a | b));
                CHECK(logic_op(wa, wb, LogicOp::kNot).value == (~a & mask));
                CHECK(logic_op(wa, wb, LogicOp::kNand).value == (~(a & b) & mask));
                CHECK(logic_op(wa, wb, LogicOp::kNor).value == (~(a | b) & mask));
            }
        }
        CHECK(thrown_code([] {
            logic_op(Word::make(1, 8), Word::make(1, 16), LogicOp::kXor);
        }) == Errc::kWidthMismatch);
    }
}

TEST_SUITE("lanes") {
    TEST_CASE("lane add and sub wrap per lane") {
        std::mt19937_64 rng(0xC0FFEE);
        struct Cfg { int w, lane; };
        for (Cfg c : {Cfg{64, 8}, Cfg{32, 8}, Cfg{32, 16}, Cfg{64, 16}, Cfg{16, 4}, Cfg{32, 32}}) {
            const uint64_t lane_mask = width_mask(c.lane);
            for (int iter = 0; iter < 300; ++iter) {
                uint64_t a = rng() & width_mask(c.w), b = rng() & width_mask(c.w);
                uint64_t want_add = 0, want_sub = 0;
                for (int off = 0; off < c.w; off += c.lane) {
                    uint64_t la = (a >> off) & lane_mask, lb = (b >> off) & lane_mask;
                    want_add |= ((la + lb) & lane_mask) << off;
                    want_sub |= ((la - lb) & lane_mask) << off;
                }
                CHECK(lane_add(Word::make(a, c.w), Word::make(b, c.w), c.lane).value == want_add);
                CHECK(lane_sub(Word::make(a, c.w), Word::make(b, c.w), c.lane).value == want_sub);
            }
        }
    }

    TEST_CASE("multiplication mod 65537 with the zero-means-65536 convention") {
        auto ref = [](uint32_t a, uint32_t b) -> uint16_t {
            uint64_t ra = a ? a : 65536, rb = b ? b : 65536;
            uint64_t m = (ra * rb) % 65537;
            return static_cast<uint16_t>(m == 65536 ? 0 : m);
        };
        CHECK(mul_mod65537(0, 0) == 1);       // 65536 * 65536 = (-1)(-1) = 1
        CHECK(mul_mod65537(0, 1) == 0);       // 65536 stays 65536
        CHECK(mul_mod65537(1, 1) == 1);
        CHECK(mul_mod65537(0x8000, 2) == 0);  // 65536 again
        std::mt19937_64 rng(0x1DEA);
        for (uint32_t b = 0; b < 65536; ++b) {
            CHECK(mul_mod65537(0, static_cast<uint16_t>(b)) == ref(0, b));
            CHECK(mul_mod65537(12345, static_cast<uint16_t>(b)) == ref(12345, b));
        }
        for (int iter = 0; iter < 20000; ++iter) {
            uint16_t a = static_cast<uint16_t>(rng()), b = static_cast<uint16_t>(rng());
            CHECK(mul_mod65537(a, b) == ref(a, b));
        }
    }

    TEST_CASE("carry-less lane multiply matches shift-and-add reference") {
        auto ref = [](uint8_t a, uint8_t b, uint8_t poly) -> uint8_t {
            uint8_t r = 0;
            for (int i = 0; i < 8; ++i) {
                if (b & 1) r ^= a;
                bool hi = (a & 0x80) != 0;
                a = static_cast<uint8_t>(a << 1);
                if (hi) a ^= poly;
                b >>= 1;
            }
            return r;
        };
        for (uint8_t c : {1, 2, 3, 9, 11, 13, 14}) {
            for (int v = 0; v < 256; v += 4) {
                uint64_t packed = 0, want = 0;
                for (int lane = 0; lane < 4; ++lane) {
                    uint8_t byte = static_cast<uint8_t>(v + lane);
                    packed |= static_cast<uint64_t>(byte) << (8 * lane);
                    want |= static_cast<uint64_t>(ref(byte, c, 0x1B)) << (8 * lane);
                }
                CHECK(lane_gf_mul(Word::make(packed, 32), c, 0x1B).value == want);
            }
        }
        // A different reduction polynomial must change the result accordingly.
        CHECK(lane_gf_mul(Word::make(0x80, 8), 2, 0x1B).value == ref(0x80, 2, 0x1B));
        CHECK(lane_gf_mul(Word::make(0x80, 8), 2, 0x4D).value == ref(0x80, 2, 0x4D));
    }
}

TEST_SUITE("sbox") {
    // FIPS-197 byte substitution table, used here purely as a well-known
    // reference pattern for table plumbing.
    static const uint8_t kAesSbox[256] = {
        0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
        0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
        0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
        0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
        0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
        0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
        0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
        0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
        0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
        0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
        0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
        0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
        0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
        0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
        0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
        0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16};

    TEST_CASE("byte-lane substitution") {
        SBoxTable t = SBoxTable::from_array(kAesSbox);
        CHECK(sbox_lookup(Word::make(0x53, 8), t).value == 0xED);
        CHECK(sbox_lookup(Word::make(0x00, 8), t).value == 0x63);
        // Each byte lane of a wide word is substituted independently.
        Word in = Word::make(0x0001'5363'00FF'10CAULL, 64);
        uint64_t want = 0;
        for (int lane = 0; lane < 8; ++lane)
            want |= static_cast<uint64_t>(kAesSbox[(in.value >> (8 * lane)) & 0xFF]) << (8 * lane);
        CHECK(sbox_lookup(in, t).value == want);
        CHECK(thrown_code([&] { sbox_lookup(Word::make(0, 23), t); }) == Errc::kBadWidth);
    }

    TEST_CASE("nibble boxes index through the zero-padded low half") {
        std::array<uint8_t, 16> box{};
        for (int i = 0; i < 16; ++i) box[i] = static_cast<uint8_t>(15 - i);
        SBoxTable t = SBoxTable::from_nibble_box(box);
        CHECK(sbox_lookup(Word::make(0x3, 4), t).value == 12);
        CHECK(sbox_lookup(Word::make(0xF, 4), t).value == 0);
        for (int i = 0; i < 256; ++i) CHECK(t.entries[i] == box[i & 15]);
    }

    TEST_CASE("hex file round trip") {
        SBoxTable t = SBoxTable::from_array(kAesSbox);
        auto path = (std::filesystem::temp_directory_path() / "fv_sbox_roundtrip.hex").string();
        save_sbox_hex(t, path);
        SBoxTable loaded = load_sbox_hex(path);
        CHECK(loaded.entries == t.entries);
        std::remove(path.c_str());
        CHECK(thrown_code([] { load_sbox_hex("/nonexistent/path/x.hex"); }) == Errc::kIoError);
    }
}

TEST_SUITE("limbint") {
    static LimbInt random_int(std::mt19937_64& rng, int max_limbs) {
        int n = 1 + static_cast<int>(rng() % max_limbs);
        std::vector<uint64_t> limbs(n);
        for (auto& l : limbs) {
            // Bias toward corner-case limb values to stress carries/borrows.
            switch (rng() % 5) {
                case 0: l = 0; break;
                case 1: l = ~0ULL; break;
                case 2: l = 1; break;
                case 3: l = 1ULL << 63; break;
                default: l = rng();
            }
        }
        return LimbInt::from_limbs(std::move(limbs));
    }

    TEST_CASE("hex and byte serialization round trips") {
        CHECK(LimbInt().to_hex() == "0");
        CHECK(LimbInt::from_hex("0").is_zero());
        CHECK(LimbInt::from_hex("00000000").is_zero());
        CHECK(LimbInt::from_hex("deadbeef").low_u64() == 0xdeadbeefULL);
        CHECK(LimbInt::from_hex("DeadBeef").low_u64() == 0xdeadbeefULL);
        CHECK(LimbInt::from_u64(0xdeadbeef).to_hex() == "deadbeef");

        std::mt19937_64 rng(0x5E71A1);
        for (int iter = 0; iter < 500; ++iter) {
            LimbInt x = random_int(rng, 6);
            CHECK(LimbInt::from_hex(x.to_hex()) == x);
            auto bytes = x.to_bytes_be();
            CHECK(LimbInt::from_bytes_be(bytes) == x);
            auto padded = x.to_bytes_be(70);
            CHECK(padded.size() == 70);
            CHECK(LimbInt::from_bytes_be(padded) == x);
        }
        CHECK(thrown_code([] { LimbInt::from_hex("12g4"); }) == Errc::kBadConfig);
    }

    TEST_CASE("known anchors for arithmetic") {
        LimbInt max64 = LimbInt::from_u64(~0ULL);
        CHECK(LimbInt::mul(max64, max64).to_hex() == "fffffffffffffffe0000000000000001");
        CHECK(LimbInt::add(max64, LimbInt::from_u64(1)).to_hex() == "10000000000000000");
        LimbInt b128 = LimbInt::from_u64(1).shl(128);
        CHECK(LimbInt::sub(b128, LimbInt::from_u64(1)).to_hex() ==
              "ffffffffffffffffffffffffffffffff");
        CHECK(LimbInt::from_u64(1).shl(200).shr(200) == LimbInt::from_u64(1));
        CHECK(LimbInt::from_u64(12345).bit_length() == 14);
        CHECK(thrown_code([] { LimbInt::sub(LimbInt::from_u64(1), LimbInt::from_u64(2)); }) ==
              Errc::kReductionDomain);
        CHECK(thrown_code([] { LimbInt::divmod(LimbInt::from_u64(1), LimbInt()); }) ==
              Errc::kDivideByZero);
    }

    TEST_CASE("division satisfies u == q*v + r with r < v") {
        std::mt19937_64 rng(0xD1D1D0);
        for (int iter = 0; iter < 12000; ++iter) {
            LimbInt u = random_int(rng, 8);
            LimbInt v = random_int(rng, 5);
            if (v.is_zero()) v = LimbInt::from_u64(1);
            auto [q, r] = LimbInt::divmod(u, v);
            CHECK(LimbInt::cmp(r, v) < 0);
            CHECK(LimbInt::add(LimbInt::mul(q, v), r) == u);
        }
    }

    TEST_CASE("division estimate-correction corner cases") {
        // Shapes engineered so the per-digit quotient estimate overshoots and
        // the add-back branch runs.
        auto check_pair = [](const LimbInt& u, const LimbInt& v) {
            auto [q, r] = LimbInt::divmod(u, v);
            CHECK(LimbInt::cmp(r, v) < 0);
            CHECK(LimbInt::add(LimbInt::mul(q, v), r) == u);
        };
        check_pair(LimbInt::from_limbs({3, 0, 1ULL << 63}),
                   LimbInt::from_limbs({1, 1ULL << 63}));
        check_pair(LimbInt::from_limbs({3, 0, 1ULL << 15}),
                   LimbInt::from_limbs({1, 1ULL << 15}));
        check_pair(LimbInt::from_limbs({0, ~0ULL - 1, 1ULL << 63}),
                   LimbInt::from_limbs({~0ULL, 1ULL << 63}));
        check_pair(LimbInt::from_limbs({0, 0, 0x8000000000000000ULL}),
                   LimbInt::from_limbs({~0ULL, 0x8000000000000000ULL}));
    }

    TEST_CASE("reduction context agrees with long division across modulus classes") {
        std::mt19937_64 rng(0xBA88E77);
        int checked = 0;

        auto stress = [&](const LimbInt& m, int iters) {
            ModContext ctx = ModContext::make(m);
            int k = static_cast<int>(m.limb_count());
            for (int i = 0; i < iters; ++i) {
                std::vector<uint64_t> limbs(2 * k);
                for (auto& l : limbs) l = rng();
                // Trim to keep x strictly below b^2k (full 2k limbs allowed).
                LimbInt x = LimbInt::from_limbs(std::move(limbs));
                CHECK(ctx.reduce(x) == LimbInt::divmod(x, m).second);
                ++checked;
            }
            // Reduced inputs pass through untouched.
            LimbInt small = LimbInt::divmod(random_int(rng, k), m).second;
            CHECK(ctx.reduce(small) == small);
        };

        // Single-limb moduli.
        for (int i = 0; i < 30; ++i) stress(LimbInt::from_u64(rng() | 2), 100);
        // Limb-boundary moduli straddling 2^64 and 2^128.
        for (uint64_t eps : {1ULL, 2ULL, 59ULL, 12345ULL}) {
            stress(LimbInt::add(LimbInt::from_u64(1).shl(64), LimbInt::from_u64(eps)), 300);
            stress(LimbInt::sub(LimbInt::from_u64(1).shl(64), LimbInt::from_u64(eps)), 300);
            stress(LimbInt::add(LimbInt::from_u64(1).shl(128), LimbInt::from_u64(eps)), 300);
            stress(LimbInt::sub(LimbInt::from_u64(1).shl(128), LimbInt::from_u64(eps)), 300);
        }
        // Dense random moduli, 2 to 6 limbs.
        for (int limbs = 2; limbs <= 6; ++limbs) {
            for (int i = 0; i < 8; ++i) {
                std::vector<uint64_t> ml(limbs);
                for (auto& l : ml) l = rng();
                ml.back() |= 1ULL << 63;  // keep the limb count exact
                stress(LimbInt::from_limbs(std::move(ml)), 60);
            }
        }
        // Sparse moduli: 2^k - small and 2^k + small.
        for (int kbits : {127, 192, 255, 384, 521}) {
            stress(LimbInt::sub(LimbInt::from_u64(1).shl(kbits), LimbInt::from_u64(19)), 150);
            stress(LimbInt::add(LimbInt::from_u64(1).shl(kbits), LimbInt::from_u64(19)), 150);
        }
        CHECK(checked >= 10000);

        // Degenerate modulus 1: everything reduces to zero.
        ModContext one = ModContext::make(LimbInt::from_u64(1));
        CHECK(one.reduce(LimbInt::from_u64(123456)).is_zero());
    }

    TEST_CASE("reduction context rejects out-of-domain operands") {
        LimbInt m = LimbInt::from_hex("ffffffffffffffffffffffff13");
        ModContext ctx = ModContext::make(m);
        LimbInt too_big = LimbInt::from_u64(1).shl(128 * static_cast<int>(m.limb_count()));
        CHECK(thrown_code([&] { ctx.reduce(too_big); }) == Errc::kReductionDomain);
        CHECK(thrown_code([&] {
            mod_arith(m, LimbInt::from_u64(1), m, ModOp::kAdd);
        }) == Errc::kReductionDomain);
    }

    TEST_CASE("modular exponentiation matches a word-sized reference") {
        // Reference computed entirely in 128-bit host arithmetic.
        auto pow_ref = [](uint64_t base, uint64_t exp, uint64_t mod) -> uint64_t {
            unsigned __int128 acc = 1, b = base % mod;
            while (exp) {
                if (exp & 1) acc = (acc * b) % mod;
                b = (static_cast<unsigned __int128>(b) * b) % mod;
                exp >>= 1;
            }
            return static_cast<uint64_t>(acc);
        };
        std::mt19937_64 rng(0xE0D);
        for (int iter = 0; iter < 50; ++iter) {
            uint64_t m = rng() | (1ULL << 63) | 1;
            uint64_t b = rng() % m, e = rng();
            ModContext ctx = ModContext::make(LimbInt::from_u64(m));
            CHECK(ctx.pow(LimbInt::from_u64(b), LimbInt::from_u64(e)).low_u64() ==
                  pow_ref(b, e, m));
        }
    }

    TEST_CASE("inversion by exponentiation over prime moduli") {
        // 2^64 - 59 and the 256-bit prime 2^256 - 2^224 + 2^192 + 2^96 - 1.
        for (const char* mh : {"ffffffffffffffc5",
                               "ffffffff00000001000000000000000000000000ffffffffffffffffffffffff"}) {
            LimbInt p = LimbInt::from_hex(mh);
            ModContext ctx = ModContext::make(p);
            std::mt19937_64 rng(0x1Af);
            for (int iter = 0; iter < 8; ++iter) {
                LimbInt a = LimbInt::divmod(random_int(rng, static_cast<int>(p.limb_count())), p).second;
                if (a.is_zero()) a = LimbInt::from_u64(7);
                LimbInt ai = ctx.inv(a);
                CHECK(ctx.mul(a, ai) == LimbInt::from_u64(1));
            }
        }
    }

    TEST_CASE("reduced-domain convenience wrapper") {
        LimbInt m = LimbInt::from_u64(1000003);
        CHECK(mod_arith(LimbInt::from_u64(999999), LimbInt::from_u64(10), m, ModOp::kAdd)
                  .low_u64() == 6);
        CHECK(mod_arith(LimbInt::from_u64(999999), LimbInt::from_u64(999999), m, ModOp::kMul)
                  .low_u64() == (999999ULL * 999999ULL) % 1000003ULL);
    }
}
