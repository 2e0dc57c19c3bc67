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
 * @file ldpc.cpp
 * @brief QC-LDPC construction, systematic encoder, BSC injector and the
 *        GDBF hard-decision decoder.
 *
 * Circulant convention: a block with shift s maps check (i, r) onto bit
 * (c, (r + s) mod z).  Equivalently, bit (c, j) feeds check (i, (j - s) mod z)
 * for every row i where column c has a block.
 *
 * The no-4-cycle constraint is tracked per row pair: two columns close a
 * 4-cycle over rows (i1, i2) exactly when their shift differences
 * (s_i1 - s_i2) mod z collide, so construction keeps one set of spent
 * differences per pair and rejects colliding columns.
 */

#include "fv/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "fv/error.hpp"

namespace fv {

// Inverse of the parity submatrix, row-major bit rows; parity bits come out
// of one bit-matrix product against the data syndrome.
struct LdpcEncoderTable {
    int m = 0;
    int words = 0;  // 64-bit words per row
    std::vector<uint64_t> inv;
};

namespace {

constexpr uint64_t kPageSeed = 0x70616765u;
constexpr uint64_t kToySeed = 0x746f79u;
constexpr int kParityColWeight = 3;  // odd, or the rows of H_p sum to zero

void require_valid(const QcLdpcCode& code) {
    if (code.z < 2 || code.block_rows < 3 || code.block_cols <= code.block_rows)
        raise(Errc::kBadConfig, "ldpc: bad code dimensions");
    if (int(code.shifts.size()) != code.block_rows)
        raise(Errc::kBadConfig, "ldpc: shift table row count mismatch");
    for (const auto& row : code.shifts) {
        if (int(row.size()) != code.block_cols)
            raise(Errc::kBadConfig, "ldpc: shift table column count mismatch");
        for (int s : row)
            if (s < -1 || s >= code.z)
                raise(Errc::kBadConfig, "ldpc: shift out of range");
    }
}

// Bit-expand the parity submatrix and Gauss-Jordan it against an identity;
// returns nullptr when singular.
std::shared_ptr<const LdpcEncoderTable> invert_parity(const QcLdpcCode& code) {
    const int z = code.z;
    const int mb = code.block_rows;
    const int d = code.block_cols - mb;
    const int m = code.parity_bits();
    const int W = (m + 63) / 64;
    std::vector<uint64_t> a(size_t(m) * W, 0), inv(size_t(m) * W, 0);
    for (int ib = 0; ib < mb; ++ib)
        for (int cb = 0; cb < mb; ++cb) {
            int sh = code.shifts[ib][d + cb];
            if (sh < 0) continue;
            for (int r = 0; r < z; ++r) {
                int row = ib * z + r;
                int col = cb * z + (r + sh) % z;
                a[size_t(row) * W + col / 64] ^= 1ULL << (col % 64);
            }
        }
    for (int i = 0; i < m; ++i) inv[size_t(i) * W + i / 64] |= 1ULL << (i % 64);

    for (int col = 0; col < m; ++col) {
        int piv = -1;
        for (int row = col; row < m; ++row)
            if (a[size_t(row) * W + col / 64] >> (col % 64) & 1) {
                piv = row;
                break;
            }
        if (piv < 0) return nullptr;
        if (piv != col) {
            std::swap_ranges(a.begin() + size_t(piv) * W, a.begin() + size_t(piv + 1) * W,
                             a.begin() + size_t(col) * W);
            std::swap_ranges(inv.begin() + size_t(piv) * W,
                             inv.begin() + size_t(piv + 1) * W,
                             inv.begin() + size_t(col) * W);
        }
        for (int row = 0; row < m; ++row) {
            if (row == col) continue;
            if (!(a[size_t(row) * W + col / 64] >> (col % 64) & 1)) continue;
            // Left of the pivot word is already eliminated.
            for (int w = col / 64; w < W; ++w)
                a[size_t(row) * W + w] ^= a[size_t(col) * W + w];
            for (int w = 0; w < W; ++w)
                inv[size_t(row) * W + w] ^= inv[size_t(col) * W + w];
        }
    }
    auto tab = std::make_shared<LdpcEncoderTable>();
    tab->m = m;
    tab->words = W;
    tab->inv = std::move(inv);
    return tab;
}

std::optional<QcLdpcCode> try_construct(int z, int block_rows, int block_cols,
                                        int data_col_weight, uint64_t seed) {
    QcLdpcCode code;
    code.z = z;
    code.block_rows = block_rows;
    code.block_cols = block_cols;
    code.shifts.assign(block_rows, std::vector<int>(block_cols, -1));

    const int d = block_cols - block_rows;

    // Spent shift-differences per (row, row) pair; a collision is a 4-cycle.
    std::vector<std::set<int>> used(size_t(block_rows) * size_t(block_rows));
    auto try_claim = [&](const std::vector<int>& rows, const std::vector<int>& shs) {
        std::vector<std::pair<size_t, int>> claims;
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = a + 1; b < rows.size(); ++b) {
                size_t pair = size_t(rows[a]) * size_t(block_rows) + size_t(rows[b]);
                int diff = ((shs[a] - shs[b]) % z + z) % z;
                if (used[pair].count(diff)) return false;
                claims.emplace_back(pair, diff);
            }
        for (auto [pair, diff] : claims) used[pair].insert(diff);
        return true;
    };

    // Spread every column over the least-loaded rows with random shifts,
    // rejection-sampled against the 4-cycle structure.
    std::mt19937_64 rng(seed);
    std::vector<int> row_load(block_rows, 0);
    std::vector<int> order(block_rows);
    std::iota(order.begin(), order.end(), 0);
    for (int c = 0; c < block_cols; ++c) {
        int weight = c < d ? data_col_weight : std::min(kParityColWeight, block_rows);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 10000) return std::nullopt;
            std::shuffle(order.begin(), order.end(), rng);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return row_load[a] < row_load[b]; });
            std::vector<int> rows(order.begin(), order.begin() + weight);
            std::sort(rows.begin(), rows.end());
            std::vector<int> shs(weight);
            for (auto& sh : shs) sh = int(rng() % uint64_t(z));
            if (!try_claim(rows, shs)) continue;
            for (size_t idx = 0; idx < rows.size(); ++idx) {
                code.shifts[rows[idx]][c] = shs[idx];
                ++row_load[rows[idx]];
            }
            break;
        }
    }
    return code;
}

}  // namespace

QcLdpcCode QcLdpcCode::build(int z, int block_rows, int block_cols,
                             int data_col_weight, uint64_t seed) {
    if (z < 2 || block_rows < 3 || block_cols <= block_rows)
        raise(Errc::kBadConfig, "ldpc: bad build dimensions");
    if (data_col_weight < 2 || data_col_weight > block_rows)
        raise(Errc::kBadConfig, "ldpc: data column weight out of range");
    for (int round = 0; round < 64; ++round) {
        auto code = try_construct(z, block_rows, block_cols, data_col_weight,
                                  seed + uint64_t(round));
        if (!code) continue;
        auto tab = invert_parity(*code);
        if (!tab) continue;  // singular parity part, re-roll
        code->encoder_cache = std::move(tab);
        return *std::move(code);
    }
    raise(Errc::kBadConfig, "ldpc: no invertible arrangement found");
}

const QcLdpcCode& QcLdpcCode::page_code() {
    // 4 KB payload (k = 32768) in 291 blocks of z = 128: n = 37248.
    static const QcLdpcCode code = build(128, 35, 291, 4, kPageSeed);
    return code;
}

const QcLdpcCode& QcLdpcCode::toy_code() {
    static const QcLdpcCode code = build(8, 4, 8, 3, kToySeed);
    return code;
}

std::string QcLdpcCode::to_text() const {
    std::ostringstream out;
    out << "qc-ldpc 1\n";
    out << "z " << z << "\n";
    out << "rows " << block_rows << "\n";
    out << "cols " << block_cols << "\n";
    for (const auto& row : shifts) {
        for (size_t c = 0; c < row.size(); ++c)
            out << (c ? " " : "") << row[c];
        out << "\n";
    }
    return out.str();
}

QcLdpcCode QcLdpcCode::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (!in || tag != "qc-ldpc" || version != 1)
        raise(Errc::kBadConfig, "ldpc: not a shift-table file");
    QcLdpcCode code;
    auto field = [&](const char* name) {
        std::string key;
        int value = 0;
        in >> key >> value;
        if (!in || key != name)
            raise(Errc::kBadConfig, std::string("ldpc: expected field ") + name);
        return value;
    };
    code.z = field("z");
    code.block_rows = field("rows");
    code.block_cols = field("cols");
    if (code.z < 2 || code.block_rows < 1 || code.block_cols < 1)
        raise(Errc::kBadConfig, "ldpc: bad header values");
    code.shifts.assign(code.block_rows, std::vector<int>(code.block_cols, -1));
    for (auto& row : code.shifts)
        for (auto& s : row) {
            in >> s;
            if (!in) raise(Errc::kBadConfig, "ldpc: truncated shift table");
        }
    require_valid(code);
    return code;
}

BitVec ldpc_encode(std::span<const uint8_t> data, const QcLdpcCode& code) {
    require_valid(code);
    if (code.k() % 8 != 0 || data.size() != size_t(code.k() / 8))
        raise(Errc::kWidthMismatch, "ldpc: data must be exactly k/8 bytes");

    // Codes from build() carry the inverse already; imported ones get it
    // lazily, once.
    std::shared_ptr<const LdpcEncoderTable> tab = code.encoder_cache;
    if (!tab) {
        static std::mutex gate;
        std::lock_guard<std::mutex> lk(gate);
        if (!code.encoder_cache) {
            auto fresh = invert_parity(code);
            if (!fresh)
                raise(Errc::kBadConfig, "ldpc: parity submatrix not invertible");
            code.encoder_cache = std::move(fresh);
        }
        tab = code.encoder_cache;
    }

    const int z = code.z;
    const int mb = code.block_rows;
    const int d = code.block_cols - mb;
    const int m = code.parity_bits();
    const int W = tab->words;

    BitVec cw(code.n(), 0);
    for (int b = 0; b < code.k(); ++b)
        cw[b] = (data[b >> 3] >> (b & 7)) & 1;

    // Syndrome of the data part, packed for the bit-matrix product.
    std::vector<uint64_t> s(W, 0);
    for (int i = 0; i < mb; ++i)
        for (int c = 0; c < d; ++c) {
            int sh = code.shifts[i][c];
            if (sh < 0) continue;
            for (int r = 0; r < z; ++r) {
                int bit = i * z + r;
                s[bit / 64] ^= uint64_t(cw[c * z + (r + sh) % z]) << (bit % 64);
            }
        }

    // p = inv(H_p) * s, one parity-of-AND per row.
    for (int i = 0; i < m; ++i) {
        uint64_t acc = 0;
        const uint64_t* row = tab->inv.data() + size_t(i) * W;
        for (int w = 0; w < W; ++w) acc ^= row[w] & s[w];
        cw[code.k() + i] = uint8_t(std::popcount(acc) & 1);
    }
    return cw;
}

BitVec ldpc_syndrome(const BitVec& word, const QcLdpcCode& code) {
    require_valid(code);
    if (int(word.size()) != code.n())
        raise(Errc::kWidthMismatch, "ldpc: word length != n");
    const int z = code.z;
    BitVec syn(code.parity_bits(), 0);
    for (int i = 0; i < code.block_rows; ++i)
        for (int c = 0; c < code.block_cols; ++c) {
            int sh = code.shifts[i][c];
            if (sh < 0) continue;
            for (int r = 0; r < z; ++r) syn[i * z + r] ^= word[c * z + (r + sh) % z];
        }
    return syn;
}

BitVec inject_errors(const BitVec& codeword, const ChannelModel& channel) {
    if (!(channel.raw_ber >= 0.0) || channel.raw_ber >= 0.5)
        raise(Errc::kBadConfig, "channel: raw_ber must lie in [0, 0.5)");
    BitVec noisy = codeword;
    std::mt19937_64 rng(channel.seed);
    for (auto& bit : noisy) {
        // Raw engine output keeps the pattern identical across platforms.
        double u = double(rng() >> 11) * 0x1.0p-53;
        if (u < channel.raw_ber) bit ^= 1;
    }
    return noisy;
}

DecodeResult gdbf_decode(const BitVec& received, const QcLdpcCode& code,
                         int max_iter) {
    require_valid(code);
    if (int(received.size()) != code.n())
        raise(Errc::kWidthMismatch, "ldpc: received length != n");
    if (max_iter < 0) raise(Errc::kBadConfig, "ldpc: negative iteration budget");

    const int z = code.z;
    const int n = code.n();
    const int m = code.parity_bits();

    // CSR adjacency in both directions.
    std::vector<int> bit_off(n + 1, 0), chk_off(m + 1, 0);
    for (int i = 0; i < code.block_rows; ++i)
        for (int c = 0; c < code.block_cols; ++c)
            if (code.shifts[i][c] >= 0) {
                for (int j = 0; j < z; ++j) ++bit_off[c * z + j + 1];
                for (int r = 0; r < z; ++r) ++chk_off[i * z + r + 1];
            }
    for (int b = 0; b < n; ++b) bit_off[b + 1] += bit_off[b];
    for (int x = 0; x < m; ++x) chk_off[x + 1] += chk_off[x];
    std::vector<int> bit_chk(bit_off[n]), chk_bit(chk_off[m]);
    {
        std::vector<int> bfill(bit_off.begin(), bit_off.end() - 1);
        std::vector<int> cfill(chk_off.begin(), chk_off.end() - 1);
        for (int i = 0; i < code.block_rows; ++i)
            for (int c = 0; c < code.block_cols; ++c) {
                int sh = code.shifts[i][c];
                if (sh < 0) continue;
                for (int r = 0; r < z; ++r) {
                    int chk = i * z + r;
                    int bit = c * z + (r + sh) % z;
                    bit_chk[bfill[bit]++] = chk;
                    chk_bit[cfill[chk]++] = bit;
                }
            }
    }

    BitVec x = received;
    std::vector<uint8_t> unsat(m, 0);
    std::vector<int> unsat_per_bit(n, 0);
    std::set<int> unsat_checks;
    for (int chk = 0; chk < m; ++chk) {
        uint8_t parity = 0;
        for (int e = chk_off[chk]; e < chk_off[chk + 1]; ++e) parity ^= x[chk_bit[e]];
        if (parity) {
            unsat[chk] = 1;
            unsat_checks.insert(chk);
            for (int e = chk_off[chk]; e < chk_off[chk + 1]; ++e)
                ++unsat_per_bit[chk_bit[e]];
        }
    }

    DecodeResult res;
    std::set<int> differ;  // bits currently disagreeing with the channel
    std::vector<int> cand;
    for (int iter = 0; iter < max_iter && !unsat_checks.empty(); ++iter) {
        // Candidates: every bit that can score below the clean baseline of
        // +1, i.e. bits touching an unsatisfied check or disagreeing with
        // the received word.  Sorted so ties resolve to the lowest index.
        cand.clear();
        for (int chk : unsat_checks)
            for (int e = chk_off[chk]; e < chk_off[chk + 1]; ++e)
                cand.push_back(chk_bit[e]);
        cand.insert(cand.end(), differ.begin(), differ.end());
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

        int best = cand.front();
        int best_score = 2;  // above any attainable score
        for (int b : cand) {
            // Agreement is an indicator (1 matches the channel, 0 not), so a
            // previously corrected bit rests at 0 while any error still
            // touching two checks sits at -1 or below; a +/-1 agreement term
            // would tie them and deadlock the lowest-index rule.
            int score = (x[b] == received[b] ? 1 : 0) - unsat_per_bit[b];
            if (score < best_score) {
                best_score = score;
                best = b;
            }
        }

        x[best] ^= 1;
        if (!differ.erase(best)) differ.insert(best);
        ++res.bits_flipped;
        res.iterations_used = iter + 1;
        for (int e = bit_off[best]; e < bit_off[best + 1]; ++e) {
            int chk = bit_chk[e];
            int delta = unsat[chk] ? -1 : +1;
            unsat[chk] ^= 1;
            if (delta > 0)
                unsat_checks.insert(chk);
            else
                unsat_checks.erase(chk);
            for (int f = chk_off[chk]; f < chk_off[chk + 1]; ++f)
                unsat_per_bit[chk_bit[f]] += delta;
        }
    }

    res.ok = unsat_checks.empty();
    if (res.ok && code.k() % 8 == 0) {
        res.data.assign(code.k() / 8, 0);
        for (int b = 0; b < code.k(); ++b)
            res.data[b >> 3] |= uint8_t(x[b] << (b & 7));
    }
    return res;
}

}  // namespace fv
