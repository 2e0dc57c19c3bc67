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
 * @file ldpc.hpp
 * @brief Quasi-cyclic LDPC codec for the in-NAND read path: systematic
 *        encoder plus a gradient-descent bit-flipping (GDBF) hard-decision
 *        decoder, with a seeded binary-symmetric channel for error injection.
 *
 * The parity-check matrix is a grid of z x z circulant blocks described by a
 * base matrix of shift values (-1 marks an all-zero block).  Columns are
 * grown under a no-4-cycle constraint — no two columns may meet in more than
 * one check — which makes any isolated bit error the unique minimum of the
 * GDBF score, repaired in one flip.  Parity columns carry odd weight so the
 * parity submatrix can be full rank; its inverse is computed once and cached
 * on the code, making encoding a sparse syndrome pass plus one bit-matrix
 * product.
 */

#ifndef FV_LDPC_HPP_
#define FV_LDPC_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fv {

struct LdpcEncoderTable;  // cached inverse of the parity submatrix

// One bit per element, value 0 or 1.  Bit b of a byte payload is
// (bytes[b >> 3] >> (b & 7)) & 1, i.e. LSB-first within each byte.
using BitVec = std::vector<uint8_t>;

struct QcLdpcCode {
    int z = 0;           // circulant size
    int block_rows = 0;  // parity blocks (base matrix rows)
    int block_cols = 0;  // codeword blocks (base matrix columns)
    // shifts[r][c] in [0, z) selects the circulant, -1 an all-zero block.
    // Columns [0, block_cols - block_rows) are data, the rest parity.
    std::vector<std::vector<int>> shifts;
    // Lazily built by the encoder; presets arrive with it populated.
    mutable std::shared_ptr<const LdpcEncoderTable> encoder_cache{};

    int n() const { return z * block_cols; }
    int k() const { return z * (block_cols - block_rows); }
    int parity_bits() const { return z * block_rows; }
    double rate() const { return double(k()) / double(n()); }

    // The full-page code protecting one 4 KB page buffer: z = 128,
    // k = 32768, n = 37248 (rate 0.88 up to circulant rounding).
    static const QcLdpcCode& page_code();
    // A 64-bit toy code (z = 8) small enough for exhaustive error sweeps.
    static const QcLdpcCode& toy_code();
    // Deterministic seeded construction used by both presets.  Data columns
    // get the requested weight, parity columns weight 3; seeds are retried
    // until the parity submatrix comes out invertible.
    static QcLdpcCode build(int z, int block_rows, int block_cols,
                            int data_col_weight, uint64_t seed);

    // Plain-text shift table, import/export round-trippable.
    std::string to_text() const;
    static QcLdpcCode from_text(const std::string& text);
};

struct ChannelModel {
    double raw_ber = 0.0;  // independent flip probability, in [0, 0.5)
    uint64_t seed = 0;
};

struct DecodeResult {
    bool ok = false;              // all parity checks satisfied on exit
    std::vector<uint8_t> data;    // k/8 bytes, valid when ok
    int iterations_used = 0;      // flip iterations performed
    int bits_flipped = 0;
};

// Systematic encode of k/8 data bytes into an n-bit codeword.
BitVec ldpc_encode(std::span<const uint8_t> data, const QcLdpcCode& code);

// Parity check results, one bit per check row; all-zero means codeword.
BitVec ldpc_syndrome(const BitVec& word, const QcLdpcCode& code);

// Each bit flipped independently with probability raw_ber; deterministic
// for a given seed.
BitVec inject_errors(const BitVec& codeword, const ChannelModel& channel);

// Hard-decision GDBF: per iteration, score every bit as (channel agreement
// indicator, weight 1) minus (number of unsatisfied adjacent checks) and
// flip the global minimum, lowest index on ties, until the syndrome clears
// or the iteration budget runs out.
DecodeResult gdbf_decode(const BitVec& received, const QcLdpcCode& code,
                         int max_iter = 30);

}  // namespace fv

#endif  // FV_LDPC_HPP_
