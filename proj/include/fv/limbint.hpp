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
 * @file limbint.hpp
 * @brief Unsigned multi-precision integers on little-endian 64-bit limbs,
 *        plus the Barrett reduction context used for modular arithmetic.
 *
 * The multiplier is plain schoolbook; the tree-structured hardware multiplier
 * it stands in for only changes cycle accounting, never values.  Division is
 * the classical normalized long division, kept as the independent reference
 * that the Barrett path is checked against.
 */

#ifndef FV_LIMBINT_HPP_
#define FV_LIMBINT_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fv {

class LimbInt {
  public:
    LimbInt() = default;  // zero

    static LimbInt from_u64(uint64_t v);
    static LimbInt from_hex(std::string_view hex);
    static LimbInt from_bytes_be(std::span<const uint8_t> bytes);

    std::string to_hex() const;
    // Big-endian bytes, left-padded with zeros to at least min_len.
    std::vector<uint8_t> to_bytes_be(size_t min_len = 0) const;

    bool is_zero() const { return limbs_.empty(); }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }
    size_t limb_count() const { return limbs_.size(); }
    uint64_t limb(size_t i) const { return i < limbs_.size() ? limbs_[i] : 0; }
    uint64_t low_u64() const { return limb(0); }
    int bit_length() const;
    int bit(int i) const { return static_cast<int>((limb(i / 64) >> (i % 64)) & 1); }

    static int cmp(const LimbInt& a, const LimbInt& b);
    bool operator==(const LimbInt& o) const { return limbs_ == o.limbs_; }
    bool operator<(const LimbInt& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const LimbInt& o) const { return cmp(*this, o) <= 0; }
    bool operator>(const LimbInt& o) const { return cmp(*this, o) > 0; }
    bool operator>=(const LimbInt& o) const { return cmp(*this, o) >= 0; }

    static LimbInt add(const LimbInt& a, const LimbInt& b);
    // Requires a >= b.
    static LimbInt sub(const LimbInt& a, const LimbInt& b);
    static LimbInt mul(const LimbInt& a, const LimbInt& b);
    // Quotient and remainder by normalized long division; r < v, u == q*v + r.
    static std::pair<LimbInt, LimbInt> divmod(const LimbInt& u, const LimbInt& v);

    LimbInt shl(int bits) const;
    LimbInt shr(int bits) const;

    // Direct limb access for construction; normalizes on return.
    static LimbInt from_limbs(std::vector<uint64_t> limbs);
    const std::vector<uint64_t>& limbs() const { return limbs_; }

  private:
    void normalize();
    std::vector<uint64_t> limbs_;  // little-endian, no trailing zero limbs
};

enum class ModOp { kAdd, kMul };

// Barrett reduction context: mu = floor(b^(2k) / m) for limb base b = 2^64
// and k the limb length of the modulus.  reduce() accepts any x < b^(2k).
struct ModContext {
    LimbInt m;
    LimbInt mu;
    int k = 0;

    static ModContext make(const LimbInt& m);

    LimbInt reduce(const LimbInt& x) const;
    LimbInt add(const LimbInt& a, const LimbInt& b) const;
    LimbInt sub(const LimbInt& a, const LimbInt& b) const;
    LimbInt mul(const LimbInt& a, const LimbInt& b) const;
    LimbInt pow(const LimbInt& base, const LimbInt& exp) const;
    // Fermat inversion; the modulus must be prime.
    LimbInt inv(const LimbInt& a) const;
};

// Reduced-domain modular arithmetic: both operands must already be < m.
LimbInt mod_arith(const LimbInt& a, const LimbInt& b, const LimbInt& m, ModOp op);

}  // namespace fv

#endif  // FV_LIMBINT_HPP_
