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

#include "fv/limbint.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "fv/error.hpp"

namespace fv {

using u128 = unsigned __int128;

void LimbInt::normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

LimbInt LimbInt::from_limbs(std::vector<uint64_t> limbs) {
    LimbInt r;
    r.limbs_ = std::move(limbs);
    r.normalize();
    return r;
}

LimbInt LimbInt::from_u64(uint64_t v) {
    LimbInt r;
    if (v) r.limbs_.push_back(v);
    return r;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

LimbInt LimbInt::from_hex(std::string_view hex) {
    LimbInt r;
    std::vector<int> nibbles;
    nibbles.reserve(hex.size());
    for (char c : hex) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        int n = hex_nibble(c);
        if (n < 0) raise(Errc::kBadConfig, "invalid hex digit in integer literal");
        nibbles.push_back(n);
    }
    // nibbles is big-endian; pack from the tail.
    r.limbs_.assign((nibbles.size() + 15) / 16, 0);
    for (size_t i = 0; i < nibbles.size(); ++i) {
        size_t pos = nibbles.size() - 1 - i;  // nibble index from LSB
        r.limbs_[pos / 16] |= static_cast<uint64_t>(nibbles[i]) << (4 * (pos % 16));
    }
    r.normalize();
    return r;
}

LimbInt LimbInt::from_bytes_be(std::span<const uint8_t> bytes) {
    LimbInt r;
    r.limbs_.assign((bytes.size() + 7) / 8, 0);
    for (size_t i = 0; i < bytes.size(); ++i) {
        size_t pos = bytes.size() - 1 - i;  // byte index from LSB
        r.limbs_[pos / 8] |= static_cast<uint64_t>(bytes[i]) << (8 * (pos % 8));
    }
    r.normalize();
    return r;
}

std::string LimbInt::to_hex() const {
    if (limbs_.empty()) return "0";
    static const char* kDigits = "0123456789abcdef";
    std::string s;
    s.reserve(limbs_.size() * 16);
    for (size_t i = limbs_.size(); i-- > 0;) {
        for (int shift = 60; shift >= 0; shift -= 4)
            s.push_back(kDigits[(limbs_[i] >> shift) & 0xF]);
    }
    size_t first = s.find_first_not_of('0');
    return s.substr(first);
}

std::vector<uint8_t> LimbInt::to_bytes_be(size_t min_len) const {
    size_t n = (static_cast<size_t>(bit_length()) + 7) / 8;
    size_t len = std::max(n, min_len);
    std::vector<uint8_t> out(len, 0);
    for (size_t i = 0; i < n; ++i)
        out[len - 1 - i] = static_cast<uint8_t>(limb(i / 8) >> (8 * (i % 8)));
    return out;
}

int LimbInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return static_cast<int>(limbs_.size() - 1) * 64 + (64 - std::countl_zero(limbs_.back()));
}

int LimbInt::cmp(const LimbInt& a, const LimbInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

LimbInt LimbInt::add(const LimbInt& a, const LimbInt& b) {
    LimbInt r;
    size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    r.limbs_.resize(n + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
        u128 s = static_cast<u128>(a.limb(i)) + b.limb(i) + carry;
        r.limbs_[i] = static_cast<uint64_t>(s);
        carry = static_cast<uint64_t>(s >> 64);
    }
    r.limbs_[n] = carry;
    r.normalize();
    return r;
}

LimbInt LimbInt::sub(const LimbInt& a, const LimbInt& b) {
    if (cmp(a, b) < 0) raise(Errc::kReductionDomain, "subtraction underflow");
    LimbInt r;
    r.limbs_.resize(a.limbs_.size(), 0);
    uint64_t borrow = 0;
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        u128 d = static_cast<u128>(a.limbs_[i]) - b.limb(i) - borrow;
        r.limbs_[i] = static_cast<uint64_t>(d);
        borrow = static_cast<uint64_t>(d >> 64) & 1;  // two's-complement wrap flags it
    }
    r.normalize();
    return r;
}

LimbInt LimbInt::mul(const LimbInt& a, const LimbInt& b) {
    if (a.is_zero() || b.is_zero()) return LimbInt();
    LimbInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            u128 cur = static_cast<u128>(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<uint64_t>(cur);
            carry = static_cast<uint64_t>(cur >> 64);
        }
        r.limbs_[i + b.limbs_.size()] = carry;
    }
    r.normalize();
    return r;
}

LimbInt LimbInt::shl(int bits) const {
    if (bits < 0) raise(Errc::kBadShiftAmount, "negative shift");
    if (is_zero() || bits == 0) return *this;
    int limb_shift = bits / 64, bit_shift = bits % 64;
    LimbInt r;
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        r.limbs_[i + limb_shift] |= limbs_[i] << bit_shift;
        if (bit_shift)
            r.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    r.normalize();
    return r;
}

LimbInt LimbInt::shr(int bits) const {
    if (bits < 0) raise(Errc::kBadShiftAmount, "negative shift");
    int limb_shift = bits / 64, bit_shift = bits % 64;
    if (limb_shift >= static_cast<int>(limbs_.size())) return LimbInt();
    LimbInt r;
    r.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (size_t i = 0; i < r.limbs_.size(); ++i) {
        r.limbs_[i] = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift && i + limb_shift + 1 < limbs_.size())
            r.limbs_[i] |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
    }
    r.normalize();
    return r;
}

std::pair<LimbInt, LimbInt> LimbInt::divmod(const LimbInt& u, const LimbInt& v) {
    if (v.is_zero()) raise(Errc::kDivideByZero, "division by zero");
    if (cmp(u, v) < 0) return {LimbInt(), u};

    // Single-limb divisor fast path.
    if (v.limbs_.size() == 1) {
        uint64_t d = v.limbs_[0];
        LimbInt q;
        q.limbs_.assign(u.limbs_.size(), 0);
        uint64_t rem = 0;
        for (size_t i = u.limbs_.size(); i-- > 0;) {
            u128 cur = (static_cast<u128>(rem) << 64) | u.limbs_[i];
            q.limbs_[i] = static_cast<uint64_t>(cur / d);
            rem = static_cast<uint64_t>(cur % d);
        }
        q.normalize();
        return {q, from_u64(rem)};
    }

    // Normalized long division, divisor of n >= 2 limbs.
    size_t n = v.limbs_.size();
    size_t m = u.limbs_.size() - n;
    int s = std::countl_zero(v.limbs_.back());
    LimbInt vn = v.shl(s);
    LimbInt un_sh = u.shl(s);
    std::vector<uint64_t> un(m + n + 1, 0);
    for (size_t i = 0; i < un_sh.limbs_.size(); ++i) un[i] = un_sh.limbs_[i];

    LimbInt q;
    q.limbs_.assign(m + 1, 0);
    const uint64_t vtop = vn.limbs_[n - 1];
    const uint64_t vsecond = vn.limbs_[n - 2];

    for (size_t j = m + 1; j-- > 0;) {
        u128 num = (static_cast<u128>(un[j + n]) << 64) | un[j + n - 1];
        u128 qhat = num / vtop;
        u128 rhat = num % vtop;
        while (qhat >> 64 ||
               qhat * vsecond > ((rhat << 64) | un[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat >> 64) break;
        }

        // Multiply-and-subtract qhat * vn from un[j .. j+n].
        uint64_t mul_carry = 0, borrow = 0;
        for (size_t i = 0; i < n; ++i) {
            u128 p = qhat * vn.limbs_[i] + mul_carry;
            mul_carry = static_cast<uint64_t>(p >> 64);
            u128 d = static_cast<u128>(un[i + j]) - static_cast<uint64_t>(p) - borrow;
            un[i + j] = static_cast<uint64_t>(d);
            borrow = static_cast<uint64_t>(d >> 64) & 1;
        }
        u128 d = static_cast<u128>(un[j + n]) - mul_carry - borrow;
        un[j + n] = static_cast<uint64_t>(d);
        bool went_negative = (static_cast<uint64_t>(d >> 64) & 1) != 0;

        if (went_negative) {  // rare over-estimate by one: add the divisor back
            --qhat;
            uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                u128 sum = static_cast<u128>(un[i + j]) + vn.limbs_[i] + carry;
                un[i + j] = static_cast<uint64_t>(sum);
                carry = static_cast<uint64_t>(sum >> 64);
            }
            un[j + n] += carry;
        }
        q.limbs_[j] = static_cast<uint64_t>(qhat);
    }
    q.normalize();

    LimbInt r;
    r.limbs_.assign(un.begin(), un.begin() + n);
    r.normalize();
    return {q, r.shr(s)};
}

ModContext ModContext::make(const LimbInt& m) {
    if (m.is_zero()) raise(Errc::kDivideByZero, "zero modulus");
    ModContext ctx;
    ctx.m = m;
    ctx.k = static_cast<int>(m.limb_count());
    LimbInt b2k = LimbInt::from_u64(1).shl(128 * ctx.k);
    ctx.mu = LimbInt::divmod(b2k, m).first;
    return ctx;
}

LimbInt ModContext::reduce(const LimbInt& x) const {
    if (x.bit_length() > 128 * k)
        raise(Errc::kReductionDomain, "operand exceeds b^2k");
    if (LimbInt::cmp(x, m) < 0) return x;
    // q3 = floor(floor(x / b^(k-1)) * mu / b^(k+1))
    LimbInt q1 = x.shr(64 * (k - 1));
    LimbInt q3 = LimbInt::mul(q1, mu).shr(64 * (k + 1));
    // r = (x - q3*m) mod b^(k+1), then at most two final corrections.
    int keep = 64 * (k + 1);
    LimbInt r1 = x.bit_length() > keep ? LimbInt::sub(x, x.shr(keep).shl(keep)) : x;
    LimbInt r2full = LimbInt::mul(q3, m);
    LimbInt r2 = r2full.bit_length() > keep
                     ? LimbInt::sub(r2full, r2full.shr(keep).shl(keep))
                     : r2full;
    LimbInt r;
    if (LimbInt::cmp(r1, r2) >= 0) {
        r = LimbInt::sub(r1, r2);
    } else {
        r = LimbInt::add(LimbInt::sub(LimbInt::from_u64(1).shl(keep), r2), r1);
    }
    while (LimbInt::cmp(r, m) >= 0) r = LimbInt::sub(r, m);
    return r;
}

LimbInt ModContext::add(const LimbInt& a, const LimbInt& b) const {
    LimbInt s = LimbInt::add(a, b);
    if (LimbInt::cmp(s, m) >= 0) s = LimbInt::sub(s, m);
    return s;
}

LimbInt ModContext::sub(const LimbInt& a, const LimbInt& b) const {
    if (LimbInt::cmp(a, b) >= 0) return LimbInt::sub(a, b);
    return LimbInt::sub(LimbInt::add(a, m), b);
}

LimbInt ModContext::mul(const LimbInt& a, const LimbInt& b) const {
    return reduce(LimbInt::mul(a, b));
}

LimbInt ModContext::pow(const LimbInt& base, const LimbInt& exp) const {
    LimbInt result = reduce(LimbInt::from_u64(1));
    LimbInt b = reduce(base);
    int nbits = exp.bit_length();
    for (int i = nbits - 1; i >= 0; --i) {
        result = mul(result, result);
        if (exp.bit(i)) result = mul(result, b);
    }
    return result;
}

LimbInt ModContext::inv(const LimbInt& a) const {
    if (a.is_zero()) raise(Errc::kDivideByZero, "inverse of zero");
    return pow(a, LimbInt::sub(m, LimbInt::from_u64(2)));
}

LimbInt mod_arith(const LimbInt& a, const LimbInt& b, const LimbInt& m, ModOp op) {
    if (LimbInt::cmp(a, m) >= 0 || LimbInt::cmp(b, m) >= 0)
        raise(Errc::kReductionDomain, "operands must be reduced below the modulus");
    ModContext ctx = ModContext::make(m);
    return op == ModOp::kAdd ? ctx.add(a, b) : ctx.mul(a, b);
}

}  // namespace fv
