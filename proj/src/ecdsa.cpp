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
 * @file ecdsa.cpp
 * @brief ECDSA over the NIST P-256 and P-384 short-Weierstrass curves.
 *
 * Affine arithmetic: every point addition pays one field inversion, which
 * matches the dedicated ModInv unit the cycle model charges for.  Scalar
 * multiplication is plain double-and-add; the fold over executed ModMult and
 * ModInv operations is the cycle count.
 */

#include <cmath>

#include "fv/asym.hpp"
#include "fv/error.hpp"
#include "fv/hash.hpp"

namespace fv {

namespace {

struct CurveDef {
    const char* p_hex;
    const char* b_hex;
    const char* n_hex;
    const char* gx_hex;
    const char* gy_hex;
    int order_bytes;
};

// a = -3 for both curves.
const CurveDef kP256 = {
    "ffffffff00000001000000000000000000000000ffffffffffffffffffffffff",
    "5ac635d8aa3a93e7b3ebbd55769886bc651d06b0cc53b0f63bce3c3e27d2604b",
    "ffffffff00000000ffffffffffffffffbce6faada7179e84f3b9cac2fc632551",
    "6b17d1f2e12c4247f8bce6e563a440f277037d812deb33a0f4a13945d898c296",
    "4fe342e2fe1a7f9b8ee7eb4a7c0f9e162bce33576b315ececbb6406837bf51f5",
    32};

const CurveDef kP384 = {
    "ffffffffffffffffffffffffffffffffffffffffffffffff"
    "fffffffffffffffeffffffff0000000000000000ffffffff",
    "b3312fa7e23ee7e4988e056be3f82d19181d9c6efe814112"
    "0314088f5013875ac656398d8a2ed19d2a85c8edd3ec2aef",
    "ffffffffffffffffffffffffffffffffffffffffffffffff"
    "c7634d81f4372ddf581a0db248b0a77aecec196accc52973",
    "aa87ca22be8b05378eb1c71ef320ad746e1d3b628ba79b98"
    "59f741e082542a385502f25dbf55296c3a545e3872760ab7",
    "3617de4a96262c6f5d9e98bf9292dc29f8f41dbd289a147c"
    "e9da3113b5f0b8c00a60b1ce1d7e819d7a431d7c90ea0e5f",
    48};

struct EcPoint {
    LimbInt x, y;
    bool inf = false;
};

// Field context with operation counters for the cycle fold.
struct EcContext {
    ModContext fp;   // coordinate field
    ModContext fn;   // scalar field (group order)
    LimbInt a;       // p - 3
    LimbInt b;
    EcPoint g;
    int order_bytes;

    mutable uint64_t modmuls = 0;
    mutable uint64_t modinvs = 0;

    LimbInt fmul(const LimbInt& x, const LimbInt& y) const {
        ++modmuls;
        return fp.mul(x, y);
    }
    LimbInt finv(const LimbInt& x) const {
        ++modinvs;
        return fp.inv(x);
    }
    uint64_t cycles(const AsymCostModel& costs) const {
        double per_mul = costs.modmul_per_limb * double(fp.m.limb_count());
        return uint64_t(std::llround(double(modmuls) * per_mul +
                                     double(modinvs) * costs.ec_modinv));
    }
};

const EcContext& curve_context(EcCurve curve) {
    auto make = [](const CurveDef& def) {
        EcContext c;
        LimbInt p = LimbInt::from_hex(def.p_hex);
        c.fp = ModContext::make(p);
        c.fn = ModContext::make(LimbInt::from_hex(def.n_hex));
        c.a = LimbInt::sub(p, LimbInt::from_u64(3));
        c.b = LimbInt::from_hex(def.b_hex);
        c.g = {LimbInt::from_hex(def.gx_hex), LimbInt::from_hex(def.gy_hex), false};
        c.order_bytes = def.order_bytes;
        return c;
    };
    static const EcContext p256 = make(kP256);
    static const EcContext p384 = make(kP384);
    return curve == EcCurve::kP256 ? p256 : p384;
}

bool on_curve(const EcContext& c, const EcPoint& pt) {
    if (pt.inf) return true;
    if (pt.x >= c.fp.m || pt.y >= c.fp.m) return false;
    LimbInt lhs = c.fp.mul(pt.y, pt.y);
    LimbInt rhs = c.fp.add(c.fp.mul(c.fp.mul(pt.x, pt.x), pt.x),
                           c.fp.add(c.fp.mul(c.a, pt.x), c.b));
    return lhs == rhs;
}

EcPoint ec_add(const EcContext& c, const EcPoint& p, const EcPoint& q) {
    if (p.inf) return q;
    if (q.inf) return p;
    LimbInt lam;
    if (p.x == q.x) {
        if (c.fp.add(p.y, q.y).is_zero()) return {LimbInt(), LimbInt(), true};
        // lambda = (3x^2 + a) / 2y
        LimbInt num = c.fp.add(c.fmul(LimbInt::from_u64(3), c.fmul(p.x, p.x)), c.a);
        lam = c.fmul(num, c.finv(c.fp.add(p.y, p.y)));
    } else {
        LimbInt num = c.fp.sub(q.y, p.y);
        lam = c.fmul(num, c.finv(c.fp.sub(q.x, p.x)));
    }
    LimbInt x = c.fp.sub(c.fp.sub(c.fmul(lam, lam), p.x), q.x);
    LimbInt y = c.fp.sub(c.fmul(lam, c.fp.sub(p.x, x)), p.y);
    return {x, y, false};
}

EcPoint ec_scalar_mul(const EcContext& c, const LimbInt& k, const EcPoint& p) {
    EcPoint r{LimbInt(), LimbInt(), true};
    for (int i = k.bit_length() - 1; i >= 0; --i) {
        r = ec_add(c, r, r);
        if (k.bit(i)) r = ec_add(c, r, p);
    }
    return r;
}

// Leftmost order-length bits of the digest, as an integer.
LimbInt digest_to_z(const EcContext& c, std::span<const uint8_t> digest) {
    size_t take = std::min(digest.size(), size_t(c.order_bytes));
    return LimbInt::from_bytes_be(digest.subspan(0, take));
}

LimbInt derive_scalar(std::span<const uint8_t> seed, std::span<const uint8_t> info,
                      const char* salt, const ModContext& fn, int order_bytes) {
    std::vector<uint8_t> salt_bytes(salt, salt + std::char_traits<char>::length(salt));
    auto raw = hkdf_sha256(seed, salt_bytes, info, size_t(order_bytes) + 8);
    // Reduce into [1, n-1]: the 64 extra bits keep the bias negligible.
    LimbInt n1 = LimbInt::sub(fn.m, LimbInt::from_u64(1));
    LimbInt v = LimbInt::divmod(LimbInt::from_bytes_be(raw), n1).second;
    return LimbInt::add(v, LimbInt::from_u64(1));
}

}  // namespace

void ec_public_key(EcCurve curve, const LimbInt& d, LimbInt* qx, LimbInt* qy) {
    const auto& c = curve_context(curve);
    if (d.is_zero() || d >= c.fn.m) raise(Errc::kBadConfig, "ecdsa: scalar out of range");
    EcPoint q = ec_scalar_mul(c, d, c.g);
    *qx = q.x;
    *qy = q.y;
}

EcdsaKey ecdsa_keygen(EcCurve curve, std::span<const uint8_t> seed) {
    const auto& c = curve_context(curve);
    EcdsaKey key;
    key.curve = curve;
    key.d = derive_scalar(seed, {}, "fv-ec-key", c.fn, c.order_bytes);
    ec_public_key(curve, key.d, &key.qx, &key.qy);
    return key;
}

EcdsaSignature ecdsa_sign_with_k(EcCurve curve, const LimbInt& d,
                                 std::span<const uint8_t> digest, const LimbInt& k,
                                 const AsymCostModel& costs) {
    const auto& c = curve_context(curve);
    if (k.is_zero() || k >= c.fn.m) raise(Errc::kBadConfig, "ecdsa: nonce out of range");
    c.modmuls = 0;
    c.modinvs = 0;
    EcPoint kg = ec_scalar_mul(c, k, c.g);
    LimbInt r = c.fn.reduce(kg.x);
    LimbInt z = digest_to_z(c, digest);
    // s = k^-1 (z + r d) mod n; the scalar-field inversion also runs on the
    // ModInv unit.
    ++c.modinvs;
    c.modmuls += 2;
    LimbInt s = c.fn.mul(c.fn.inv(k),
                         c.fn.add(c.fn.reduce(z), c.fn.mul(r, c.fn.reduce(d))));
    EcdsaSignature sig;
    sig.r = r;
    sig.s = s;
    sig.cycles = c.cycles(costs);
    return sig;
}

EcdsaSignature ecdsa_sign(const EcdsaKey& key, std::span<const uint8_t> digest,
                          std::span<const uint8_t> nonce_seed,
                          const AsymCostModel& costs) {
    const auto& c = curve_context(key.curve);
    for (uint32_t attempt = 0;; ++attempt) {
        std::vector<uint8_t> info(digest.begin(), digest.end());
        for (int i = 0; i < 4; ++i) info.push_back(uint8_t(attempt >> (8 * i)));
        LimbInt k = derive_scalar(nonce_seed, info, "fv-ec-nonce", c.fn, c.order_bytes);
        EcdsaSignature sig = ecdsa_sign_with_k(key.curve, key.d, digest, k, costs);
        if (!sig.r.is_zero() && !sig.s.is_zero()) return sig;
    }
}

EcdsaVerifyResult ecdsa_verify(EcCurve curve, const LimbInt& qx, const LimbInt& qy,
                               std::span<const uint8_t> digest, const LimbInt& r,
                               const LimbInt& s, const AsymCostModel& costs) {
    const auto& c = curve_context(curve);
    EcPoint q{qx, qy, false};
    if (!on_curve(c, q)) raise(Errc::kBadConfig, "ecdsa: public point not on curve");
    c.modmuls = 0;
    c.modinvs = 0;
    EcdsaVerifyResult res;
    if (r.is_zero() || r >= c.fn.m || s.is_zero() || s >= c.fn.m) {
        res.accept = false;
        return res;
    }
    LimbInt z = digest_to_z(c, digest);
    ++c.modinvs;
    c.modmuls += 2;
    LimbInt w = c.fn.inv(s);
    LimbInt u1 = c.fn.mul(c.fn.reduce(z), w);
    LimbInt u2 = c.fn.mul(r, w);
    EcPoint p1 = ec_scalar_mul(c, u1, c.g);
    EcPoint p2 = ec_scalar_mul(c, u2, q);
    EcPoint sum = ec_add(c, p1, p2);
    res.accept = !sum.inf && c.fn.reduce(sum.x) == r;
    res.cycles = c.cycles(costs);
    return res;
}

}  // namespace fv
