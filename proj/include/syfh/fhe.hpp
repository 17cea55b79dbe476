#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "syfh/batching.hpp"
#include "syfh/context.hpp"
#include "syfh/counters.hpp"
#include "syfh/rng.hpp"

namespace syfh {

struct SecretKey {
    RingPoly s;  // ternary, stored at the top-level modulus
};

struct PublicKey {
    RingPoly p0, p1;  // p0 = -(p1*s + e)
    bool operator==(const PublicKey&) const = default;
};

/// Key-switching key for s^2: digit j holds (rk0_j, rk1_j) with
/// rk0_j + rk1_j*s - w^j*s^2 equal to a fresh noise polynomial.
struct RelinKey {
    std::uint32_t w_log = 0;
    std::vector<std::pair<RingPoly, RingPoly>> digits;
};

/// Two- or three-component ciphertext at a chain level. Three components
/// appear only between mul_ct and relinearize. Parts stay in coefficient
/// domain at rest.
struct Ciphertext {
    std::vector<RingPoly> parts;
    std::size_t level = 0;
    bool is_ntt = false;

    bool operator==(const Ciphertext&) const = default;
};

inline Ciphertext zero_ciphertext(const Context& ctx, std::size_t level, std::size_t nparts = 2) {
    Ciphertext ct;
    ct.level = level;
    for (std::size_t i = 0; i < nparts; ++i)
        ct.parts.push_back(RingPoly::zero(ctx.ring_degree(), ctx.level_modulus(level)));
    return ct;
}

namespace detail {

// Keys live at the top modulus; every lower level modulus divides it, so a
// plain coefficient reduction preserves both small (ternary) values and the
// RLWE key identities mod the smaller modulus.
inline RingPoly reduce_mod(const RingPoly& p, u64 modulus) {
    if (p.modulus == modulus) return p;
    RingPoly out = p;
    out.modulus = modulus;
    for (auto& c : out.coeffs) c %= modulus;
    return out;
}

// Delta * lift(pt) as a level-l polynomial.
inline RingPoly scaled_plaintext(const Context& ctx, const Plaintext& pt, std::size_t level) {
    const u64 q = ctx.level_modulus(level);
    const u64 delta = ctx.delta_at(level);
    RingPoly out = RingPoly::zero(ctx.ring_degree(), q);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = mul_mod(delta, pt.poly.coeffs[i], q);
    return out;
}

// c0 + c1*s (+ c2*s^2) at the ciphertext's level; accepts 2 or 3 parts.
inline RingPoly raw_decrypt(const Context& ctx, const SecretKey& sk, const Ciphertext& ct) {
    if (ct.parts.size() != 2 && ct.parts.size() != 3)
        throw WrongPartCount("ciphertext must have 2 or 3 parts");
    const auto& tb = ctx.tables_at(ct.level);
    const RingPoly s = reduce_mod(sk.s, tb.modulus);
    RingPoly acc = poly_add(ct.parts[0], poly_mul(ct.parts[1], s, tb));
    if (ct.parts.size() == 3) {
        const RingPoly s2 = poly_mul(s, s, tb);
        acc = poly_add(acc, poly_mul(ct.parts[2], s2, tb));
    }
    return acc;
}

inline Plaintext round_to_plaintext(const Context& ctx, const RingPoly& raw) {
    const u64 q = raw.modulus;
    const u64 t = ctx.plain_modulus();
    RingPoly pt = RingPoly::zero(ctx.ring_degree(), t);
    for (std::size_t i = 0; i < raw.coeffs.size(); ++i) {
        const i128 num = i128(t) * centered(raw.coeffs[i], q);
        const i128 m = round_div(num, i128(q));
        pt.coeffs[i] = from_centered(static_cast<i64>(m % i128(t)), t);
    }
    return Plaintext{pt};
}

// Round-decode of any 2- or 3-part ciphertext. Test and metering surface;
// the public decrypt refuses 3-part ciphertexts.
inline Plaintext decrypt_any(const Context& ctx, const SecretKey& sk, const Ciphertext& ct) {
    return round_to_plaintext(ctx, raw_decrypt(ctx, sk, ct));
}

}  // namespace detail

inline std::tuple<SecretKey, PublicKey, RelinKey> keygen(const Context& ctx, Rng& rng) {
    const std::size_t n = ctx.ring_degree();
    const std::size_t top = ctx.top_level();
    const auto& tb = ctx.tables_at(top);
    const u64 q = tb.modulus;
    const unsigned eta = ctx.params().noise_eta();

    SecretKey sk{sample_ternary(n, q, rng)};

    PublicKey pk;
    pk.p1 = sample_uniform(n, q, rng);
    const RingPoly e = sample_noise(n, q, eta, rng);
    pk.p0 = poly_negate(poly_add(poly_mul(pk.p1, sk.s, tb), e));

    RelinKey rlk;
    rlk.w_log = ctx.params().w_log;
    const RingPoly s2 = poly_mul(sk.s, sk.s, tb);
    const std::size_t digits = ctx.params().relin_digits(top);
    const u64 w = u64(1) << rlk.w_log;
    u64 w_pow = 1 % q;
    for (std::size_t j = 0; j < digits; ++j) {
        const RingPoly a = sample_uniform(n, q, rng);
        const RingPoly ej = sample_noise(n, q, eta, rng);
        RingPoly rk0 = poly_negate(poly_add(poly_mul(a, sk.s, tb), ej));
        rk0 = poly_add(rk0, poly_scalar_mul(s2, w_pow));
        rlk.digits.emplace_back(std::move(rk0), a);
        w_pow = mul_mod(w_pow, w % q, q);
    }
    return {std::move(sk), std::move(pk), std::move(rlk)};
}

inline Ciphertext encrypt(const Context& ctx, const PublicKey& pk, const Plaintext& pt, Rng& rng) {
    counters::note_encryption();
    const std::size_t n = ctx.ring_degree();
    const std::size_t top = ctx.top_level();
    const auto& tb = ctx.tables_at(top);
    const u64 q = tb.modulus;
    const unsigned eta = ctx.params().noise_eta();

    const RingPoly u = sample_ternary(n, q, rng);
    const RingPoly e1 = sample_noise(n, q, eta, rng);
    const RingPoly e2 = sample_noise(n, q, eta, rng);

    Ciphertext ct;
    ct.level = top;
    ct.parts.push_back(poly_add(poly_add(poly_mul(pk.p0, u, tb), e1),
                                detail::scaled_plaintext(ctx, pt, top)));
    ct.parts.push_back(poly_add(poly_mul(pk.p1, u, tb), e2));
    return ct;
}

inline Plaintext decrypt(const Context& ctx, const SecretKey& sk, const Ciphertext& ct) {
    if (ct.parts.size() == 3)
        throw UnrelinearizedCiphertext("relinearize before decrypting");
    return detail::decrypt_any(ctx, sk, ct);
}

inline Ciphertext add_ct(const Ciphertext& a, const Ciphertext& b) {
    if (a.level != b.level) throw LevelMismatch("add_ct requires equal levels");
    if (a.parts.size() != b.parts.size())
        throw WrongPartCount("add_ct requires equal part counts");
    counters::note_ct_addition();
    Ciphertext out = a;
    for (std::size_t i = 0; i < out.parts.size(); ++i)
        out.parts[i] = poly_add(a.parts[i], b.parts[i]);
    return out;
}

/// Multiply by the centered lift of k in Z_t. Noise scales by |centered(k)|;
/// k = 0 yields the exact (0, 0) ciphertext.
inline Ciphertext scalar_mul_ct(const Context& ctx, const Ciphertext& a, u64 k) {
    if (a.parts.size() != 2) throw WrongPartCount("scalar_mul_ct expects a 2-part ciphertext");
    counters::note_ct_scalar_mul();
    const u64 q = ctx.level_modulus(a.level);
    const i64 kc = centered(k % ctx.plain_modulus(), ctx.plain_modulus());
    const u64 kq = from_centered(kc, q);
    Ciphertext out = a;
    for (auto& part : out.parts) part = poly_scalar_mul(part, kq);
    return out;
}

namespace detail {

// Exact negacyclic convolution of the centered lifts, in 128-bit integers.
// validate_params caps N*(Q/2)^2 below 2^126, so nothing here can overflow.
inline std::vector<i128> tensor_conv(const RingPoly& a, const RingPoly& b) {
    const std::size_t n = a.degree();
    const u64 q = a.modulus;
    std::vector<i64> ac(n), bc(n);
    for (std::size_t i = 0; i < n; ++i) {
        ac[i] = centered(a.coeffs[i], q);
        bc[i] = centered(b.coeffs[i], q);
    }
    std::vector<i128> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const i128 ai = ac[i];
        if (ai == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = i + j;
            if (k < n)
                out[k] += ai * bc[j];
            else
                out[k - n] -= ai * bc[j];
        }
    }
    return out;
}

// round(t*v/q) mod q, split as v = alpha*q + beta so the 128-bit product
// t*beta never overflows.
inline u64 tensor_scale(i128 v, u64 t, u64 q) {
    const i128 qq = q;
    const i128 alpha = round_div(v, qq);
    const i128 beta = v - alpha * qq;
    i128 r = (i128(t) * alpha + round_div(i128(t) * beta, qq)) % qq;
    if (r < 0) r += qq;
    return static_cast<u64>(r);
}

inline RingPoly tensor_to_poly(const std::vector<i128>& v, u64 t, u64 q) {
    RingPoly out = RingPoly::zero(v.size(), q);
    for (std::size_t i = 0; i < v.size(); ++i) out.coeffs[i] = tensor_scale(v[i], t, q);
    return out;
}

}  // namespace detail

/// BFV tensor product: exact integer convolution of the centered parts, then
/// round(t/q * component) on each of (d0, d1, d2). Relinearize before any
/// further 2-part-only operation.
inline Ciphertext mul_ct(const Context& ctx, const Ciphertext& a, const Ciphertext& b) {
    if (a.parts.size() != 2 || b.parts.size() != 2)
        throw WrongPartCount("mul_ct expects 2-part ciphertexts");
    if (a.level != b.level) throw LevelMismatch("mul_ct requires equal levels");
    const u64 q = ctx.level_modulus(a.level);
    const u64 t = ctx.plain_modulus();

    auto d0 = detail::tensor_conv(a.parts[0], b.parts[0]);
    auto d1 = detail::tensor_conv(a.parts[0], b.parts[1]);
    {
        const auto d1b = detail::tensor_conv(a.parts[1], b.parts[0]);
        for (std::size_t i = 0; i < d1.size(); ++i) d1[i] += d1b[i];
    }
    const auto d2 = detail::tensor_conv(a.parts[1], b.parts[1]);

    Ciphertext out;
    out.level = a.level;
    out.parts.push_back(detail::tensor_to_poly(d0, t, q));
    out.parts.push_back(detail::tensor_to_poly(d1, t, q));
    out.parts.push_back(detail::tensor_to_poly(d2, t, q));
    return out;
}

namespace detail {

// Signed base-w digits of the centered coefficients: value = sum digit_j*w^j
// with |digit_j| <= w/2. Returns digit polynomials at modulus q.
inline std::vector<RingPoly> signed_digits(const RingPoly& p, std::uint32_t w_log,
                                           std::size_t digit_count) {
    const u64 q = p.modulus;
    const i64 w = i64(1) << w_log;
    std::vector<RingPoly> digits(digit_count, RingPoly::zero(p.degree(), q));
    for (std::size_t i = 0; i < p.degree(); ++i) {
        i64 v = centered(p.coeffs[i], q);
        for (std::size_t j = 0; j < digit_count; ++j) {
            i64 r = v % w;
            if (r < 0) r += w;
            if (r >= w / 2) r -= w;
            digits[j].coeffs[i] = from_centered(r, q);
            v = (v - r) >> w_log;
        }
    }
    return digits;
}

}  // namespace detail

/// Key-switch the quadratic component back onto (c0, c1). Added noise is at
/// most relin_digits * (w/2) * eta * N.
inline Ciphertext relinearize(const Context& ctx, const Ciphertext& ct, const RelinKey& rlk) {
    if (ct.parts.size() != 3) throw WrongPartCount("relinearize expects a 3-part ciphertext");
    const auto& tb = ctx.tables_at(ct.level);
    const std::size_t digit_count = ctx.params().relin_digits(ct.level);
    if (rlk.w_log != ctx.params().w_log || rlk.digits.size() < digit_count)
        throw KeyMismatch("relin key does not cover this level");
    const auto digits = detail::signed_digits(ct.parts[2], rlk.w_log, digit_count);

    RingPoly c0 = ct.parts[0];
    RingPoly c1 = ct.parts[1];
    for (std::size_t j = 0; j < digit_count; ++j) {
        const RingPoly rk0 = detail::reduce_mod(rlk.digits[j].first, tb.modulus);
        const RingPoly rk1 = detail::reduce_mod(rlk.digits[j].second, tb.modulus);
        c0 = poly_add(c0, poly_mul(digits[j], rk0, tb));
        c1 = poly_add(c1, poly_mul(digits[j], rk1, tb));
    }
    Ciphertext out;
    out.level = ct.level;
    out.parts = {std::move(c0), std::move(c1)};
    return out;
}

/// Rescale both parts by q_{l-1}/q_l (drop the top chain prime), rounding to
/// nearest. The plaintext is preserved; absolute noise shrinks by the same
/// factor plus a small rounding term.
inline Ciphertext mod_switch(const Context& ctx, const Ciphertext& ct) {
    if (ct.parts.size() != 2) throw WrongPartCount("mod_switch expects a 2-part ciphertext");
    if (ct.level == 0) throw BottomOfChain("already at the bottom of the modulus chain");
    const u64 q_from = ctx.level_modulus(ct.level);
    const u64 q_to = ctx.level_modulus(ct.level - 1);
    const u64 q_drop = ctx.params().q_chain[ct.level];

    Ciphertext out;
    out.level = ct.level - 1;
    for (const auto& part : ct.parts) {
        RingPoly p = RingPoly::zero(part.degree(), q_to);
        for (std::size_t i = 0; i < part.degree(); ++i) {
            const i128 scaled = round_div(centered(part.coeffs[i], q_from), i128(q_drop));
            p.coeffs[i] = from_centered(static_cast<i64>(scaled), q_to);
        }
        out.parts.push_back(std::move(p));
    }
    return out;
}

}  // namespace syfh
