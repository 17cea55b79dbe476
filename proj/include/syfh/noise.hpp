#pragma once

#include <cmath>
#include <cstdint>

#include "syfh/fhe.hpp"

namespace syfh {

/// Exact noise measurement for a ciphertext, given the secret key.
/// linf is the infinity norm of the centered residual between the raw
/// decryption and Delta * lift(decoded plaintext); budget_bits is
/// log2(q/(2t)) - log2(max(1, linf)), positive exactly when decryption has
/// provable headroom.
struct NoiseReport {
    u64 linf = 0;
    double budget_bits = 0.0;
    std::size_t level = 0;
    int parts = 2;
};

/// floor(q_level / (2t)): the decryption decision radius.
inline u64 decryption_radius(const Context& ctx, std::size_t level) {
    return ctx.level_modulus(level) / (2 * ctx.plain_modulus());
}

namespace detail {

inline u64 sat_u64(u128 v) { return v > UINT64_MAX ? UINT64_MAX : static_cast<u64>(v); }

// Residual distance to the nearest plaintext can never reach q/(2t), so an
// undecryptable ciphertext is flagged by a saturation band just inside the
// radius: any residual within t of the radius reports as saturated.
inline u64 saturation_threshold(const Context& ctx, std::size_t level) {
    const u64 radius = decryption_radius(ctx, level);
    const u64 t = ctx.plain_modulus();
    return radius > t ? radius - t : 1;
}

}  // namespace detail

inline NoiseReport measure_noise(const Context& ctx, const Ciphertext& ct, const SecretKey& sk) {
    const RingPoly raw = detail::raw_decrypt(ctx, sk, ct);
    const Plaintext pt = detail::round_to_plaintext(ctx, raw);
    const u64 q = raw.modulus;
    const u64 delta = ctx.delta_at(ct.level);

    u64 linf = 0;
    for (std::size_t i = 0; i < raw.coeffs.size(); ++i) {
        const u64 ref = mul_mod(delta, pt.poly.coeffs[i], q);
        i64 e = centered(sub_mod(raw.coeffs[i], ref, q), q);
        if (e < 0) e = -e;
        if (static_cast<u64>(e) > linf) linf = static_cast<u64>(e);
    }
    if (linf >= detail::saturation_threshold(ctx, ct.level)) linf = q / 2;

    NoiseReport rep;
    rep.linf = linf;
    rep.level = ct.level;
    rep.parts = static_cast<int>(ct.parts.size());
    const double radius = static_cast<double>(decryption_radius(ctx, ct.level));
    rep.budget_bits = std::log2(radius) - std::log2(static_cast<double>(linf == 0 ? 1 : linf));
    return rep;
}

// The predicted bounds below instantiate the leveled-scheme noise
// inequalities with explicit constants. Plaintext arithmetic is mod t while
// ciphertext noise lives mod q, so every bound carries a wrap correction
// scaled by r = q_level mod t (the built-in profiles pick chain primes
// = 1 mod t, making r = 1).

inline u64 predict_add(const Context& ctx, const NoiseReport& a, const NoiseReport& b) {
    if (a.level != b.level) throw LevelMismatch("predict_add requires equal levels");
    return detail::sat_u64(u128(a.linf) + b.linf + ctx.wrap_residue(a.level));
}

inline u64 predict_scalar_mul(const Context& ctx, const NoiseReport& a, u64 k) {
    const u64 t = ctx.plain_modulus();
    const i64 kc = centered(k % t, t);
    const u64 mag = static_cast<u64>(kc < 0 ? -kc : kc);
    // |wrap poly| <= floor(|k|(t-1)/t) for k >= 0, one more for k < 0.
    const u64 wrap_count = kc >= 0 ? mag * (t - 1) / t : (mag * (t - 1) + t - 1) / t;
    return detail::sat_u64(u128(mag) * a.linf + u128(ctx.wrap_residue(a.level)) * wrap_count);
}

/// Bound on the noise of relinearize(mul_ct(a, b)) from the inputs' measured
/// noise and plaintext magnitudes M_i = max canonical lift. Terms, with
/// K = N/2 + 2 bounding the decryption wrap polynomial and r = q mod t:
///   N(M1 E2 + M2 E1)          message x noise cross products
///   ceil(N E1 E2 t / q)       noise x noise, rescaled
///   t N K (E1 + E2)           wrap x noise
///   r N K (M1 + M2)           wrap x message
///   2 r (N M1 M2 / t + 1)     plaintext-product fold mod t
///   (1 + N + N^2)/2 + 1       tensor rounding through s and s^2
///   digits (w/2) eta N        key-switching noise
inline u64 predict_mult(const Context& ctx, const NoiseReport& a, const NoiseReport& b,
                        u64 m1_inf, u64 m2_inf) {
    if (a.level != b.level) throw LevelMismatch("predict_mult requires equal levels");
    const std::size_t level = a.level;
    const u128 n = ctx.ring_degree();
    const u128 t = ctx.plain_modulus();
    const u128 q = ctx.level_modulus(level);
    const u128 r = ctx.wrap_residue(level);
    const u128 e1 = a.linf, e2 = b.linf, m1 = m1_inf, m2 = m2_inf;
    const u128 k_bound = n / 2 + 2;

    u128 bound = n * (m1 * e2 + m2 * e1);
    bound += (n * e1 * e2 / q + 1) * t;
    bound += t * n * k_bound * (e1 + e2);
    bound += r * n * k_bound * (m1 + m2);
    bound += 2 * r * (n * m1 * m2 / t + 1);
    bound += (1 + n + n * n) / 2 + 1;
    const u128 w = u128(1) << ctx.params().w_log;
    bound += u128(ctx.params().relin_digits(level)) * (w / 2) * ctx.params().noise_eta() * n;
    return detail::sat_u64(bound);
}

/// The rounding-plus-rescale term of modulus switching:
/// delta_round = (1 + N)/2 [rounding through s] + (q_next mod t) [Delta-floor
/// mismatch] + 2 [integer slack].
inline u64 modswitch_round_term(const Context& ctx, std::size_t to_level) {
    const u64 n = ctx.ring_degree();
    return (n + 1) / 2 + ctx.wrap_residue(to_level) + 2;
}

/// Bound after dropping the top chain prime q_drop:
/// ceil(E / q_drop) + delta_round.
inline u64 predict_modswitch(const Context& ctx, const NoiseReport& rep) {
    if (rep.level == 0) throw BottomOfChain("no lower level to switch to");
    const u64 q_drop = ctx.params().q_chain[rep.level];
    const u64 scaled = (rep.linf + q_drop - 1) / q_drop;
    return detail::sat_u64(u128(scaled) + modswitch_round_term(ctx, rep.level - 1));
}

}  // namespace syfh
