#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "syfh/fhe.hpp"
#include "syfh/noise.hpp"

namespace syfh {

enum class MaskStrategy : std::uint8_t { single = 0, pool = 1 };

/// The precomputed encryptions of the d unit vectors. fingerprint binds the
/// basis to the parameter set and public key it was built under.
struct CiphertextBasis {
    std::size_t dim = 0;
    std::vector<Ciphertext> entries;
    u64 fingerprint = 0;
};

/// Zero-mask material: one reusable encryption of the zero vector (single
/// strategy, rescaled by a fresh scalar at synthesis time) or a pool of
/// independently encrypted zeros (pool strategy, one drawn per synthesis).
struct ZeroMask {
    MaskStrategy strategy = MaskStrategy::single;
    std::vector<Ciphertext> entries;
    u64 fingerprint = 0;
};

/// Test-only configuration surface. Forcing the mask scalar or pool index
/// makes the otherwise-randomized pipeline deterministic; skip_zero_terms
/// enables the sparse fast path and is off by default so the per-vector
/// operation counts stay exact.
struct SynthOptions {
    std::optional<u64> forced_scalar;
    std::optional<std::size_t> forced_pool_index;
    bool skip_zero_terms = false;
};

namespace detail {

inline void fnv1a(u64& h, u64 v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
    }
}

}  // namespace detail

/// FNV-1a over the key-relevant parameter fields and the public key.
/// pool_size is deliberately excluded: it sizes mask material but does not
/// identify the keys.
inline u64 key_fingerprint(const ParamSet& ps, const PublicKey& pk) {
    u64 h = 0xcbf29ce484222325ull;
    detail::fnv1a(h, ps.ring_degree);
    detail::fnv1a(h, ps.plain_modulus);
    detail::fnv1a(h, ps.q_chain.size());
    for (u64 p : ps.q_chain) detail::fnv1a(h, p);
    detail::fnv1a(h, static_cast<u64>(ps.sigma * 1000.0 + 0.5));
    detail::fnv1a(h, ps.w_log);
    for (u64 c : pk.p0.coeffs) detail::fnv1a(h, c);
    for (u64 c : pk.p1.coeffs) detail::fnv1a(h, c);
    return h;
}

/// Offline phase: encrypt the d unit vectors and the zero-mask material.
/// Performs exactly d+1 encryptions for the single strategy and
/// d + pool_size for the pool strategy (observable on the encryption
/// counter); everything afterwards is encryption-free.
inline std::pair<CiphertextBasis, ZeroMask> precompute_basis_and_noise(
    const Context& ctx, std::size_t d, const PublicKey& pk, MaskStrategy strategy, Rng& rng) {
    if (d < 1 || d > ctx.ring_degree())
        throw DimensionOutOfRange("basis dimension must be in [1, N]");

    const u64 fp = key_fingerprint(ctx.params(), pk);

    CiphertextBasis basis;
    basis.dim = d;
    basis.fingerprint = fp;
    for (std::size_t i = 0; i < d; ++i) {
        SlotVector unit(d, 0);
        unit[i] = 1;
        basis.entries.push_back(encrypt(ctx, pk, encode(ctx, unit), rng));
    }

    ZeroMask mask;
    mask.strategy = strategy;
    mask.fingerprint = fp;
    const Plaintext zero = encode(ctx, SlotVector(d, 0));
    const std::size_t count = strategy == MaskStrategy::single ? 1 : ctx.params().pool_size;
    for (std::size_t j = 0; j < count; ++j)
        mask.entries.push_back(encrypt(ctx, pk, zero, rng));

    return {std::move(basis), std::move(mask)};
}

namespace detail {

// The mask blinding step: rescale the reusable zero ciphertext by the
// centered lift of the runtime scalar. This is noise injection on cached
// material, not part of the counted data linear combination, so it works on
// the polynomials directly.
inline Ciphertext blind_mask(const Context& ctx, const Ciphertext& r0, u64 scalar) {
    const u64 q = ctx.level_modulus(r0.level);
    const u64 t = ctx.plain_modulus();
    const u64 kq = from_centered(centered(scalar % t, t), q);
    Ciphertext out = r0;
    for (auto& part : out.parts) part = poly_scalar_mul(part, kq);
    return out;
}

}  // namespace detail

/// Online phase: synthesize a ciphertext of m as
///   sum_i m_i * basis[i] + mask term
/// accumulating left to right with the mask added last. Never calls encrypt;
/// with skip_zero_terms off this is exactly dim ciphertext scalar
/// multiplications and dim+1 ciphertext additions.
inline Ciphertext synth_enc(const Context& ctx, const SlotVector& m, const CiphertextBasis& basis,
                            const ZeroMask& mask, Rng& rng, const SynthOptions& opts = {}) {
    if (basis.dim == 0 || basis.entries.size() != basis.dim || mask.entries.empty())
        throw DimensionMismatch("malformed basis or mask");
    if (m.size() != basis.dim)
        throw DimensionMismatch("vector dimension does not match basis");
    if (basis.fingerprint != mask.fingerprint)
        throw FingerprintMismatch("basis and mask were built under different keys");
    for (u64 v : m)
        if (v >= ctx.plain_modulus()) throw SlotOverflow("slot value not reduced mod t");

    const std::size_t level = basis.entries.front().level;
    Ciphertext acc = zero_ciphertext(ctx, level);
    for (std::size_t i = 0; i < basis.dim; ++i) {
        if (opts.skip_zero_terms && m[i] == 0) continue;
        acc = add_ct(acc, scalar_mul_ct(ctx, basis.entries[i], m[i]));
    }

    if (mask.strategy == MaskStrategy::single) {
        const u64 a = opts.forced_scalar ? *opts.forced_scalar : rng.below(ctx.plain_modulus());
        acc = add_ct(acc, detail::blind_mask(ctx, mask.entries.front(), a));
    } else {
        const std::size_t j =
            opts.forced_pool_index ? *opts.forced_pool_index : rng.below(mask.entries.size());
        acc = add_ct(acc, mask.entries.at(j));
    }
    return acc;
}

/// Predicted noise of a synthesized ciphertext from per-entry basis noise
/// and mask noise: sum |centered(m_i)| E_i + |centered(a)| E_mask, plus the
/// mod-t wrap correction (zero whenever the combination cannot fold, e.g.
/// unit vectors).
inline u64 synth_noise_bound(const Context& ctx, std::size_t level, const SlotVector& m,
                             std::span<const u64> basis_noise, u64 mask_noise, u64 scalar) {
    const u64 t = ctx.plain_modulus();
    u128 bound = 0;
    u64 pos = 0, neg = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const i64 kc = centered(m[i] % t, t);
        const u64 mag = static_cast<u64>(kc < 0 ? -kc : kc);
        bound += u128(mag) * basis_noise[i];
        (kc >= 0 ? pos : neg) += mag;
    }
    const i64 ac = centered(scalar % t, t);
    bound += u128(ac < 0 ? -ac : ac) * mask_noise;
    const u64 wrap_count = std::max(pos * (t - 1) / t, (neg * (t - 1) + t - 1) / t);
    bound += u128(ctx.wrap_residue(level)) * wrap_count;
    return detail::sat_u64(bound);
}

/// Repeated-synthesis distinctness: synthesize `trials` ciphertexts of the
/// same vector and compare disjoint pairs. For the single strategy a pair
/// collides exactly when the two mask scalars collide (rate 1/t); for the
/// pool strategy when the pool indices collide (rate 1/s).
struct FreshnessReport {
    std::size_t trials = 0;
    std::size_t pairs = 0;
    std::size_t identical = 0;
    double observed_rate = 0.0;
    double expected_rate = 0.0;
};

inline FreshnessReport freshness_probe(const Context& ctx, const SlotVector& m,
                                       const CiphertextBasis& basis, const ZeroMask& mask,
                                       Rng& rng, std::size_t trials) {
    if (trials < 2) throw Error("freshness_probe needs at least 2 trials");
    FreshnessReport rep;
    rep.trials = trials;
    rep.pairs = trials / 2;
    for (std::size_t p = 0; p < rep.pairs; ++p) {
        const Ciphertext a = synth_enc(ctx, m, basis, mask, rng);
        const Ciphertext b = synth_enc(ctx, m, basis, mask, rng);
        if (a == b) ++rep.identical;
    }
    rep.observed_rate = static_cast<double>(rep.identical) / static_cast<double>(rep.pairs);
    rep.expected_rate = mask.strategy == MaskStrategy::single
                            ? 1.0 / static_cast<double>(ctx.plain_modulus())
                            : 1.0 / static_cast<double>(mask.entries.size());
    return rep;
}

}  // namespace syfh
