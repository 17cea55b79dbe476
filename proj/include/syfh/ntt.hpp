#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "syfh/errors.hpp"
#include "syfh/modmath.hpp"
#include "syfh/poly.hpp"

namespace syfh {

/// Precomputed tables for the iterative radix-2 negacyclic NTT over
/// Z_m[x]/(x^N + 1). The modulus may be a single NTT-friendly prime or a
/// product of distinct NTT-friendly primes (a modulus-chain level); in the
/// composite case the primitive 2N-th root is CRT-combined from per-prime
/// roots, which keeps the whole transform valid because Z_m splits as a
/// direct product of fields.
struct NttTables {
    u64 modulus = 0;
    std::size_t n = 0;
    std::vector<u64> psi_brv;      // psi^k, k in bit-reversed order
    std::vector<u64> psi_inv_brv;  // psi^-k, k in bit-reversed order
    u64 n_inv = 0;

    static NttTables build(std::size_t n, std::span<const u64> prime_factors);
};

namespace detail {

// Deterministic search for a primitive 2n-th root of unity mod prime p.
inline u64 find_primitive_root_2n(u64 p, std::size_t n) {
    const u64 order = 2 * static_cast<u64>(n);
    if ((p - 1) % order != 0)
        throw InvalidModulus("modulus is not 1 mod 2N");
    const u64 cofactor = (p - 1) / order;
    for (u64 x = 2; x < p; ++x) {
        u64 cand = pow_mod(x, cofactor, p);
        if (pow_mod(cand, static_cast<u64>(n), p) == p - 1) return cand;
    }
    throw InvalidModulus("no primitive 2N-th root found");
}

}  // namespace detail

inline NttTables NttTables::build(std::size_t n, std::span<const u64> prime_factors) {
    if (!is_power_of_two(n)) throw InvalidDegree("ring degree must be a power of two");

    u64 modulus = 1;
    for (u64 p : prime_factors) modulus *= p;

    // CRT-combine the per-prime roots into a root mod the full modulus.
    u64 psi = 0;
    for (u64 p : prime_factors) {
        const u64 psi_p = detail::find_primitive_root_2n(p, n);
        const u64 rest = modulus / p;
        const u64 coef = mul_mod(rest % modulus, inv_mod(rest % p, p), modulus);
        psi = add_mod(psi, mul_mod(psi_p, coef, modulus), modulus);
    }
    if (pow_mod(psi, static_cast<u64>(n), modulus) != modulus - 1)
        throw InvalidModulus("combined root fails psi^N = -1");

    NttTables t;
    t.modulus = modulus;
    t.n = n;
    t.n_inv = inv_mod(static_cast<u64>(n), modulus);
    const unsigned logn = static_cast<unsigned>(std::countr_zero(n));
    const u64 psi_inv = inv_mod(psi, modulus);
    t.psi_brv.resize(n);
    t.psi_inv_brv.resize(n);
    u64 fwd = 1, inv = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = bit_reverse(i, logn);
        t.psi_brv[r] = fwd;
        t.psi_inv_brv[r] = inv;
        fwd = mul_mod(fwd, psi, modulus);
        inv = mul_mod(inv, psi_inv, modulus);
    }
    return t;
}

namespace detail {
inline void require_tables_match(const RingPoly& p, const NttTables& t) {
    if (p.modulus != t.modulus) throw ModulusMismatch("poly/table modulus mismatch");
    if (p.degree() != t.n) throw DomainMismatch("poly degree does not match tables");
}
}  // namespace detail

/// Coefficient domain -> evaluation domain. Output slot j holds the value of
/// the polynomial at psi^(2*bitrev(j)+1); only ntt_inverse and the batching
/// layer depend on that ordering.
inline RingPoly ntt_forward(const RingPoly& p, const NttTables& tb) {
    detail::require_tables_match(p, tb);
    if (p.domain != Domain::coeff) throw DomainMismatch("ntt_forward expects coefficient domain");
    RingPoly out = p;
    const u64 m = tb.modulus;
    auto& a = out.coeffs;
    std::size_t t = tb.n;
    for (std::size_t nblocks = 1; nblocks < tb.n; nblocks <<= 1) {
        t >>= 1;
        for (std::size_t i = 0; i < nblocks; ++i) {
            const std::size_t j1 = 2 * i * t;
            const u64 s = tb.psi_brv[nblocks + i];
            for (std::size_t j = j1; j < j1 + t; ++j) {
                const u64 u = a[j];
                const u64 v = mul_mod(a[j + t], s, m);
                a[j] = add_mod(u, v, m);
                a[j + t] = sub_mod(u, v, m);
            }
        }
    }
    out.domain = Domain::eval;
    return out;
}

/// Evaluation domain -> coefficient domain; inverse of ntt_forward.
inline RingPoly ntt_inverse(const RingPoly& p, const NttTables& tb) {
    detail::require_tables_match(p, tb);
    if (p.domain != Domain::eval) throw DomainMismatch("ntt_inverse expects evaluation domain");
    RingPoly out = p;
    const u64 m = tb.modulus;
    auto& a = out.coeffs;
    std::size_t t = 1;
    for (std::size_t nblocks = tb.n >> 1; nblocks >= 1; nblocks >>= 1) {
        std::size_t j1 = 0;
        for (std::size_t i = 0; i < nblocks; ++i) {
            const u64 s = tb.psi_inv_brv[nblocks + i];
            for (std::size_t j = j1; j < j1 + t; ++j) {
                const u64 u = a[j];
                const u64 v = a[j + t];
                a[j] = add_mod(u, v, m);
                a[j + t] = mul_mod(sub_mod(u, v, m), s, m);
            }
            j1 += 2 * t;
        }
        t <<= 1;
    }
    for (auto& c : a) c = mul_mod(c, tb.n_inv, m);
    out.domain = Domain::coeff;
    return out;
}

/// Negacyclic product a*b mod (x^N + 1, m) via forward transforms,
/// pointwise multiplication, and the inverse transform.
inline RingPoly poly_mul(const RingPoly& a, const RingPoly& b, const NttTables& tb) {
    if (a.modulus != b.modulus) throw ModulusMismatch("poly_mul operands differ in modulus");
    detail::require_tables_match(a, tb);
    detail::require_tables_match(b, tb);
    RingPoly fa = ntt_forward(a, tb);
    const RingPoly fb = ntt_forward(b, tb);
    for (std::size_t i = 0; i < fa.coeffs.size(); ++i)
        fa.coeffs[i] = mul_mod(fa.coeffs[i], fb.coeffs[i], tb.modulus);
    return ntt_inverse(fa, tb);
}

}  // namespace syfh
