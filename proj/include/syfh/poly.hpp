#pragma once

#include <cstdint>
#include <vector>

#include "syfh/errors.hpp"
#include "syfh/modmath.hpp"

namespace syfh {

enum class Domain : std::uint8_t { coeff = 0, eval = 1 };

/// Element of Z_m[x]/(x^N + 1). Residues are kept canonical in [0, m);
/// centered representatives appear only at noise measurement and
/// scalar-lift boundaries.
struct RingPoly {
    u64 modulus = 0;
    Domain domain = Domain::coeff;
    std::vector<u64> coeffs;

    std::size_t degree() const { return coeffs.size(); }

    static RingPoly zero(std::size_t n, u64 modulus, Domain domain = Domain::coeff) {
        return RingPoly{modulus, domain, std::vector<u64>(n, 0)};
    }

    bool operator==(const RingPoly&) const = default;
};

namespace detail {
inline void require_compatible(const RingPoly& a, const RingPoly& b) {
    if (a.modulus != b.modulus)
        throw ModulusMismatch("ring ops require equal moduli");
    if (a.domain != b.domain || a.degree() != b.degree())
        throw DomainMismatch("ring ops require equal domain and degree");
}
}  // namespace detail

inline RingPoly poly_add(const RingPoly& a, const RingPoly& b) {
    detail::require_compatible(a, b);
    RingPoly out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = add_mod(a.coeffs[i], b.coeffs[i], a.modulus);
    return out;
}

inline RingPoly poly_sub(const RingPoly& a, const RingPoly& b) {
    detail::require_compatible(a, b);
    RingPoly out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = sub_mod(a.coeffs[i], b.coeffs[i], a.modulus);
    return out;
}

inline RingPoly poly_negate(const RingPoly& a) {
    RingPoly out = a;
    for (auto& c : out.coeffs) c = neg_mod(c, a.modulus);
    return out;
}

/// Coefficientwise scaling by k mod m; domain is preserved.
inline RingPoly poly_scalar_mul(const RingPoly& a, u64 k) {
    RingPoly out = a;
    k %= a.modulus;
    for (auto& c : out.coeffs) c = mul_mod(c, k, a.modulus);
    return out;
}

inline i64 poly_linf_centered(const RingPoly& a) {
    i64 best = 0;
    for (u64 c : a.coeffs) {
        i64 v = centered(c, a.modulus);
        if (v < 0) v = -v;
        if (v > best) best = v;
    }
    return best;
}

}  // namespace syfh
