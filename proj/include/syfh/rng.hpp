#pragma once

#include <cstdint>
#include <random>

#include "syfh/poly.hpp"

namespace syfh {

/// Seedable deterministic generator. Tests pass explicit seeds; production
/// callers default to OS entropy. Each instance is an independent stream,
/// so concurrent callers use one Rng per thread.
class Rng {
public:
    Rng() : gen_(std::random_device{}()) {}
    explicit Rng(u64 seed) : gen_(seed) {}

    u64 u64bits() { return gen_(); }

    /// Uniform residue in [0, bound) via rejection sampling (unbiased).
    u64 below(u64 bound) {
        const u64 limit = UINT64_MAX - UINT64_MAX % bound;
        u64 v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

    bool bit() { return (gen_() & 1) != 0; }

private:
    std::mt19937_64 gen_;
};

/// Each coefficient i.i.d. uniform in [0, m).
inline RingPoly sample_uniform(std::size_t n, u64 m, Rng& rng) {
    RingPoly p = RingPoly::zero(n, m);
    for (auto& c : p.coeffs) c = rng.below(m);
    return p;
}

/// Coefficients in {-1, 0, 1} with P = (1/4, 1/2, 1/4), represented mod m.
inline RingPoly sample_ternary(std::size_t n, u64 m, Rng& rng) {
    RingPoly p = RingPoly::zero(n, m);
    for (auto& c : p.coeffs) {
        int v = static_cast<int>(rng.bit()) - static_cast<int>(rng.bit());
        c = from_centered(v, m);
    }
    return p;
}

/// Centered binomial of parameter eta: sum of eta coin-pair differences,
/// support [-eta, eta], variance eta/2. Bounded support keeps the worst-case
/// noise inequalities directly checkable.
inline RingPoly sample_noise(std::size_t n, u64 m, unsigned eta, Rng& rng) {
    RingPoly p = RingPoly::zero(n, m);
    for (auto& c : p.coeffs) {
        int v = 0;
        for (unsigned k = 0; k < eta; ++k)
            v += static_cast<int>(rng.bit()) - static_cast<int>(rng.bit());
        c = from_centered(v, m);
    }
    return p;
}

}  // namespace syfh
