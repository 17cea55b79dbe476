#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "syfh/errors.hpp"
#include "syfh/modmath.hpp"

namespace syfh {

/// Validated scheme parameters. The ciphertext modulus at level l is the
/// product q_chain[0] * ... * q_chain[l]; fresh ciphertexts live at the top
/// level and modulus switching walks down the chain. Immutable after
/// construction via make_params.
struct ParamSet {
    std::size_t ring_degree = 0;        // N, power of two
    u64 plain_modulus = 0;              // t, prime, t = 1 mod 2N
    std::vector<u64> q_chain;           // ascending primes, each = 1 mod 2N
    double sigma = 3.2;                 // noise sampler width parameter
    std::uint32_t w_log = 6;            // log2 of the relinearization base
    std::uint32_t pool_size = 16;       // s, zero-ciphertext count for the pool strategy

    std::size_t top_level() const { return q_chain.size() - 1; }

    u64 level_modulus(std::size_t level) const {
        u64 q = 1;
        for (std::size_t i = 0; i <= level; ++i) q *= q_chain[i];
        return q;
    }

    u64 delta_at(std::size_t level) const { return level_modulus(level) / plain_modulus; }

    /// Q_level mod t: the residue that scales every mod-t plaintext wrap in
    /// the instantiated noise bounds. The built-in profiles pick chain primes
    /// = 1 mod t so this is 1.
    u64 wrap_residue(std::size_t level) const { return level_modulus(level) % plain_modulus; }

    /// Centered-binomial parameter; support of the noise sampler is
    /// [-noise_eta, noise_eta].
    unsigned noise_eta() const { return 2 * static_cast<unsigned>(std::ceil(sigma)); }

    /// Digits needed to decompose a centered level-l residue in signed
    /// base-2^w_log.
    std::size_t relin_digits(std::size_t level) const {
        const u64 q = level_modulus(level);
        std::size_t digits = 0;
        u128 span = 1;
        while (span < q) { span <<= w_log; ++digits; }
        return digits;
    }

    bool operator==(const ParamSet&) const = default;
};

/// Sieve for chain primes p = 1 mod lcm(2N, t), scanning upward from
/// min_value. The 2N congruence makes the primes NTT-friendly; the extra
/// t congruence keeps Q mod t = 1, which minimizes the plaintext-wrap terms
/// in the noise bounds.
inline std::vector<u64> find_chain_primes(std::size_t n, u64 t, u64 min_value, std::size_t count) {
    const u64 step = 2 * static_cast<u64>(n) * t;  // lcm: t prime, t != 2
    std::vector<u64> out;
    u64 p = (min_value / step) * step + 1;
    while (p < min_value) p += step;
    while (out.size() < count) {
        if (is_prime(p)) out.push_back(p);
        p += step;
    }
    return out;
}

inline void validate_params(const ParamSet& ps) {
    const std::size_t n = ps.ring_degree;
    if (!is_power_of_two(static_cast<u64>(n)) || n < 8)
        throw InvalidDegree("ring degree must be a power of two, at least 8");
    const u64 two_n = 2 * static_cast<u64>(n);
    if (!is_prime(ps.plain_modulus) || ps.plain_modulus % two_n != 1)
        throw InvalidModulus("plaintext modulus must be prime and 1 mod 2N");
    if (ps.q_chain.empty()) throw InvalidModulus("modulus chain is empty");
    u128 q = 1;
    u64 prev = 0;
    for (u64 p : ps.q_chain) {
        if (!is_prime(p) || p % two_n != 1)
            throw InvalidModulus("chain primes must be prime and 1 mod 2N");
        if (p <= prev) throw InvalidModulus("chain primes must be strictly ascending");
        prev = p;
        q *= p;
    }
    if (q <= u128(2) * ps.plain_modulus)
        throw InvalidModulus("chain product must exceed 2t");
    // Ciphertext multiplication lifts to centered integers and convolves
    // exactly in 128-bit arithmetic; N * (Q/2)^2 must stay below 2^126.
    const u128 half = q / 2;
    if (half != 0 && u128(n) > (u128(1) << 126) / half / half)
        throw InvalidModulus("chain product too large for exact tensoring");
    if (ps.sigma <= 0.0) throw InvalidModulus("sigma must be positive");
    if (ps.w_log < 1 || ps.w_log > 32) throw InvalidModulus("w_log out of range");
    if (ps.pool_size == 0) throw InvalidModulus("pool size must be positive");
}

inline ParamSet make_params(ParamSet fields) {
    validate_params(fields);
    return fields;
}

/// Named presets:
///   "desk" -- N=1024, t=12289, two 30-bit chain primes; the everyday profile.
///   "toy"  -- N=8, t=17, three 20-bit chain primes; headroom for noise and
///             chain-walk experiments at a size where exact oracles are cheap.
inline ParamSet make_params(std::string_view profile) {
    ParamSet ps;
    if (profile == "desk") {
        ps.ring_degree = 1024;
        ps.plain_modulus = 12289;
        ps.q_chain = find_chain_primes(1024, 12289, u64(1) << 29, 2);
        ps.sigma = 1.0;
        ps.w_log = 6;
        ps.pool_size = 16;
    } else if (profile == "toy") {
        ps.ring_degree = 8;
        ps.plain_modulus = 17;
        ps.q_chain = find_chain_primes(8, 17, u64(1) << 19, 3);
        ps.sigma = 3.2;
        ps.w_log = 4;
        ps.pool_size = 16;
    } else {
        throw Error("unknown parameter profile: " + std::string(profile));
    }
    return make_params(ps);
}

}  // namespace syfh
