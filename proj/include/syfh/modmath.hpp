#pragma once

#include <cstdint>
#include <array>
#include <bit>

namespace syfh {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

constexpr bool is_power_of_two(u64 v) { return v != 0 && (v & (v - 1)) == 0; }

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;  // a, b < m <= 2^62, no overflow
    return s >= m ? s - m : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

constexpr u64 neg_mod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

constexpr u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 acc = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

// Extended-gcd inverse; works for any modulus with gcd(a, m) = 1.
constexpr u64 inv_mod(u64 a, u64 m) {
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        i128 q = r / new_r;
        i128 tmp = t - q * new_t;
        t = new_t; new_t = tmp;
        tmp = r - q * new_r;
        r = new_r; new_r = tmp;
    }
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

// Centered representative in [-(m-1)/2, (m-1)/2] for odd m.
constexpr i64 centered(u64 v, u64 m) {
    return v > m / 2 ? static_cast<i64>(v) - static_cast<i64>(m) : static_cast<i64>(v);
}

constexpr u64 from_centered(i64 v, u64 m) {
    return v >= 0 ? static_cast<u64>(v) % m : m - (static_cast<u64>(-v) % m);
}

// Nearest integer to num/den, den > 0, ties rounded away from zero.
constexpr i128 round_div(i128 num, i128 den) {
    if (num >= 0) return (num + den / 2) / den;
    return -((-num + den / 2) / den);
}

constexpr u64 bit_reverse(u64 v, unsigned bits) {
    u64 r = 0;
    for (unsigned i = 0; i < bits; ++i) {
        r = (r << 1) | (v & 1);
        v >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace syfh
