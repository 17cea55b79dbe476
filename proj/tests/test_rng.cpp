#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "syfh/rng.hpp"

using namespace syfh;

TEST_CASE("same seed, same stream; no seed, distinct streams") {
    Rng a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.u64bits() == b.u64bits());
    Rng c, d;
    bool all_equal = true;
    for (int i = 0; i < 8; ++i) all_equal &= c.u64bits() == d.u64bits();
    CHECK_FALSE(all_equal);
}

TEST_CASE("below() stays in range over awkward bounds") {
    Rng rng(301);
    for (u64 bound : {2ull, 3ull, 17ull, 97ull, (1ull << 62) + 12345ull}) {
        for (int i = 0; i < 1000; ++i) CHECK(rng.below(bound) < bound);
    }
}

TEST_CASE("ternary sampler support is {0, 1, m-1}") {
    Rng rng(302);
    const u64 m = 97;
    std::size_t nonzero = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const RingPoly p = sample_ternary(64, m, rng);
        for (u64 c : p.coeffs) {
            CHECK((c == 0 || c == 1 || c == m - 1));
            nonzero += c != 0;
        }
    }
    // P(zero) = 1/2; a fully zero stream would mean a broken sampler
    CHECK(nonzero > 200 * 64 / 4);
}

TEST_CASE("noise sampler tail bound: sigma = 3.2") {
    Rng rng(303);
    const u64 m = 12289;
    const unsigned eta = 8;  // 2 * ceil(3.2)
    i64 maxabs = 0;
    std::size_t draws = 0;
    while (draws < 100000) {
        const RingPoly p = sample_noise(64, m, eta, rng);
        draws += 64;
        const i64 v = poly_linf_centered(p);
        if (v > maxabs) maxabs = v;
    }
    CHECK(maxabs <= i64(6.0 * 3.2));  // 6-sigma cut
    CHECK(maxabs <= i64(eta));        // hard support bound of the distribution
}

TEST_CASE("uniform sampler passes a chi-square test at the 0.001 level") {
    Rng rng(304);
    const u64 m = 17;
    std::vector<std::size_t> counts(m, 0);
    const std::size_t draws = 100000;
    std::size_t done = 0;
    while (done < draws) {
        const RingPoly p = sample_uniform(100, m, rng);
        for (u64 c : p.coeffs) ++counts[c];
        done += 100;
    }
    const double stat = oracle::chi_square_uniform(counts, draws);
    // chi-square critical value, 16 degrees of freedom, alpha = 0.001
    CHECK(stat < 39.252);
}
