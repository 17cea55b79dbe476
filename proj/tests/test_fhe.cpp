#include <doctest.h>

#include "oracles.hpp"
#include "syfh/noise.hpp"

using namespace syfh;

namespace {

struct Fixture {
    Context ctx;
    SecretKey sk;
    PublicKey pk;
    RelinKey rlk;
    Rng rng;

    explicit Fixture(const char* profile, u64 seed) : ctx(make_params(profile)), rng(seed) {
        std::tie(sk, pk, rlk) = keygen(ctx, rng);
    }

    SlotVector random_vector() {
        SlotVector v(ctx.ring_degree());
        for (auto& s : v) s = rng.below(ctx.plain_modulus());
        return v;
    }
};

}  // namespace

TEST_CASE("keygen invariants") {
    Fixture f("toy", 501);
    const u64 q = f.ctx.level_modulus(f.ctx.top_level());
    const unsigned eta = f.ctx.params().noise_eta();

    SUBCASE("secret key is ternary") {
        for (u64 c : f.sk.s.coeffs) CHECK((c == 0 || c == 1 || c == q - 1));
    }
    SUBCASE("public key residual is fresh noise") {
        const RingPoly resid =
            poly_add(f.pk.p0, oracle::negacyclic_mul(f.pk.p1, f.sk.s));
        CHECK(poly_linf_centered(resid) <= i64(eta));
    }
    SUBCASE("relin key digit identities, exact arithmetic") {
        const RingPoly s2 = oracle::negacyclic_mul(f.sk.s, f.sk.s);
        const u64 w = u64(1) << f.rlk.w_log;
        u64 w_pow = 1;
        for (const auto& [rk0, rk1] : f.rlk.digits) {
            RingPoly resid = poly_add(rk0, oracle::negacyclic_mul(rk1, f.sk.s));
            resid = poly_sub(resid, poly_scalar_mul(s2, w_pow));
            CHECK(poly_linf_centered(resid) <= i64(eta));
            w_pow = mul_mod(w_pow, w, q);
        }
    }
    SUBCASE("encrypt/decrypt zero") {
        const Plaintext zero = encode(f.ctx, SlotVector(8, 0));
        const Ciphertext ct = encrypt(f.ctx, f.pk, zero, f.rng);
        CHECK(decrypt(f.ctx, f.sk, ct) == zero);
    }
}

TEST_CASE("encrypt/decrypt on random plaintexts at desk parameters") {
    Fixture f("desk", 502);
    for (int trial = 0; trial < 1000; ++trial) {
        const SlotVector v = f.random_vector();
        const Ciphertext ct = encrypt(f.ctx, f.pk, encode(f.ctx, v), f.rng);
        CHECK(decode(f.ctx, decrypt(f.ctx, f.sk, ct)) == v);
    }
}

TEST_CASE("fresh encryptions of the same plaintext differ") {
    Fixture f("toy", 503);
    const Plaintext pt = encode(f.ctx, SlotVector{1, 2, 3});
    const Ciphertext a = encrypt(f.ctx, f.pk, pt, f.rng);
    const Ciphertext b = encrypt(f.ctx, f.pk, pt, f.rng);
    CHECK_FALSE(a == b);
}

TEST_CASE("fresh noise stays under the expansion bound") {
    Fixture f("toy", 504);
    const std::size_t n = f.ctx.ring_degree();
    const unsigned eta = f.ctx.params().noise_eta();
    const u64 q = f.ctx.level_modulus(f.ctx.top_level());
    const u64 delta = f.ctx.delta_at(f.ctx.top_level());
    // B_fresh = ||e1|| + ||u|| ||e|| N + ||e2|| ||s|| N = eta (1 + 2N)
    const i64 bound = i64(eta) * i64(1 + 2 * n);
    for (int trial = 0; trial < 200; ++trial) {
        const SlotVector v = f.random_vector();
        const Plaintext pt = encode(f.ctx, v);
        const Ciphertext ct = encrypt(f.ctx, f.pk, pt, f.rng);
        RingPoly resid = detail::raw_decrypt(f.ctx, f.sk, ct);
        for (std::size_t i = 0; i < n; ++i)
            resid.coeffs[i] =
                sub_mod(resid.coeffs[i], mul_mod(delta, pt.poly.coeffs[i], q), q);
        CHECK(poly_linf_centered(resid) <= bound);
    }
}

TEST_CASE("noiseless handcrafted ciphertext decrypts exactly") {
    Fixture f("toy", 505);
    const Plaintext pt = encode(f.ctx, SlotVector{4, 16, 0, 9, 1, 2, 3, 5});
    Ciphertext ct = zero_ciphertext(f.ctx, f.ctx.top_level());
    ct.parts[0] = detail::scaled_plaintext(f.ctx, pt, ct.level);
    CHECK(decrypt(f.ctx, f.sk, ct) == pt);
}

TEST_CASE("noise at the decision radius flips a coefficient") {
    Fixture f("toy", 506);
    const std::size_t top = f.ctx.top_level();
    const u64 q = f.ctx.level_modulus(top);
    const u64 t = f.ctx.plain_modulus();
    const Plaintext pt = encode(f.ctx, SlotVector{4, 16, 0, 9, 1, 2, 3, 5});
    Ciphertext ct = zero_ciphertext(f.ctx, top);
    ct.parts[0] = detail::scaled_plaintext(f.ctx, pt, top);
    const u64 inject = q / (2 * t) + 1;  // ceil(q/2t) for q odd
    ct.parts[0].coeffs[0] = add_mod(ct.parts[0].coeffs[0], inject, q);
    CHECK_FALSE(decrypt(f.ctx, f.sk, ct) == pt);
}

TEST_CASE("three-part ciphertexts cannot be decrypted directly") {
    Fixture f("toy", 507);
    const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector{1}), f.rng);
    const Ciphertext b = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector{2}), f.rng);
    const Ciphertext prod = mul_ct(f.ctx, a, b);
    REQUIRE(prod.parts.size() == 3);
    CHECK_THROWS_AS(decrypt(f.ctx, f.sk, prod), UnrelinearizedCiphertext);
    CHECK_THROWS_AS(scalar_mul_ct(f.ctx, prod, 2), WrongPartCount);
    CHECK_THROWS_AS(mod_switch(f.ctx, prod), WrongPartCount);
    CHECK_THROWS_AS(mul_ct(f.ctx, prod, a), WrongPartCount);
}

TEST_CASE("homomorphic addition") {
    Fixture f("toy", 508);
    const u64 t = f.ctx.plain_modulus();

    SUBCASE("adding an encryption of zero is plaintext-invisible") {
        const SlotVector v = f.random_vector();
        const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, v), f.rng);
        const Ciphertext z = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector(8, 0)), f.rng);
        CHECK(decode(f.ctx, decrypt(f.ctx, f.sk, add_ct(a, z))) == v);
    }
    SUBCASE("decrypts to the slotwise sum mod t") {
        for (int trial = 0; trial < 500; ++trial) {
            const SlotVector u = f.random_vector(), v = f.random_vector();
            const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, u), f.rng);
            const Ciphertext b = encrypt(f.ctx, f.pk, encode(f.ctx, v), f.rng);
            const SlotVector got = decode(f.ctx, decrypt(f.ctx, f.sk, add_ct(a, b)));
            for (std::size_t i = 0; i < got.size(); ++i)
                CHECK(got[i] == (u[i] + v[i]) % t);
        }
    }
    SUBCASE("level mismatch is rejected") {
        const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector{1}), f.rng);
        const Ciphertext b = mod_switch(f.ctx, a);
        CHECK_THROWS_AS(add_ct(a, b), LevelMismatch);
    }
}

TEST_CASE("plaintext-scalar multiplication") {
    Fixture f("toy", 509);
    const u64 t = f.ctx.plain_modulus();
    const SlotVector v = f.random_vector();
    const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, v), f.rng);

    SUBCASE("k = 1 is the identity on the plaintext") {
        CHECK(decode(f.ctx, decrypt(f.ctx, f.sk, scalar_mul_ct(f.ctx, a, 1))) == v);
        CHECK(scalar_mul_ct(f.ctx, a, 1) == a);  // centered lift of 1 is 1
    }
    SUBCASE("k = 0 is the exact zero ciphertext") {
        const Ciphertext z = scalar_mul_ct(f.ctx, a, 0);
        CHECK(z == zero_ciphertext(f.ctx, a.level));
        CHECK(decode(f.ctx, decrypt(f.ctx, f.sk, z)) == SlotVector(8, 0));
    }
    SUBCASE("decrypts to k times the plaintext, all k") {
        for (u64 k = 0; k < t; ++k) {
            const SlotVector got = decode(f.ctx, decrypt(f.ctx, f.sk, scalar_mul_ct(f.ctx, a, k)));
            for (std::size_t i = 0; i < got.size(); ++i)
                CHECK(got[i] == mul_mod(k, v[i], t));
        }
    }
}

TEST_CASE("multiplication, relinearization, and the three-part decryption oracle") {
    Fixture f("toy", 510);

    SUBCASE("multiplying by an encryption of all-ones is the identity") {
        const SlotVector v = f.random_vector();
        const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, v), f.rng);
        const Ciphertext ones = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector(8, 1)), f.rng);
        const Ciphertext prod = relinearize(f.ctx, mul_ct(f.ctx, a, ones), f.rlk);
        CHECK(decode(f.ctx, decrypt(f.ctx, f.sk, prod)) == v);
    }
    SUBCASE("multiplying by an encryption of zero gives zero") {
        const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, f.random_vector()), f.rng);
        const Ciphertext z = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector(8, 0)), f.rng);
        const Ciphertext prod = relinearize(f.ctx, mul_ct(f.ctx, a, z), f.rlk);
        CHECK(decode(f.ctx, decrypt(f.ctx, f.sk, prod)) == SlotVector(8, 0));
    }
    SUBCASE("decrypt_3 agrees with decrypt-after-relinearize") {
        for (int trial = 0; trial < 100; ++trial) {
            const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, f.random_vector()), f.rng);
            const Ciphertext b = encrypt(f.ctx, f.pk, encode(f.ctx, f.random_vector()), f.rng);
            const Ciphertext prod3 = mul_ct(f.ctx, a, b);
            const Ciphertext prod2 = relinearize(f.ctx, prod3, f.rlk);
            CHECK(detail::decrypt_any(f.ctx, f.sk, prod3) == decrypt(f.ctx, f.sk, prod2));
        }
    }
    SUBCASE("relinearization noise increase is bounded") {
        const u64 eta_relin = u64(f.ctx.params().relin_digits(f.ctx.top_level())) *
                              ((u64(1) << f.ctx.params().w_log) / 2) *
                              f.ctx.params().noise_eta() * f.ctx.ring_degree();
        for (int trial = 0; trial < 50; ++trial) {
            const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, f.random_vector()), f.rng);
            const Ciphertext b = encrypt(f.ctx, f.pk, encode(f.ctx, f.random_vector()), f.rng);
            const Ciphertext prod3 = mul_ct(f.ctx, a, b);
            const Ciphertext prod2 = relinearize(f.ctx, prod3, f.rlk);
            // measured against the shared decoded plaintext of both shapes
            const u64 q = f.ctx.level_modulus(prod3.level);
            const u64 delta = f.ctx.delta_at(prod3.level);
            const Plaintext pt = detail::decrypt_any(f.ctx, f.sk, prod3);
            auto resid = [&](const Ciphertext& ct) {
                RingPoly r = detail::raw_decrypt(f.ctx, f.sk, ct);
                for (std::size_t i = 0; i < r.coeffs.size(); ++i)
                    r.coeffs[i] = sub_mod(r.coeffs[i], mul_mod(delta, pt.poly.coeffs[i], q), q);
                return poly_linf_centered(r);
            };
            CHECK(resid(prod2) <= resid(prod3) + i64(eta_relin));
        }
    }
    SUBCASE("relinearize insists on three parts") {
        const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector{1}), f.rng);
        CHECK_THROWS_AS(relinearize(f.ctx, a, f.rlk), WrongPartCount);
    }
}

TEST_CASE("slotwise product against the plaintext oracle at desk parameters") {
    Fixture f("desk", 511);
    const u64 t = f.ctx.plain_modulus();
    for (int trial = 0; trial < 100; ++trial) {
        const SlotVector u = f.random_vector(), v = f.random_vector();
        const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, u), f.rng);
        const Ciphertext b = encrypt(f.ctx, f.pk, encode(f.ctx, v), f.rng);
        const Ciphertext prod = relinearize(f.ctx, mul_ct(f.ctx, a, b), f.rlk);
        const SlotVector got = decode(f.ctx, decrypt(f.ctx, f.sk, prod));
        bool ok = true;
        for (std::size_t i = 0; i < got.size(); ++i)
            ok = ok && got[i] == mul_mod(u[i], v[i], t);
        CHECK(ok);
    }
}

TEST_CASE("modulus switching") {
    Fixture f("toy", 512);

    SUBCASE("decryption is preserved down the whole chain") {
        for (int trial = 0; trial < 500; ++trial) {
            const SlotVector v = f.random_vector();
            Ciphertext ct = encrypt(f.ctx, f.pk, encode(f.ctx, v), f.rng);
            while (ct.level > 0) {
                ct = mod_switch(f.ctx, ct);
                CHECK(decode(f.ctx, decrypt(f.ctx, f.sk, ct)) == v);
            }
        }
    }
    SUBCASE("level 0 is the bottom") {
        Ciphertext ct = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector{5}), f.rng);
        ct = mod_switch(f.ctx, mod_switch(f.ctx, ct));
        CHECK(ct.level == 0);
        CHECK_THROWS_AS(mod_switch(f.ctx, ct), BottomOfChain);
    }
}

TEST_CASE("multiplication works at lower chain levels") {
    Fixture f("toy", 515);
    const u64 t = f.ctx.plain_modulus();
    for (std::size_t drops : {1u, 2u}) {
        for (int trial = 0; trial < 50; ++trial) {
            const SlotVector u = f.random_vector(), v = f.random_vector();
            Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, u), f.rng);
            Ciphertext b = encrypt(f.ctx, f.pk, encode(f.ctx, v), f.rng);
            for (std::size_t k = 0; k < drops; ++k) {
                a = mod_switch(f.ctx, a);
                b = mod_switch(f.ctx, b);
            }
            // the relin key reduces level-wise; the digit count shrinks with q
            const Ciphertext prod = relinearize(f.ctx, mul_ct(f.ctx, a, b), f.rlk);
            CHECK(prod.level == f.ctx.top_level() - drops);
            const SlotVector got = decode(f.ctx, decrypt(f.ctx, f.sk, prod));
            for (std::size_t i = 0; i < got.size(); ++i)
                CHECK(got[i] == mul_mod(u[i], v[i], t));
        }
    }
}

TEST_CASE("relinearize rejects keys that do not cover the level") {
    Fixture f("toy", 516);
    const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector{3}), f.rng);
    const Ciphertext prod = mul_ct(f.ctx, a, a);

    RelinKey truncated = f.rlk;
    truncated.digits.resize(2);
    CHECK_THROWS_AS(relinearize(f.ctx, prod, truncated), KeyMismatch);

    RelinKey wrong_base = f.rlk;
    wrong_base.w_log = f.rlk.w_log + 1;
    CHECK_THROWS_AS(relinearize(f.ctx, prod, wrong_base), KeyMismatch);
}

TEST_CASE("only encrypt moves the encryption counter") {
    Fixture f("toy", 514);
    const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, f.random_vector()), f.rng);
    const Ciphertext b = encrypt(f.ctx, f.pk, encode(f.ctx, f.random_vector()), f.rng);

    const auto before = counters::snapshot();
    (void)add_ct(a, b);
    (void)scalar_mul_ct(f.ctx, a, 5);
    const Ciphertext prod = relinearize(f.ctx, mul_ct(f.ctx, a, b), f.rlk);
    (void)mod_switch(f.ctx, prod);
    (void)decrypt(f.ctx, f.sk, a);
    (void)measure_noise(f.ctx, a, f.sk);
    CHECK((counters::snapshot() - before).encryptions == 0);

    (void)encrypt(f.ctx, f.pk, encode(f.ctx, f.random_vector()), f.rng);
    CHECK((counters::snapshot() - before).encryptions == 1);
}

TEST_CASE("mul_ct and add_ct reject mismatched shapes") {
    Fixture f("toy", 513);
    const Ciphertext a = encrypt(f.ctx, f.pk, encode(f.ctx, SlotVector{1}), f.rng);
    const Ciphertext low = mod_switch(f.ctx, a);
    CHECK_THROWS_AS(mul_ct(f.ctx, a, low), LevelMismatch);
    Ciphertext three = mul_ct(f.ctx, a, a);
    CHECK_THROWS_AS(add_ct(a, three), WrongPartCount);
    CHECK(add_ct(three, three).parts.size() == 3);
}
