// Minimal tour: generate keys, precompute a basis, synthesize ciphertexts
// without calling the encryptor, and check them against fresh encryptions.

#include <iostream>

#include "syfh/syfh.hpp"

using namespace syfh;

int main() {
    const Context ctx(make_params("desk"));
    Rng rng(2024);

    auto [sk, pk, rlk] = keygen(ctx, rng);
    std::cout << "N = " << ctx.ring_degree() << ", t = " << ctx.plain_modulus()
              << ", chain levels = " << ctx.params().q_chain.size() << "\n";

    // Offline: encrypt the unit vectors once (d+1 encryptions total).
    const std::size_t d = 8;
    auto [basis, mask] = precompute_basis_and_noise(ctx, d, pk, MaskStrategy::single, rng);

    // Online: ciphertexts by linear combination plus a blinded zero.
    const auto before = counters::snapshot();
    SlotVector m{3, 141, 59, 2653, 5, 897, 9323, 84};
    const Ciphertext synthesized = synth_enc(ctx, m, basis, mask, rng);
    const auto delta = counters::snapshot() - before;

    std::cout << "synthesized one ciphertext with " << delta.encryptions << " encryptions, "
              << delta.ct_scalar_muls << " scalar mults, " << delta.ct_additions
              << " additions\n";

    const SlotVector back = decode(ctx, decrypt(ctx, sk, synthesized), d);
    std::cout << "decrypts back to input: " << (back == m ? "yes" : "NO") << "\n";

    // Synthesized ciphertexts compose with the usual homomorphic operations.
    const Ciphertext fresh = encrypt(ctx, pk, encode(ctx, m), rng);
    const Ciphertext sum = add_ct(synthesized, fresh);
    const SlotVector doubled = decode(ctx, decrypt(ctx, sk, sum), d);
    bool ok = true;
    for (std::size_t i = 0; i < d; ++i)
        ok = ok && doubled[i] == (2 * m[i]) % ctx.plain_modulus();
    std::cout << "synthesized + fresh decrypts to 2m: " << (ok ? "yes" : "NO") << "\n";

    const NoiseReport rep = measure_noise(ctx, sum, sk);
    std::cout << "sum noise |e| = " << rep.linf << ", budget " << rep.budget_bits << " bits\n";
    return ok && back == m ? 0 : 1;
}
