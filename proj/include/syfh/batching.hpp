#pragma once

#include <cstdint>
#include <vector>

#include "syfh/context.hpp"
#include "syfh/errors.hpp"

namespace syfh {

/// A plaintext vector over Z_t; entry i is slot i. Shorter-than-N vectors are
/// zero-padded on encode and truncated on decode.
using SlotVector = std::vector<u64>;

/// Plaintext polynomial over modulus t, coefficient domain.
struct Plaintext {
    RingPoly poly;
    bool operator==(const Plaintext&) const = default;
};

/// Encode under the slot isomorphism Z_t[x]/(x^N+1) = Z_t^N: slot i is the
/// evaluation of the polynomial at psi_t^(2i+1), so ring addition and ring
/// multiplication act slotwise. This is the structural property vector-level
/// synthesis relies on.
inline Plaintext encode(const Context& ctx, const SlotVector& v) {
    const std::size_t n = ctx.ring_degree();
    const u64 t = ctx.plain_modulus();
    if (v.size() > n) throw DimensionOutOfRange("more slots than ring degree");
    for (u64 s : v)
        if (s >= t) throw SlotOverflow("slot value not reduced mod t");
    RingPoly evals = RingPoly::zero(n, t, Domain::eval);
    for (std::size_t i = 0; i < v.size(); ++i) evals.coeffs[ctx.bitrev(i)] = v[i];
    return Plaintext{ntt_inverse(evals, ctx.slot_tables())};
}

/// Inverse of encode; returns the first want_slots slots (default: all N).
inline SlotVector decode(const Context& ctx, const Plaintext& pt, std::size_t want_slots = 0) {
    const std::size_t n = ctx.ring_degree();
    if (want_slots == 0) want_slots = n;
    if (want_slots > n) throw DimensionOutOfRange("more slots than ring degree");
    const RingPoly evals = ntt_forward(pt.poly, ctx.slot_tables());
    SlotVector v(want_slots);
    for (std::size_t i = 0; i < want_slots; ++i) v[i] = evals.coeffs[ctx.bitrev(i)];
    return v;
}

}  // namespace syfh
