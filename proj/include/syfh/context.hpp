#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <vector>

#include "syfh/ntt.hpp"
#include "syfh/params.hpp"

namespace syfh {

/// Immutable per-ParamSet working state: one NTT table per chain level
/// (over the composite level modulus) plus the slot transform over Z_t.
/// Safe to share across threads for concurrent reads.
class Context {
public:
    explicit Context(ParamSet ps) : params_(make_params(std::move(ps))) {
        const std::size_t n = params_.ring_degree;
        for (std::size_t level = 0; level < params_.q_chain.size(); ++level) {
            std::span<const u64> factors(params_.q_chain.data(), level + 1);
            level_tables_.push_back(NttTables::build(n, factors));
        }
        const u64 t[] = {params_.plain_modulus};
        slot_tables_ = NttTables::build(n, t);
        const unsigned logn = static_cast<unsigned>(std::countr_zero(n));
        brv_.resize(n);
        for (std::size_t i = 0; i < n; ++i) brv_[i] = bit_reverse(i, logn);
    }

    const ParamSet& params() const { return params_; }
    std::size_t ring_degree() const { return params_.ring_degree; }
    u64 plain_modulus() const { return params_.plain_modulus; }
    std::size_t top_level() const { return params_.top_level(); }

    const NttTables& tables_at(std::size_t level) const { return level_tables_.at(level); }
    const NttTables& slot_tables() const { return slot_tables_; }
    u64 level_modulus(std::size_t level) const { return level_tables_.at(level).modulus; }
    u64 delta_at(std::size_t level) const { return params_.delta_at(level); }
    u64 wrap_residue(std::size_t level) const { return level_modulus(level) % params_.plain_modulus; }
    std::size_t bitrev(std::size_t i) const { return brv_[i]; }

private:
    ParamSet params_;
    std::vector<NttTables> level_tables_;
    NttTables slot_tables_;
    std::vector<std::size_t> brv_;
};

}  // namespace syfh
