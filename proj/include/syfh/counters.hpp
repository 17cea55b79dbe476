#pragma once

#include <atomic>
#include <cstdint>

namespace syfh::counters {

// Process-wide instrumentation. encrypt() is the only code path that bumps
// encryptions; add_ct and scalar_mul_ct bump their own counters. The
// synthesis layer's encryption-free contract and the per-vector operation
// counts are asserted against snapshots of these.
namespace detail {
inline std::atomic<std::uint64_t> encryptions{0};
inline std::atomic<std::uint64_t> ct_additions{0};
inline std::atomic<std::uint64_t> ct_scalar_muls{0};
}  // namespace detail

struct Snapshot {
    std::uint64_t encryptions = 0;
    std::uint64_t ct_additions = 0;
    std::uint64_t ct_scalar_muls = 0;

    friend Snapshot operator-(const Snapshot& a, const Snapshot& b) {
        return Snapshot{a.encryptions - b.encryptions,
                        a.ct_additions - b.ct_additions,
                        a.ct_scalar_muls - b.ct_scalar_muls};
    }
    bool operator==(const Snapshot&) const = default;
};

inline Snapshot snapshot() {
    return Snapshot{detail::encryptions.load(std::memory_order_relaxed),
                    detail::ct_additions.load(std::memory_order_relaxed),
                    detail::ct_scalar_muls.load(std::memory_order_relaxed)};
}

inline void note_encryption() { detail::encryptions.fetch_add(1, std::memory_order_relaxed); }
inline void note_ct_addition() { detail::ct_additions.fetch_add(1, std::memory_order_relaxed); }
inline void note_ct_scalar_mul() { detail::ct_scalar_muls.fetch_add(1, std::memory_order_relaxed); }

}  // namespace syfh::counters
