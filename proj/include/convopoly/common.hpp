#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace convopoly {

// Thrown when a configurable enumeration or size ceiling is hit (cycle cap,
// brute-force subset cap, graph dimension cap).
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown on malformed external input (files, CLI-supplied JSON).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant that should be unreachable is violated.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// Counters auditing the arithmetic path. Every exact decision procedure
// (integer convolution counting, rational simplex, hull queries) bumps
// `exact_decisions`; any code that decided something with floating point
// would have to bump `float_fallbacks`. No library code path does, and the
// property suite asserts the counter stays at zero while cases run.
struct ArithStats {
    std::atomic<std::uint64_t> exact_decisions{0};
    std::atomic<std::uint64_t> float_fallbacks{0};

    void note_exact() { exact_decisions.fetch_add(1, std::memory_order_relaxed); }
    void note_float() { float_fallbacks.fetch_add(1, std::memory_order_relaxed); }
};

inline ArithStats& arith_stats() {
    static ArithStats stats;
    return stats;
}

} // namespace convopoly
