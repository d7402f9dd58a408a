#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "convopoly/common.hpp"
#include "convopoly/convolution.hpp"
#include "convopoly/debruijn.hpp"
#include "convopoly/decomposition.hpp"
#include "convopoly/rational.hpp"

namespace convopoly {

inline constexpr long long kDefaultCycleCap = 1000000;

namespace detail {

// Johnson-style elementary circuit enumeration. Roots are tried in ascending
// order and only vertices >= root participate, so every circuit is emitted
// exactly once, already rotated to start at its smallest vertex. The usual
// strongly-connected-component prefilter is skipped; on graphs this small the
// blocked bookkeeping alone is fast enough.
template <typename Callback>
class CycleEnumerator {
  public:
    CycleEnumerator(const ShiftGraph& g, Callback& cb, long long cap)
        : g_(g),
          cb_(cb),
          cap_(cap),
          blocked_(static_cast<std::size_t>(g.vertex_count), 0),
          block_lists_(static_cast<std::size_t>(g.vertex_count)) {}

    long long run() {
        for (root_ = 0; root_ < g_.vertex_count; ++root_) {
            std::fill(blocked_.begin(), blocked_.end(), 0);
            for (auto& bl : block_lists_) bl.clear();
            path_.clear();
            circuit(root_);
        }
        return emitted_;
    }

  private:
    bool circuit(int v) {
        bool found = false;
        path_.push_back(v);
        blocked_[static_cast<std::size_t>(v)] = 1;
        for (int k = 0; k < g_.out_degree; ++k) {
            const int w = g_.edge(g_.edge_id(v, k)).to;
            if (w < root_) continue;
            if (w == root_) {
                emit();
                found = true;
            } else if (!blocked_[static_cast<std::size_t>(w)]) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int k = 0; k < g_.out_degree; ++k) {
                const int w = g_.edge(g_.edge_id(v, k)).to;
                if (w < root_) continue;
                auto& bl = block_lists_[static_cast<std::size_t>(w)];
                if (std::find(bl.begin(), bl.end(), v) == bl.end()) bl.push_back(v);
            }
        }
        path_.pop_back();
        return found;
    }

    void unblock(int v) {
        blocked_[static_cast<std::size_t>(v)] = 0;
        auto waiting = std::move(block_lists_[static_cast<std::size_t>(v)]);
        block_lists_[static_cast<std::size_t>(v)].clear();
        for (int u : waiting) {
            if (blocked_[static_cast<std::size_t>(u)]) unblock(u);
        }
    }

    void emit() {
        if (emitted_ >= cap_) {
            throw CapExceeded("cycle enumeration exceeded cap of " + std::to_string(cap_));
        }
        ++emitted_;
        cb_(path_);
    }

    const ShiftGraph& g_;
    Callback& cb_;
    long long cap_;
    int root_ = 0;
    long long emitted_ = 0;
    std::vector<char> blocked_;
    std::vector<std::vector<int>> block_lists_;
    std::vector<int> path_;
};

} // namespace detail

// Streams every elementary circuit of g to cb in deterministic order:
// ascending smallest vertex, then depth-first with out-slots in ascending
// order. Throws CapExceeded when more than cap circuits exist.
template <typename Callback>
long long for_each_cycle(const ShiftGraph& g, Callback&& cb, long long cap = kDefaultCycleCap) {
    if (cap < 0) throw std::invalid_argument("for_each_cycle: negative cap");
    detail::CycleEnumerator<Callback> enumerator(g, cb, cap);
    return enumerator.run();
}

inline std::vector<std::vector<int>> enumerate_cycles(const ShiftGraph& g,
                                                      long long cap = kDefaultCycleCap) {
    std::vector<std::vector<int>> out;
    for_each_cycle(g, [&](const std::vector<int>& c) { out.push_back(c); }, cap);
    return out;
}

inline long long count_cycles(const ShiftGraph& g, long long cap = kDefaultCycleCap) {
    return for_each_cycle(g, [](const std::vector<int>&) {}, cap);
}

// Rotates a simple cycle so its lexicographically largest label comes first.
// This pins the phase used when reading a cyclic set off the cycle; the
// derived correlation vector is invariant under rotation, the set itself is
// only defined up to a shift.
inline std::vector<int> rotate_to_largest(std::vector<int> cycle) {
    if (cycle.empty()) throw std::invalid_argument("rotate_to_largest: empty cycle");
    const auto it = std::max_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
    return cycle;
}

// Reads the periodic set generated by a cycle of the plain graph: position k
// belongs to the set iff the k-th vertex label starts with 1. With the phase
// pinned by rotate_to_largest this reproduces one period of the bi-infinite
// string the cycle spells.
inline CyclicSet cycle_to_cyclic_set(const ShiftGraph& g, const std::vector<int>& cycle) {
    if (g.kind != GraphKind::debruijn) {
        throw std::invalid_argument("cycle_to_cyclic_set: plain graph required");
    }
    if (!is_simple_cycle(g, cycle)) {
        throw std::invalid_argument("cycle_to_cyclic_set: input is not a simple cycle");
    }
    const std::vector<int> rotated = rotate_to_largest(cycle);
    const long long period = static_cast<long long>(rotated.size());
    std::vector<long long> members;
    for (long long k = 0; k < period; ++k) {
        if ((rotated[static_cast<std::size_t>(k)] >> (g.d - 1)) & 1) members.push_back(k);
    }
    return CyclicSet::make(period, std::move(members));
}

// Reads the two periodic half-line sets generated by a cycle of the doubled
// graph. The t side grows rightward, so its front symbol at step k sits at
// residue k + 1; the s side grows leftward, so its back symbol at step k sits
// at residue -k. The pair correlation of the two sets is what the cycle
// contributes per period.
inline std::pair<CyclicSet, CyclicSet> cycle_to_pair_sets(const ShiftGraph& g,
                                                          const std::vector<int>& cycle) {
    if (g.kind != GraphKind::double_debruijn) {
        throw std::invalid_argument("cycle_to_pair_sets: doubled graph required");
    }
    if (!is_simple_cycle(g, cycle)) {
        throw std::invalid_argument("cycle_to_pair_sets: input is not a simple cycle");
    }
    const std::vector<int> rotated = rotate_to_largest(cycle);
    const long long period = static_cast<long long>(rotated.size());
    std::vector<long long> forward;
    std::vector<long long> backward;
    for (long long k = 0; k < period; ++k) {
        const int v = rotated[static_cast<std::size_t>(k)];
        const int s = double_vertex_s(v, g.d);
        const int t = double_vertex_t(v, g.d);
        if ((t >> (g.d - 1)) & 1) forward.push_back(mod_reduce(k + 1, period));
        if (s & 1) backward.push_back(mod_reduce(-k, period));
    }
    return {CyclicSet::make(period, std::move(forward)), CyclicSet::make(period, std::move(backward))};
}

// Per-period correlation counts of one cycle at shifts 1 .. d.
inline std::vector<long long> corner_counts(const ShiftGraph& g, const std::vector<int>& cycle) {
    std::vector<long long> counts;
    counts.reserve(static_cast<std::size_t>(g.d));
    if (g.kind == GraphKind::debruijn) {
        const CyclicSet c = cycle_to_cyclic_set(g, cycle);
        for (int j = 1; j <= g.d; ++j) counts.push_back(cyclic_conv_diff(c, j));
    } else {
        const auto [fwd, bwd] = cycle_to_pair_sets(g, cycle);
        for (int j = 1; j <= g.d; ++j) counts.push_back(cyclic_conv_pair(fwd, bwd, j));
    }
    return counts;
}

// Correlation vector contributed by one cycle, one rational per shift
// 1 .. d: the per-period correlation count divided by the period length.
inline std::vector<Rational> corner_vector(const ShiftGraph& g, const std::vector<int>& cycle) {
    const long long period = static_cast<long long>(cycle.size());
    std::vector<Rational> coords;
    coords.reserve(static_cast<std::size_t>(g.d));
    for (long long count : corner_counts(g, cycle)) {
        coords.emplace_back(BigInt(count), BigInt(period));
    }
    return coords;
}

// One candidate extreme point together with the cycle that generated it;
// coords[j] == counts[j] / cycle length.
struct CornerCandidate {
    std::vector<int> cycle;
    std::vector<long long> counts;
    std::vector<Rational> coords;
};

// All cycle-generated candidate points of g, in enumeration order.
inline std::vector<CornerCandidate> collect_corner_candidates(const ShiftGraph& g,
                                                              long long cap = kDefaultCycleCap) {
    std::vector<CornerCandidate> out;
    for_each_cycle(
        g,
        [&](const std::vector<int>& cycle) {
            CornerCandidate cand;
            cand.cycle = cycle;
            cand.counts = corner_counts(g, cycle);
            const auto period = static_cast<long long>(cycle.size());
            cand.coords.reserve(cand.counts.size());
            for (long long count : cand.counts) cand.coords.emplace_back(BigInt(count), BigInt(period));
            out.push_back(std::move(cand));
        },
        cap);
    return out;
}

} // namespace convopoly
