#pragma once

#include <stdexcept>
#include <vector>

#include "convopoly/convolution.hpp"
#include "convopoly/debruijn.hpp"

namespace convopoly {

// Walks are vertex sequences; consecutive vertices must be joined by an edge.
// A closed walk carries its start vertex again at the end, so a sequence of
// size m has m - 1 edges.

inline bool is_walk(const ShiftGraph& g, const std::vector<int>& walk) {
    if (walk.empty()) return false;
    for (int v : walk) {
        if (v < 0 || v >= g.vertex_count) return false;
    }
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        if (g.find_edge(walk[i], walk[i + 1]) < 0) return false;
    }
    return true;
}

inline bool is_closed_walk(const ShiftGraph& g, const std::vector<int>& walk) {
    return is_walk(g, walk) && walk.front() == walk.back();
}

// Sliding d-window encoding of a set A inside [1, N]: vertex k (1-indexed,
// k = 1 .. N - d + 1) is the indicator window over [k, k + d - 1], left-most
// position first.
inline std::vector<int> encode_walk(const IntegerSet& a, int d) {
    if (d < 1) throw std::invalid_argument("encode_walk: d must be >= 1");
    if (a.ambient_lo != 1) throw std::invalid_argument("encode_walk: ambient interval must start at 1");
    const long long n = a.ambient_hi;
    if (n < d) throw std::invalid_argument("encode_walk: ambient interval shorter than window");
    std::vector<char> present(static_cast<std::size_t>(n) + 1, 0);
    for (long long e : a.elements) present[static_cast<std::size_t>(e)] = 1;
    std::vector<int> walk;
    walk.reserve(static_cast<std::size_t>(n - d + 1));
    int window = 0;
    const int mask = (1 << d) - 1;
    for (long long pos = 1; pos <= n; ++pos) {
        window = ((window << 1) | present[static_cast<std::size_t>(pos)]) & mask;
        if (pos >= d) walk.push_back(window);
    }
    return walk;
}

// Doubled encoding of a set inside [-N, N]: vertex k (k = 1 .. N - d + 1)
// pairs the window over [-d + 2 - k, 1 - k] (s side, sliding leftward) with
// the window over [k, d + k - 1] (t side, sliding rightward).
inline std::vector<int> encode_double_walk(const IntegerSet& a, int d) {
    if (d < 1) throw std::invalid_argument("encode_double_walk: d must be >= 1");
    if (a.ambient_lo != -a.ambient_hi) {
        throw std::invalid_argument("encode_double_walk: ambient interval must be symmetric");
    }
    const long long n = a.ambient_hi;
    if (n < d) throw std::invalid_argument("encode_double_walk: ambient interval shorter than window");
    const long long offset = n;
    std::vector<char> present(static_cast<std::size_t>(2 * n) + 1, 0);
    for (long long e : a.elements) present[static_cast<std::size_t>(e + offset)] = 1;
    auto at = [&](long long pos) -> int { return present[static_cast<std::size_t>(pos + offset)]; };
    std::vector<int> walk;
    walk.reserve(static_cast<std::size_t>(n - d + 1));
    for (long long k = 1; k <= n - d + 1; ++k) {
        int s = 0;
        int t = 0;
        for (int p = 0; p < d; ++p) {
            s = (s << 1) | at(-d + 2 - k + p);
            t = (t << 1) | at(k + p);
        }
        walk.push_back(pack_double_vertex(s, t, d));
    }
    return walk;
}

// Out-slot that steers any vertex toward target: after d consecutive steps
// (step = 1 .. d) the window contents equal the target label. The plain
// graph replays the target label left to right; the doubled graph
// simultaneously prepends the target s label right to left and appends the
// target t label left to right.
inline int steer_slot(const ShiftGraph& g, int target, int step) {
    if (g.kind == GraphKind::debruijn) return (target >> (g.d - step)) & 1;
    const int bs = (double_vertex_s(target, g.d) >> (step - 1)) & 1;
    const int bt = (double_vertex_t(target, g.d) >> (g.d - step)) & 1;
    return bs * 2 + bt;
}

// Extends a walk back to its first vertex in at most d extra steps, stopping
// at the first hit.
inline std::vector<int> close_walk(const ShiftGraph& g, std::vector<int> walk) {
    if (!is_walk(g, walk)) throw std::invalid_argument("close_walk: not a walk in this graph");
    const int target = walk.front();
    if (walk.back() == target) return walk;
    int current = walk.back();
    for (int step = 1; step <= g.d; ++step) {
        current = g.edge(g.edge_id(current, steer_slot(g, target, step))).to;
        walk.push_back(current);
        if (current == target) return walk;
    }
    throw InternalError("close_walk: failed to close within d steps");
}

// Edge traversal counts of a closed walk, indexed by edge id.
inline std::vector<long long> walk_edge_weights(const ShiftGraph& g, const std::vector<int>& walk) {
    if (!is_closed_walk(g, walk)) {
        throw std::invalid_argument("walk_edge_weights: input is not a closed walk");
    }
    std::vector<long long> weights(static_cast<std::size_t>(g.edge_count()), 0);
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        const int id = g.find_edge(walk[i], walk[i + 1]);
        ++weights[static_cast<std::size_t>(id)];
    }
    return weights;
}

} // namespace convopoly
