#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "convopoly/common.hpp"
#include "convopoly/debruijn.hpp"

namespace convopoly {

// Simple cycle with an integer multiplicity. Vertices are listed once, the
// closing edge back to the front is implicit.
struct WeightedCycle {
    std::vector<int> vertices;
    long long multiplicity = 0;

    int length() const { return static_cast<int>(vertices.size()); }
};

// Rotates a simple cycle so its smallest vertex comes first. Vertices of a
// simple cycle are distinct, so this is well defined.
inline std::vector<int> canonical_rotation(std::vector<int> cycle) {
    if (cycle.empty()) throw std::invalid_argument("canonical_rotation: empty cycle");
    const auto it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
    return cycle;
}

inline bool is_simple_cycle(const ShiftGraph& g, const std::vector<int>& cycle) {
    if (cycle.empty()) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count), 0);
    for (int v : cycle) {
        if (v < 0 || v >= g.vertex_count) return false;
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const int from = cycle[i];
        const int to = cycle[(i + 1) % cycle.size()];
        if (g.find_edge(from, to) < 0) return false;
    }
    return true;
}

inline bool is_flow_conserving(const ShiftGraph& g, const std::vector<long long>& weights) {
    if (weights.size() != static_cast<std::size_t>(g.edge_count())) return false;
    std::vector<long long> balance(static_cast<std::size_t>(g.vertex_count), 0);
    for (int id = 0; id < g.edge_count(); ++id) {
        const long long w = weights[static_cast<std::size_t>(id)];
        if (w < 0) return false;
        balance[static_cast<std::size_t>(g.edge(id).from)] += w;
        balance[static_cast<std::size_t>(g.edge(id).to)] -= w;
    }
    return std::all_of(balance.begin(), balance.end(), [](long long b) { return b == 0; });
}

// Peels a nonnegative flow-conserving edge multiset into weighted simple
// cycles. Each round starts at the smallest vertex with remaining out-weight,
// repeatedly follows the first out-slot with positive residual, and closes a
// simple cycle at the first repeated vertex. The whole cycle is peeled at
// once by its bottleneck weight, so at least one edge hits zero per round.
inline std::vector<WeightedCycle> decompose_edge_weights(const ShiftGraph& g,
                                                         std::vector<long long> residual) {
    if (!is_flow_conserving(g, residual)) {
        throw std::invalid_argument("decompose_edge_weights: weights are not a nonnegative circulation");
    }
    std::vector<WeightedCycle> peeled;
    std::vector<long long> out_weight(static_cast<std::size_t>(g.vertex_count), 0);
    for (int id = 0; id < g.edge_count(); ++id) {
        out_weight[static_cast<std::size_t>(g.edge(id).from)] += residual[static_cast<std::size_t>(id)];
    }
    std::vector<int> position(static_cast<std::size_t>(g.vertex_count), -1);
    std::vector<int> path;
    for (;;) {
        int start = -1;
        for (int v = 0; v < g.vertex_count; ++v) {
            if (out_weight[static_cast<std::size_t>(v)] > 0) {
                start = v;
                break;
            }
        }
        if (start < 0) break;

        path.clear();
        int current = start;
        std::vector<int> cycle;
        for (;;) {
            if (position[static_cast<std::size_t>(current)] >= 0) {
                const auto from = path.begin() + position[static_cast<std::size_t>(current)];
                cycle.assign(from, path.end());
                break;
            }
            position[static_cast<std::size_t>(current)] = static_cast<int>(path.size());
            path.push_back(current);
            int next = -1;
            for (int k = 0; k < g.out_degree; ++k) {
                if (residual[static_cast<std::size_t>(g.edge_id(current, k))] > 0) {
                    next = g.edge(g.edge_id(current, k)).to;
                    break;
                }
            }
            if (next < 0) throw InternalError("decompose_edge_weights: walk stuck despite conservation");
            current = next;
        }
        for (int v : path) position[static_cast<std::size_t>(v)] = -1;

        long long bottleneck = 0;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int id = g.find_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
            const long long w = residual[static_cast<std::size_t>(id)];
            bottleneck = (i == 0 || w < bottleneck) ? w : bottleneck;
        }
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int id = g.find_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
            residual[static_cast<std::size_t>(id)] -= bottleneck;
            out_weight[static_cast<std::size_t>(cycle[i])] -= bottleneck;
        }
        peeled.push_back(WeightedCycle{canonical_rotation(std::move(cycle)), bottleneck});
        arith_stats().note_exact();
    }
    return peeled;
}

// Inverse of the peeling: sums multiplicity over every cycle edge.
inline std::vector<long long> recompose_edge_weights(const ShiftGraph& g,
                                                     const std::vector<WeightedCycle>& cycles) {
    std::vector<long long> weights(static_cast<std::size_t>(g.edge_count()), 0);
    for (const auto& wc : cycles) {
        if (wc.multiplicity < 0) {
            throw std::invalid_argument("recompose_edge_weights: negative multiplicity");
        }
        if (!is_simple_cycle(g, wc.vertices)) {
            throw std::invalid_argument("recompose_edge_weights: entry is not a simple cycle");
        }
        for (std::size_t i = 0; i < wc.vertices.size(); ++i) {
            const int id = g.find_edge(wc.vertices[i], wc.vertices[(i + 1) % wc.vertices.size()]);
            weights[static_cast<std::size_t>(id)] += wc.multiplicity;
        }
    }
    return weights;
}

} // namespace convopoly
