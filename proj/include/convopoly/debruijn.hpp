#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "convopoly/common.hpp"

namespace convopoly {

// Binary string of length d stored as an integer mask, most significant bit
// first: string position p (1 = left-most) lives in machine bit d - p.
struct BitLabel {
    int d = 0;
    int mask = 0;

    BitLabel() = default;
    BitLabel(int d_, int mask_) : d(d_), mask(mask_) {
        if (d < 1) throw std::invalid_argument("BitLabel: d must be >= 1");
        if (mask < 0 || mask >= (1 << d)) throw std::invalid_argument("BitLabel: mask out of range");
    }

    // 1-indexed, position 1 = left-most symbol.
    int symbol_at(int pos) const {
        if (pos < 1 || pos > d) throw std::invalid_argument("BitLabel: position out of range");
        return (mask >> (d - pos)) & 1;
    }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(d), '0');
        for (int p = 1; p <= d; ++p) {
            if (symbol_at(p)) s[static_cast<std::size_t>(p - 1)] = '1';
        }
        return s;
    }
};

enum class GraphKind { debruijn, double_debruijn };

// One sliding-window transition. For the plain graph only append_sym is
// meaningful (symbol concatenated on the right). For the doubled graph
// prepend_sym extends the s-side on the left while append_sym extends the
// t-side on the right.
struct GraphEdge {
    int from = 0;
    int to = 0;
    std::uint8_t append_sym = 0;
    std::uint8_t prepend_sym = 0;
};

// Directed graph whose edges are sliding-window shifts of binary strings.
// Covers both the de Bruijn graph on 2^d vertices and the doubled variant on
// 4^d vertex pairs (s, t), packed as s * 2^d + t. Edges are stored contiguous
// per source vertex so edge ids are arithmetic.
struct ShiftGraph {
    GraphKind kind = GraphKind::debruijn;
    int d = 0;
    int vertex_count = 0;
    int out_degree = 0;
    std::vector<GraphEdge> edges;

    int edge_id(int vertex, int slot) const { return vertex * out_degree + slot; }
    const GraphEdge& edge(int id) const { return edges[static_cast<std::size_t>(id)]; }
    int edge_count() const { return static_cast<int>(edges.size()); }

    // Unique edge from -> to, or -1. The shift structure never produces
    // parallel edges, so (from, to) identifies an edge.
    int find_edge(int from, int to) const {
        for (int k = 0; k < out_degree; ++k) {
            const int id = edge_id(from, k);
            if (edges[static_cast<std::size_t>(id)].to == to) return id;
        }
        return -1;
    }

    std::string vertex_name(int v) const {
        if (kind == GraphKind::debruijn) return BitLabel(d, v).to_string();
        const int lo_mask = (1 << d) - 1;
        return BitLabel(d, v >> d).to_string() + "|" + BitLabel(d, v & lo_mask).to_string();
    }
};

inline constexpr int kDefaultMaxD = 8;
inline constexpr int kDefaultMaxDoubleD = 4;

// De Bruijn graph with loops on all binary strings of length d. Edge
// v -> w exists iff w = (v with left-most symbol removed) . b for b in {0,1}.
inline ShiftGraph build_debruijn(int d, int max_d = kDefaultMaxD) {
    if (d < 1) throw std::invalid_argument("build_debruijn: d must be >= 1");
    if (d > max_d) {
        throw CapExceeded("build_debruijn: d = " + std::to_string(d) + " exceeds cap " + std::to_string(max_d));
    }
    ShiftGraph g;
    g.kind = GraphKind::debruijn;
    g.d = d;
    g.vertex_count = 1 << d;
    g.out_degree = 2;
    g.edges.reserve(static_cast<std::size_t>(g.vertex_count) * 2);
    const int mask = g.vertex_count - 1;
    for (int v = 0; v < g.vertex_count; ++v) {
        for (int b = 0; b < 2; ++b) {
            g.edges.push_back(GraphEdge{v, ((v << 1) | b) & mask, static_cast<std::uint8_t>(b), 0});
        }
    }
    return g;
}

// Doubled graph on ordered pairs (s, t): the s-window grows leftward (prepend
// b_s, drop the right-most symbol) while the t-window grows rightward (append
// b_t, drop the left-most symbol).
inline ShiftGraph build_double_debruijn(int d, int max_d = kDefaultMaxDoubleD) {
    if (d < 1) throw std::invalid_argument("build_double_debruijn: d must be >= 1");
    if (d > max_d) {
        throw CapExceeded("build_double_debruijn: d = " + std::to_string(d) + " exceeds cap " +
                          std::to_string(max_d));
    }
    ShiftGraph g;
    g.kind = GraphKind::double_debruijn;
    g.d = d;
    g.vertex_count = 1 << (2 * d);
    g.out_degree = 4;
    g.edges.reserve(static_cast<std::size_t>(g.vertex_count) * 4);
    const int mask = (1 << d) - 1;
    for (int v = 0; v < g.vertex_count; ++v) {
        const int s = v >> d;
        const int t = v & mask;
        for (int bs = 0; bs < 2; ++bs) {
            const int s_next = (bs << (d - 1)) | (s >> 1);
            for (int bt = 0; bt < 2; ++bt) {
                const int t_next = ((t << 1) | bt) & mask;
                g.edges.push_back(GraphEdge{v, (s_next << d) | t_next, static_cast<std::uint8_t>(bt),
                                            static_cast<std::uint8_t>(bs)});
            }
        }
    }
    return g;
}

inline int pack_double_vertex(int s, int t, int d) { return (s << d) | t; }
inline int double_vertex_s(int v, int d) { return v >> d; }
inline int double_vertex_t(int v, int d) { return v & ((1 << d) - 1); }

// 1 iff v has symbol 1 in string position d - j + 1, i.e. the element j steps
// behind the window front is present. This is the per-step contribution to
// the autocorrelation at shift j when an edge appends symbol 1.
inline int vertex_conv_contribution(const BitLabel& v, int j) {
    if (j < 1 || j > v.d) throw std::invalid_argument("vertex_conv_contribution: j out of range");
    return (v.mask >> (j - 1)) & 1;
}

} // namespace convopoly
