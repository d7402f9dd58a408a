#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "convopoly/common.hpp"
#include "convopoly/convolution.hpp"
#include "convopoly/cycles.hpp"
#include "convopoly/debruijn.hpp"
#include "convopoly/rational.hpp"
#include "convopoly/walks.hpp"

namespace convopoly {

// Traversal counts per catalog cycle realizing the convex weights at scale n:
// floor(n * lambda_i / length_i). Weights must be nonnegative and sum to 1
// exactly.
inline std::vector<long long> multiplicities(const std::vector<Rational>& lambdas, long long n,
                                             const std::vector<std::vector<int>>& cycles) {
    if (lambdas.size() != cycles.size()) {
        throw std::invalid_argument("multiplicities: weight count does not match cycle count");
    }
    if (n < 1) throw std::invalid_argument("multiplicities: n must be positive");
    Rational total(0);
    for (const auto& l : lambdas) {
        if (l < 0) throw std::invalid_argument("multiplicities: negative weight");
        total += l;
    }
    if (total != 1) throw std::invalid_argument("multiplicities: weights must sum to 1");
    std::vector<long long> mults;
    mults.reserve(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const auto len = static_cast<long long>(cycles[i].size());
        if (len == 0) throw std::invalid_argument("multiplicities: empty cycle");
        mults.push_back(floor_to_integer(Rational(n) * lambdas[i] / Rational(len)));
    }
    return mults;
}

// Concatenates the cycles with positive multiplicity into one walk: traverse
// each cycle its full count, then steer toward the next cycle's start label,
// stopping at the first vertex of that cycle (which never takes more than d
// steps) and rotating it to begin there.
inline std::vector<int> link_cycles(const ShiftGraph& g, const std::vector<std::vector<int>>& cycles,
                                    const std::vector<long long>& mults) {
    if (cycles.size() != mults.size()) {
        throw std::invalid_argument("link_cycles: multiplicity count does not match cycle count");
    }
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (mults[i] < 0) throw std::invalid_argument("link_cycles: negative multiplicity");
        if (mults[i] > 0) used.push_back(i);
    }
    if (used.empty()) throw std::invalid_argument("link_cycles: no positive multiplicity");

    std::vector<int> walk;
    std::vector<char> member(static_cast<std::size_t>(g.vertex_count), 0);
    for (std::size_t pos = 0; pos < used.size(); ++pos) {
        std::vector<int> cycle = cycles[used[pos]];
        if (!is_simple_cycle(g, cycle)) {
            throw std::invalid_argument("link_cycles: entry is not a simple cycle");
        }
        std::fill(member.begin(), member.end(), 0);
        for (int v : cycle) member[static_cast<std::size_t>(v)] = 1;

        if (walk.empty()) {
            walk.push_back(cycle.front());
        } else if (!member[static_cast<std::size_t>(walk.back())]) {
            int current = walk.back();
            for (int step = 1; step <= g.d; ++step) {
                current = g.edge(g.edge_id(current, steer_slot(g, cycle.front(), step))).to;
                walk.push_back(current);
                if (member[static_cast<std::size_t>(current)]) break;
            }
            if (!member[static_cast<std::size_t>(walk.back())]) {
                throw InternalError("link_cycles: bridge did not reach the next cycle within d steps");
            }
        }
        const auto entry = std::find(cycle.begin(), cycle.end(), walk.back());
        std::rotate(cycle.begin(), entry, cycle.end());
        for (long long rep = 0; rep < mults[used[pos]]; ++rep) {
            for (std::size_t j = 1; j < cycle.size(); ++j) walk.push_back(cycle[j]);
            walk.push_back(cycle.front());
        }
    }
    return walk;
}

// Spells the walk's binary string (start label, then one appended symbol per
// edge) and returns its support inside [1, n]; positions past n are trimmed.
inline IntegerSet walk_to_set(const ShiftGraph& g, const std::vector<int>& walk, long long n) {
    if (g.kind != GraphKind::debruijn) throw std::invalid_argument("walk_to_set: plain graph required");
    if (!is_walk(g, walk)) throw std::invalid_argument("walk_to_set: not a walk in this graph");
    if (n < g.d) throw std::invalid_argument("walk_to_set: target interval shorter than window");
    std::vector<long long> elements;
    const BitLabel start(g.d, walk.front());
    for (int p = 1; p <= g.d; ++p) {
        if (start.symbol_at(p)) elements.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        const long long pos = static_cast<long long>(g.d) + 1 + static_cast<long long>(i);
        if (pos > n) break;
        if (g.edge(g.find_edge(walk[i], walk[i + 1])).append_sym) elements.push_back(pos);
    }
    while (!elements.empty() && elements.back() > n) elements.pop_back();
    return IntegerSet::make(std::move(elements), 1, n);
}

// Doubled version: the start labels cover [-d+1, d]; each edge appends one
// symbol at the right end (position d + step) and prepends one at the left
// end (position -d + 1 - step). The support is trimmed symmetrically to
// [-n, n].
inline IntegerSet walk_to_set_double(const ShiftGraph& g, const std::vector<int>& walk, long long n) {
    if (g.kind != GraphKind::double_debruijn) {
        throw std::invalid_argument("walk_to_set_double: doubled graph required");
    }
    if (!is_walk(g, walk)) throw std::invalid_argument("walk_to_set_double: not a walk in this graph");
    if (n < g.d) throw std::invalid_argument("walk_to_set_double: target interval shorter than window");
    std::vector<long long> elements;
    const BitLabel start_s(g.d, double_vertex_s(walk.front(), g.d));
    const BitLabel start_t(g.d, double_vertex_t(walk.front(), g.d));
    for (int p = 1; p <= g.d; ++p) {
        if (start_s.symbol_at(p)) elements.push_back(-g.d + p);
        if (start_t.symbol_at(p)) elements.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        const long long step = static_cast<long long>(i) + 1;
        const GraphEdge& e = g.edge(g.find_edge(walk[i], walk[i + 1]));
        if (e.append_sym && g.d + step <= n) elements.push_back(g.d + step);
        if (e.prepend_sym && g.d - 1 + step <= n) elements.push_back(-(g.d - 1 + step));
    }
    std::sort(elements.begin(), elements.end());
    return IntegerSet::make(std::move(elements), -n, n);
}

struct RealizeResult {
    IntegerSet set;
    std::vector<Rational> target;
    std::vector<Rational> achieved;
    Rational linf_error;
    Rational apriori_bound;
};

// Conservative constant in the a-priori deviation bound C (d + 2^d) m / n;
// the measured ratios in the tests sit far below it.
inline constexpr long long kRealizeBoundConstant = 8;

// Full converse pipeline: weights -> traversal counts -> linked walk ->
// explicit set, plus that set's exact normalized correlation vector and its
// distance from the targeted hull point.
inline RealizeResult realize(const ShiftGraph& g, const std::vector<std::vector<int>>& cycles,
                             const std::vector<Rational>& lambdas, long long n) {
    const std::vector<long long> mults = multiplicities(lambdas, n, cycles);
    RealizeResult res;
    res.target.assign(static_cast<std::size_t>(g.d), Rational(0));
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (lambdas[i] == 0) continue;
        const std::vector<Rational> corner = corner_vector(g, cycles[i]);
        for (int j = 0; j < g.d; ++j) {
            res.target[static_cast<std::size_t>(j)] += lambdas[i] * corner[static_cast<std::size_t>(j)];
        }
    }
    const bool any_positive = std::any_of(mults.begin(), mults.end(), [](long long m) { return m > 0; });
    if (any_positive) {
        const std::vector<int> walk = link_cycles(g, cycles, mults);
        res.set = g.kind == GraphKind::debruijn ? walk_to_set(g, walk, n)
                                                : walk_to_set_double(g, walk, n);
    } else {
        res.set = g.kind == GraphKind::debruijn ? IntegerSet::make({}, 1, n)
                                                : IntegerSet::make({}, -n, n);
    }
    const long long denom = g.kind == GraphKind::debruijn ? n : 2 * n + 1;
    res.achieved.reserve(static_cast<std::size_t>(g.d));
    res.linf_error = Rational(0);
    for (int j = 1; j <= g.d; ++j) {
        const long long count = g.kind == GraphKind::debruijn ? conv_diff(res.set, j)
                                                              : conv_sum(res.set, j);
        res.achieved.emplace_back(BigInt(count), BigInt(denom));
        Rational dev = res.achieved.back() - res.target[static_cast<std::size_t>(j - 1)];
        if (dev < 0) dev = -dev;
        if (dev > res.linf_error) res.linf_error = dev;
    }
    res.apriori_bound = Rational(
        BigInt(kRealizeBoundConstant * (g.d + (1LL << g.d)) * static_cast<long long>(cycles.size())),
        BigInt(n));
    return res;
}

} // namespace convopoly
