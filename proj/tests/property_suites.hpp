#pragma once

// Randomized invariant suites shared by the Catch2 wrapper and the acceptance
// binary. Each suite throws std::runtime_error on the first violation and
// returns the number of generated cases. Everything here decides through the
// library's exact integer/rational paths; the naive recounts used as oracles
// are plain integer loops.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "convopoly/convolution.hpp"
#include "convopoly/cycles.hpp"
#include "convopoly/debruijn.hpp"
#include "convopoly/decomposition.hpp"
#include "convopoly/hull.hpp"
#include "convopoly/walks.hpp"

namespace convopoly::testing {

inline void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

inline IntegerSet random_subset(std::mt19937_64& rng, long long lo, long long hi) {
    std::vector<long long> elems;
    std::bernoulli_distribution coin(0.5);
    for (long long x = lo; x <= hi; ++x) {
        if (coin(rng)) elems.push_back(x);
    }
    return IntegerSet::make(std::move(elems), lo, hi);
}

// Naive ordered-pair recounts, the independent oracle for the convolutions.
inline long long naive_diff(const IntegerSet& a, long long x) {
    long long count = 0;
    for (long long p : a.elements) {
        for (long long q : a.elements) {
            if (p - q == x) ++count;
        }
    }
    return count;
}

inline long long naive_sum(const IntegerSet& a, long long x) {
    long long count = 0;
    for (long long p : a.elements) {
        for (long long q : a.elements) {
            if (p + q == x) ++count;
        }
    }
    return count;
}

inline long long suite_convolution(std::uint64_t seed, int rounds) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> shift(-35, 35);
    std::uniform_int_distribution<long long> translate(-5, 5);
    std::uniform_int_distribution<long long> modulus(1, 12);
    long long cases = 0;
    for (int r = 0; r < rounds; ++r) {
        const IntegerSet a = random_subset(rng, 1, 30);
        expect(conv_diff(a, 0) == a.size(), "conv_diff at shift 0 must equal the set size");
        const long long x = shift(rng);
        expect(conv_diff(a, x) == conv_diff(a, -x), "conv_diff must be symmetric in the shift sign");
        expect(conv_diff(a, x) == naive_diff(a, x), "conv_diff disagrees with the pair recount");
        expect(conv_sum(a, x) == naive_sum(a, x), "conv_sum disagrees with the pair recount");

        const long long t = translate(rng);
        std::vector<long long> moved = a.elements;
        for (auto& e : moved) e += t;
        const IntegerSet shifted = IntegerSet::make(std::move(moved), 1 + t, 30 + t);
        expect(conv_diff(shifted, x) == conv_diff(a, x), "conv_diff must be translation invariant");

        const long long m = modulus(rng);
        std::vector<long long> residues;
        std::bernoulli_distribution coin(0.5);
        for (long long v = 0; v < m; ++v) {
            if (coin(rng)) residues.push_back(v);
        }
        const CyclicSet b = CyclicSet::make(m, std::move(residues));
        expect(cyclic_conv_diff(b, x) == cyclic_conv_diff(b, x + m),
               "cyclic_conv_diff must be periodic in the shift");
        long long direct = 0;
        for (long long p : b.members) {
            for (long long q : b.members) {
                if (mod_reduce(p - q - x, m) == 0) ++direct;
            }
        }
        expect(cyclic_conv_diff(b, x) == direct, "cyclic_conv_diff disagrees with the pair recount");
        long long pair_direct = 0;
        for (long long p : b.members) {
            for (long long q : b.members) {
                if (mod_reduce(p + q - x, m) == 0) ++pair_direct;
            }
        }
        expect(cyclic_conv_pair(b, b, x) == pair_direct,
               "cyclic_conv_pair disagrees with the pair recount");
        ++cases;
    }
    return cases;
}

inline long long suite_flow_conservation(std::uint64_t seed, int rounds) {
    std::mt19937_64 rng(seed);
    long long cases = 0;
    for (int r = 0; r < rounds; ++r) {
        const int d = (r % 2 == 0) ? 2 : 3;
        std::uniform_int_distribution<long long> size(d, 40);
        const long long n = size(rng);
        const ShiftGraph g = build_debruijn(d);
        const IntegerSet a = random_subset(rng, 1, n);
        const std::vector<int> open = encode_walk(a, d);
        expect(static_cast<long long>(open.size()) == n - d + 1, "encoded walk has the wrong length");
        const std::vector<int> closed = close_walk(g, open);
        const long long m = static_cast<long long>(closed.size());
        expect(m >= n - d + 1 && m <= n + 1, "closed walk length out of range");
        const std::vector<long long> weights = walk_edge_weights(g, closed);
        expect(is_flow_conserving(g, weights), "closed-walk weights must conserve flow");
        long long total = 0;
        for (long long w : weights) total += w;
        expect(total == m - 1, "total weight must count the walk's edges");
        ++cases;
    }
    return cases;
}

inline long long suite_peel_roundtrip(std::uint64_t seed, int rounds) {
    std::mt19937_64 rng(seed);
    long long cases = 0;
    for (int r = 0; r < rounds; ++r) {
        const bool doubled = (r % 4 == 3);
        const int d = doubled ? 2 : ((r % 2 == 0) ? 2 : 3);
        const ShiftGraph g = doubled ? build_double_debruijn(d) : build_debruijn(d);
        const IntegerSet a = doubled ? random_subset(rng, -10, 10) : random_subset(rng, 1, 28);
        const std::vector<int> open = doubled ? encode_double_walk(a, d) : encode_walk(a, d);
        const std::vector<int> closed = close_walk(g, open);
        const std::vector<long long> weights = walk_edge_weights(g, closed);
        const std::vector<WeightedCycle> peeled = decompose_edge_weights(g, weights);
        long long covered = 0;
        for (const auto& wc : peeled) {
            expect(wc.multiplicity >= 1, "peeled multiplicity must be positive");
            expect(is_simple_cycle(g, wc.vertices), "peeled entry must be a simple cycle");
            covered += wc.multiplicity * wc.length();
        }
        expect(covered == static_cast<long long>(closed.size()) - 1,
               "peeled weight must equal the closed walk's edge count");
        expect(recompose_edge_weights(g, peeled) == weights,
               "recompose(peel(w)) must reproduce the weights exactly");
        ++cases;
    }
    return cases;
}

inline long long suite_hull_queries(std::uint64_t seed, int rounds) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> grid(0, 4);
    std::uniform_int_distribution<int> corner_count(1, 8);
    long long cases = 0;
    auto grid_point = [&](int dim) {
        std::vector<Rational> p;
        p.reserve(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) p.emplace_back(BigInt(grid(rng)), BigInt(4));
        return p;
    };
    for (int r = 0; r < rounds; ++r) {
        const int dim = (r % 3 == 2) ? 3 : 2;
        const int k = corner_count(rng);
        std::vector<std::vector<Rational>> candidates;
        candidates.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) candidates.push_back(grid_point(dim));
        const Polytope p = minimize(dim, candidates);
        const Polytope again = minimize(dim, p.corners);
        expect(again.corners == p.corners, "minimize must be idempotent");
        for (const auto& corner : p.corners) {
            expect(hull_contains(p, corner), "every corner must lie in its own hull");
            expect(hull_distance_linf(p, corner) == 0, "corner distance must be zero");
        }
        const std::vector<Rational> q = grid_point(dim);
        const bool inside = hull_contains(p, q);
        const Rational dist = hull_distance_linf(p, q);
        expect(dist >= 0, "hull distance must be nonnegative");
        expect(inside == (dist == 0), "membership and zero distance must agree");
        ++cases;
    }
    return cases;
}

inline long long suite_phase_invariance() {
    long long cases = 0;
    auto check_graph = [&](const ShiftGraph& g) {
        for (const auto& cycle : enumerate_cycles(g)) {
            const std::vector<Rational> reference = corner_vector(g, cycle);
            for (std::size_t r = 1; r < cycle.size(); ++r) {
                std::vector<int> rotated = cycle;
                std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(r),
                            rotated.end());
                expect(corner_vector(g, rotated) == reference,
                       "corner vector must not depend on the cycle's starting phase");
                ++cases;
            }
            ++cases;
        }
    };
    for (int d = 1; d <= 3; ++d) check_graph(build_debruijn(d));
    check_graph(build_double_debruijn(1));
    return cases;
}

} // namespace convopoly::testing
