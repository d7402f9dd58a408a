#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "convopoly/common.hpp"

namespace convopoly {

// Finite subset of an integer interval [ambient_lo, ambient_hi].
// Elements are kept strictly sorted.
struct IntegerSet {
    std::vector<long long> elements;
    long long ambient_lo = 0;
    long long ambient_hi = -1;

    static IntegerSet make(std::vector<long long> elems, long long lo, long long hi) {
        if (lo > hi) throw std::invalid_argument("IntegerSet: empty ambient interval");
        std::sort(elems.begin(), elems.end());
        if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) {
            throw std::invalid_argument("IntegerSet: duplicate element");
        }
        if (!elems.empty() && (elems.front() < lo || elems.back() > hi)) {
            throw std::invalid_argument("IntegerSet: element outside ambient interval");
        }
        IntegerSet s;
        s.elements = std::move(elems);
        s.ambient_lo = lo;
        s.ambient_hi = hi;
        return s;
    }

    bool contains(long long x) const {
        return std::binary_search(elements.begin(), elements.end(), x);
    }

    long long size() const { return static_cast<long long>(elements.size()); }
};

// Subset of Z_M, residues stored sorted in [0, M).
struct CyclicSet {
    long long modulus = 1;
    std::vector<long long> members;

    static CyclicSet make(long long modulus, std::vector<long long> residues) {
        if (modulus < 1) throw std::invalid_argument("CyclicSet: modulus must be >= 1");
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        if (!residues.empty() && (residues.front() < 0 || residues.back() >= modulus)) {
            throw std::invalid_argument("CyclicSet: residue outside [0, M)");
        }
        CyclicSet s;
        s.modulus = modulus;
        s.members = std::move(residues);
        return s;
    }

    bool contains(long long r) const {
        return std::binary_search(members.begin(), members.end(), r);
    }
};

inline long long mod_reduce(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

// Number of ordered pairs (a, b) in A x A with a - b = x.
inline long long conv_diff(const IntegerSet& a, long long x) {
    arith_stats().note_exact();
    long long count = 0;
    for (long long e : a.elements) {
        if (a.contains(e - x)) ++count;
    }
    return count;
}

// Number of ordered pairs (a, b) in A x A with a + b = x (a = b allowed).
inline long long conv_sum(const IntegerSet& a, long long x) {
    arith_stats().note_exact();
    long long count = 0;
    for (long long e : a.elements) {
        if (a.contains(x - e)) ++count;
    }
    return count;
}

// Ordered pairs (a, b) in B x B with a - b = x (mod M).
inline long long cyclic_conv_diff(const CyclicSet& b, long long x) {
    arith_stats().note_exact();
    const long long shift = mod_reduce(x, b.modulus);
    long long count = 0;
    for (long long r : b.members) {
        if (b.contains(mod_reduce(r + shift, b.modulus))) ++count;
    }
    return count;
}

// Pairs (p, q) in P x Q with p + q = x (mod M); P and Q share the modulus.
inline long long cyclic_conv_pair(const CyclicSet& p, const CyclicSet& q, long long x) {
    if (p.modulus != q.modulus) {
        throw std::invalid_argument("cyclic_conv_pair: modulus mismatch");
    }
    arith_stats().note_exact();
    const long long target = mod_reduce(x, p.modulus);
    long long count = 0;
    for (long long r : p.members) {
        if (q.contains(mod_reduce(target - r, p.modulus))) ++count;
    }
    return count;
}

} // namespace convopoly
