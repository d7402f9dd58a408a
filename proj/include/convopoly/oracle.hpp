#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "convopoly/common.hpp"
#include "convopoly/hull.hpp"
#include "convopoly/rational.hpp"

namespace convopoly {

enum class ConvKind { diff, sum };

inline std::string to_string(ConvKind kind) { return kind == ConvKind::diff ? "diff" : "sum"; }

inline ConvKind parse_conv_kind(const std::string& text) {
    if (text == "diff") return ConvKind::diff;
    if (text == "sum") return ConvKind::sum;
    throw InputError("unknown kind: " + text + " (expected diff or sum)");
}

// Exact normalized correlation vectors of every subset, deduplicated.
struct SpectrumCloud {
    int d = 0;
    ConvKind kind = ConvKind::diff;
    long long n = 0;
    std::vector<int> shifts;
    std::vector<std::vector<Rational>> points;
};

inline constexpr long long kMaxDiffN = 22;
inline constexpr long long kMaxSumN = 10;

namespace detail {

inline std::uint64_t reverse_bits(std::uint64_t mask, int width) {
    std::uint64_t out = 0;
    for (int i = 0; i < width; ++i) {
        out = (out << 1) | ((mask >> i) & 1);
    }
    return out;
}

// Packs up to 8 small correlation counts (each < 256) into one key.
inline std::uint64_t pack_counts(const std::vector<int>& counts) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        key |= static_cast<std::uint64_t>(counts[i]) << (8 * i);
    }
    return key;
}

} // namespace detail

// Brute force over all subsets of [1, n] (diff) or [-n, n] (sum). Subsets are
// bitmasks; the count of pairs at shift x is one AND plus popcount against
// the mask shifted (diff) or reversed-and-shifted (sum). For differences the
// reflection a -> n + 1 - a leaves the vector unchanged, so masks whose
// bit-reversal is smaller are skipped; for sums the reflection a -> -a flips
// the sign of the shift, so every mask is scanned (the reversed mask is still
// needed there as the -A operand). The mask range is split across threads;
// each thread dedupes locally into packed count keys and the sets are merged
// at the end.
inline SpectrumCloud enumerate_spectrum(int d, long long n, ConvKind kind, std::vector<int> shifts,
                                        unsigned threads = 0) {
    if (d < 1 || d > 8) throw std::invalid_argument("enumerate_spectrum: d out of range");
    if (static_cast<int>(shifts.size()) != d) {
        throw std::invalid_argument("enumerate_spectrum: expected one shift per coordinate");
    }
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (shifts[i] < 1) throw std::invalid_argument("enumerate_spectrum: shifts must be >= 1");
        if (i > 0 && shifts[i] <= shifts[i - 1]) {
            throw std::invalid_argument("enumerate_spectrum: shifts must be strictly increasing");
        }
    }
    if (n < 1) throw std::invalid_argument("enumerate_spectrum: n must be positive");
    const long long cap = kind == ConvKind::diff ? kMaxDiffN : kMaxSumN;
    if (n > cap) {
        throw CapExceeded("enumerate_spectrum: n = " + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap) + " for kind " + to_string(kind));
    }
    const int width = kind == ConvKind::diff ? static_cast<int>(n) : static_cast<int>(2 * n + 1);
    const std::uint64_t total = std::uint64_t{1} << width;

    unsigned worker_count = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (worker_count == 0) worker_count = 1;
    worker_count = std::min<unsigned>(worker_count, 8);

    auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::unordered_set<std::uint64_t>& keys) {
        std::vector<int> counts(static_cast<std::size_t>(d), 0);
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            const std::uint64_t reflected = detail::reverse_bits(mask, width);
            if (kind == ConvKind::diff && reflected < mask) continue;
            for (int i = 0; i < d; ++i) {
                const int x = shifts[static_cast<std::size_t>(i)];
                // diff pairs a - b = x: the mask against itself shifted;
                // sum pairs a + b = x: the mask against its reflection
                // (which represents -A) shifted. Shifts at or past the
                // window width cannot pair anything.
                counts[static_cast<std::size_t>(i)] =
                    x >= width ? 0
                    : kind == ConvKind::diff
                        ? __builtin_popcountll(mask & (mask >> x))
                        : __builtin_popcountll(mask & (reflected << x));
            }
            keys.insert(detail::pack_counts(counts));
        }
    };

    std::vector<std::unordered_set<std::uint64_t>> local(worker_count);
    if (worker_count == 1) {
        scan(0, total, local[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = total / worker_count + 1;
        for (unsigned w = 0; w < worker_count; ++w) {
            const std::uint64_t lo = chunk * w;
            const std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
            pool.emplace_back([&, lo, hi, w] { scan(lo, std::max(lo, hi), local[w]); });
        }
        for (auto& t : pool) t.join();
    }

    std::unordered_set<std::uint64_t> merged;
    for (auto& keys : local) merged.insert(keys.begin(), keys.end());
    std::vector<std::uint64_t> ordered(merged.begin(), merged.end());
    std::sort(ordered.begin(), ordered.end());

    SpectrumCloud cloud;
    cloud.d = d;
    cloud.kind = kind;
    cloud.n = n;
    cloud.shifts = std::move(shifts);
    const long long denom = kind == ConvKind::diff ? n : 2 * n + 1;
    cloud.points.reserve(ordered.size());
    for (std::uint64_t key : ordered) {
        std::vector<Rational> point;
        point.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            point.emplace_back(BigInt((key >> (8 * i)) & 0xff), BigInt(denom));
        }
        cloud.points.push_back(std::move(point));
    }
    return cloud;
}

// The default shift list 1, 2, ..., d.
inline std::vector<int> shifts_identity(int d) {
    std::vector<int> shifts(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) shifts[static_cast<std::size_t>(i)] = i + 1;
    return shifts;
}

struct EnclosureReport {
    // max over cloud points of exact hull distance (how far the brute-force
    // cloud sticks out of the polytope)
    Rational forward_max;
    // max over probe hull points (corners plus pairwise midpoints) of the
    // distance to the nearest cloud point (how well the cloud fills the hull)
    Rational converse_max;
};

inline Rational linf_point_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational best(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational dev = a[i] - b[i];
        if (dev < 0) dev = -dev;
        if (dev > best) best = dev;
    }
    return best;
}

inline EnclosureReport enclosure_report(const SpectrumCloud& cloud, const Polytope& p) {
    if (cloud.d != p.d) throw std::invalid_argument("enclosure_report: dimension mismatch");
    if (cloud.points.empty()) throw std::invalid_argument("enclosure_report: empty cloud");
    EnclosureReport report;
    report.forward_max = Rational(0);
    for (const auto& point : cloud.points) {
        const Rational dist = hull_distance_linf(p, point);
        if (dist > report.forward_max) report.forward_max = dist;
    }
    std::vector<std::vector<Rational>> probes = p.corners;
    for (std::size_t i = 0; i < p.corners.size(); ++i) {
        for (std::size_t j = i + 1; j < p.corners.size(); ++j) {
            std::vector<Rational> mid(static_cast<std::size_t>(p.d));
            for (std::size_t h = 0; h < mid.size(); ++h) {
                mid[h] = (p.corners[i][h] + p.corners[j][h]) / 2;
            }
            probes.push_back(std::move(mid));
        }
    }
    report.converse_max = Rational(0);
    for (const auto& probe : probes) {
        Rational nearest;
        bool first = true;
        for (const auto& point : cloud.points) {
            const Rational dist = linf_point_distance(probe, point);
            if (first || dist < nearest) {
                nearest = dist;
                first = false;
            }
        }
        if (nearest > report.converse_max) report.converse_max = nearest;
    }
    return report;
}

} // namespace convopoly
