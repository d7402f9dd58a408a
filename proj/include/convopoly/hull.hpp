#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "convopoly/common.hpp"
#include "convopoly/rational.hpp"

namespace convopoly {

// V-representation polytope: exact rational corner coordinates, d per corner.
struct Polytope {
    int d = 0;
    std::vector<std::vector<Rational>> corners;
};

struct LpResult {
    bool feasible = false;
    Rational objective;
    std::vector<Rational> x;
};

namespace detail {

// Dense two-phase simplex over exact rationals, Bland's rule throughout, so
// it terminates without cycling. Solves min c.x subject to A x = b, x >= 0.
// Sized for the small LPs here (rows <= 2d + 1); nothing sparse.
class SimplexTableau {
  public:
    static LpResult solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                          std::vector<Rational> c) {
        const std::size_t m = a.size();
        const std::size_t n = c.size();
        if (b.size() != m) throw std::invalid_argument("simplex: rhs size mismatch");
        for (const auto& row : a) {
            if (row.size() != n) throw std::invalid_argument("simplex: row size mismatch");
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (b[i] < 0) {
                for (auto& v : a[i]) v = -v;
                b[i] = -b[i];
            }
        }

        SimplexTableau t(std::move(a), std::move(b), std::move(c));
        if (!t.phase_one()) return LpResult{false, Rational(0), {}};
        t.phase_two();
        arith_stats().note_exact();

        LpResult res;
        res.feasible = true;
        res.objective = -t.obj_[1].rhs;
        res.x.assign(n, Rational(0));
        for (std::size_t i = 0; i < t.rows_.size(); ++i) {
            if (t.basis_[i] < n) res.x[t.basis_[i]] = t.rhs_[i];
        }
        return res;
    }

  private:
    struct ObjectiveRow {
        std::vector<Rational> cost;
        Rational rhs; // negative of the current objective value
    };

    SimplexTableau(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                   std::vector<Rational> c)
        : n_(c.size()) {
        const std::size_t m = a.size();
        const std::size_t width = n_ + m;
        rows_.assign(m, std::vector<Rational>(width, Rational(0)));
        rhs_ = std::move(b);
        basis_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = a[i][j];
            rows_[i][n_ + i] = Rational(1);
            basis_[i] = n_ + i;
        }
        obj_[0].cost.assign(width, Rational(0));
        obj_[1].cost.assign(width, Rational(0));
        for (std::size_t j = 0; j < n_; ++j) {
            Rational col_sum(0);
            for (std::size_t i = 0; i < m; ++i) col_sum += rows_[i][j];
            obj_[0].cost[j] = -col_sum;
            obj_[1].cost[j] = c[j];
        }
        obj_[0].rhs = Rational(0);
        for (const auto& v : rhs_) obj_[0].rhs -= v;
        obj_[1].rhs = Rational(0);
    }

    void pivot(std::size_t p, std::size_t q) {
        const Rational inv = Rational(1) / rows_[p][q];
        for (auto& v : rows_[p]) v *= inv;
        rhs_[p] *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == p) continue;
            eliminate(rows_[i], rhs_[i], p, q);
        }
        eliminate(obj_[0].cost, obj_[0].rhs, p, q);
        eliminate(obj_[1].cost, obj_[1].rhs, p, q);
        basis_[p] = q;
    }

    void eliminate(std::vector<Rational>& row, Rational& rhs, std::size_t p, std::size_t q) {
        const Rational factor = row[q];
        if (factor == 0) return;
        for (std::size_t j = 0; j < row.size(); ++j) row[j] -= factor * rows_[p][j];
        rhs -= factor * rhs_[p];
    }

    // Bland: entering column is the lowest-index eligible one; leaving row is
    // the ratio-test minimum with ties broken by lowest basic variable index.
    bool iterate(int which, std::size_t col_limit) {
        for (;;) {
            std::size_t q = col_limit;
            for (std::size_t j = 0; j < col_limit; ++j) {
                if (obj_[which].cost[j] < 0) {
                    q = j;
                    break;
                }
            }
            if (q == col_limit) return true;
            std::size_t p = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][q] <= 0) continue;
                const Rational ratio = rhs_[i] / rows_[i][q];
                if (p == rows_.size() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[p])) {
                    p = i;
                    best = ratio;
                }
            }
            if (p == rows_.size()) return false;
            pivot(p, q);
        }
    }

    bool phase_one() {
        if (!iterate(0, n_)) throw InternalError("simplex: auxiliary problem unbounded");
        if (obj_[0].rhs != 0) return false;
        // Kick leftover degenerate artificials out of the basis; a row with
        // no real-column support is redundant and gets dropped.
        for (std::size_t i = rows_.size(); i-- > 0;) {
            if (basis_[i] < n_) continue;
            std::size_t q = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (rows_[i][j] != 0) {
                    q = j;
                    break;
                }
            }
            if (q < n_) {
                pivot(i, q);
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        return true;
    }

    void phase_two() {
        if (!iterate(1, n_)) throw InternalError("simplex: objective unbounded");
    }

    std::size_t n_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<std::size_t> basis_;
    ObjectiveRow obj_[2];
};

inline void check_dimensions(const Polytope& p, const std::vector<Rational>& q) {
    if (static_cast<int>(q.size()) != p.d) {
        throw std::invalid_argument("hull: query dimension does not match polytope");
    }
    if (p.corners.empty()) throw std::invalid_argument("hull: polytope has no corners");
}

inline Rational cross2(const std::vector<Rational>& o, const std::vector<Rational>& a,
                       const std::vector<Rational>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone-chain hull over exact rationals; pts must be distinct. Collinear
// interior points are discarded (non-strict turns pop), so the result is the
// extreme set. Returns positions into pts, unordered.
inline std::vector<std::size_t> extreme_positions_2d(const std::vector<std::vector<Rational>>& pts) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        if (pts[l][0] != pts[r][0]) return pts[l][0] < pts[r][0];
        return pts[l][1] < pts[r][1];
    });
    if (order.size() <= 2) return order;
    auto build = [&](auto begin, auto end) {
        std::vector<std::size_t> chain;
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= 2 &&
                   cross2(pts[chain[chain.size() - 2]], pts[chain.back()], pts[*it]) <= 0) {
                chain.pop_back();
            }
            chain.push_back(*it);
        }
        return chain;
    };
    std::vector<std::size_t> lower = build(order.begin(), order.end());
    std::vector<std::size_t> upper = build(order.rbegin(), order.rend());
    lower.insert(lower.end(), upper.begin() + 1, upper.end() - 1);
    return lower;
}

} // namespace detail

// Exact membership: q is in the hull iff lambda >= 0 with sum 1 and
// sum(lambda_i * corner_i) = q exists, a pure feasibility LP.
inline bool hull_contains_point(int d, const std::vector<std::vector<Rational>>& corners,
                                const std::vector<Rational>& q) {
    if (corners.empty()) return false;
    const std::size_t k = corners.size();
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(d) + 1,
                                         std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> b(static_cast<std::size_t>(d) + 1, Rational(0));
    for (std::size_t j = 0; j < k; ++j) {
        if (static_cast<int>(corners[j].size()) != d) {
            throw std::invalid_argument("hull: corner dimension mismatch");
        }
        for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)][j] = corners[j][static_cast<std::size_t>(i)];
        a[static_cast<std::size_t>(d)][j] = Rational(1);
    }
    for (int i = 0; i < d; ++i) b[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)];
    b[static_cast<std::size_t>(d)] = Rational(1);
    std::vector<Rational> cost(k, Rational(0));
    return detail::SimplexTableau::solve(std::move(a), std::move(b), std::move(cost)).feasible;
}

inline bool hull_contains(const Polytope& p, const std::vector<Rational>& q) {
    detail::check_dimensions(p, q);
    return hull_contains_point(p.d, p.corners, q);
}

// Exact min over the hull of the l-infinity distance to q:
//   min t  s.t.  sum(lambda_i corner_i) - t <= q  (componentwise)
//                sum(lambda_i corner_i) + t >= q
//                sum lambda = 1, lambda >= 0.
// Slacks turn the 2d inequalities into equalities; variables are
// lambda (k), t, then the 2d slacks.
inline Rational hull_distance_linf(const Polytope& p, const std::vector<Rational>& q) {
    detail::check_dimensions(p, q);
    const std::size_t k = p.corners.size();
    const std::size_t d = static_cast<std::size_t>(p.d);
    const std::size_t n = k + 1 + 2 * d;
    const std::size_t m = 2 * d + 1;
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> b(m, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (p.corners[j].size() != d) throw std::invalid_argument("hull: corner dimension mismatch");
            a[i][j] = p.corners[j][i];
            a[d + i][j] = p.corners[j][i];
        }
        a[i][k] = Rational(-1);
        a[i][k + 1 + i] = Rational(1); // slack for the upper bound
        a[d + i][k] = Rational(1);
        a[d + i][k + 1 + d + i] = Rational(-1); // surplus for the lower bound
        b[i] = q[i];
        b[d + i] = q[i];
    }
    for (std::size_t j = 0; j < k; ++j) a[2 * d][j] = Rational(1);
    b[2 * d] = Rational(1);
    std::vector<Rational> cost(n, Rational(0));
    cost[k] = Rational(1);
    const LpResult res = detail::SimplexTableau::solve(std::move(a), std::move(b), std::move(cost));
    if (!res.feasible) throw InternalError("hull_distance_linf: distance LP infeasible");
    return res.objective;
}

// Indices of the extreme points among candidates, in first-occurrence order.
// Duplicates (as exact rationals) keep their first index; a point lying in
// the hull of the remaining ones is dropped for good, which is sound because
// the extreme set of a finite point cloud is unique.
inline std::vector<std::size_t> minimal_corner_indices(
    int d, const std::vector<std::vector<Rational>>& candidates) {
    if (candidates.empty()) throw std::invalid_argument("minimize: no candidates");
    std::map<std::vector<Rational>, std::size_t> first_seen;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (static_cast<int>(candidates[i].size()) != d) {
            throw std::invalid_argument("minimize: candidate dimension mismatch");
        }
        first_seen.emplace(candidates[i], i);
    }
    std::vector<std::size_t> kept;
    kept.reserve(first_seen.size());
    for (const auto& [coords, idx] : first_seen) kept.push_back(idx);
    std::sort(kept.begin(), kept.end());
    if (d == 2 && kept.size() > 2) {
        std::vector<std::vector<Rational>> pts;
        pts.reserve(kept.size());
        for (std::size_t j : kept) pts.push_back(candidates[j]);
        std::vector<char> extreme(kept.size(), 0);
        for (std::size_t pos : detail::extreme_positions_2d(pts)) extreme[pos] = 1;
        std::vector<std::size_t> filtered;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (extreme[j]) filtered.push_back(kept[j]);
        }
        arith_stats().note_exact();
        return filtered;
    }
    for (std::size_t pos = 0; pos < kept.size();) {
        if (kept.size() == 1) break;
        std::vector<std::vector<Rational>> others;
        others.reserve(kept.size() - 1);
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (j != pos) others.push_back(candidates[kept[j]]);
        }
        if (hull_contains_point(d, others, candidates[kept[pos]])) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
        } else {
            ++pos;
        }
    }
    return kept;
}

inline Polytope minimize(int d, const std::vector<std::vector<Rational>>& candidates) {
    Polytope p;
    p.d = d;
    for (std::size_t i : minimal_corner_indices(d, candidates)) p.corners.push_back(candidates[i]);
    return p;
}

// Coordinate-selection map: keeps the listed 1-indexed coordinates (strictly
// increasing), then re-minimizes, since projection can make corners interior.
inline Polytope project(const Polytope& p, const std::vector<int>& points) {
    if (points.empty()) throw std::invalid_argument("project: no coordinates selected");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] < 1 || points[i] > p.d) throw std::invalid_argument("project: index out of range");
        if (i > 0 && points[i] <= points[i - 1]) {
            throw std::invalid_argument("project: indices must be strictly increasing");
        }
    }
    std::vector<std::vector<Rational>> image;
    image.reserve(p.corners.size());
    for (const auto& corner : p.corners) {
        std::vector<Rational> row;
        row.reserve(points.size());
        for (int idx : points) row.push_back(corner[static_cast<std::size_t>(idx - 1)]);
        image.push_back(std::move(row));
    }
    return minimize(static_cast<int>(points.size()), image);
}

} // namespace convopoly
