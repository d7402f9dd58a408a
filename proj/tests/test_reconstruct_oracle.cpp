#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "convopoly/oracle.hpp"
#include "convopoly/reconstruct.hpp"
#include "convopoly/walks.hpp"

using namespace convopoly;

namespace {

Rational rat(long long p, long long q = 1) { return Rational(BigInt(p), BigInt(q)); }

IntegerSet make_set(std::vector<long long> elems, long long lo, long long hi) {
    return IntegerSet::make(std::move(elems), lo, hi);
}

std::string key_of(const std::vector<Rational>& v) {
    std::string s;
    for (const auto& r : v) s += format_rational(r) + ";";
    return s;
}

std::set<std::string> cloud_keys(const SpectrumCloud& cloud) {
    std::set<std::string> keys;
    for (const auto& p : cloud.points) keys.insert(key_of(p));
    return keys;
}

// recount the whole subset spectrum with the set-based counters
std::set<std::string> naive_cloud(int d, long long n, ConvKind kind, const std::vector<int>& shifts) {
    std::set<std::string> keys;
    const long long width = kind == ConvKind::diff ? n : 2 * n + 1;
    const long long lo = kind == ConvKind::diff ? 1 : -n;
    const long long denom = kind == ConvKind::diff ? n : 2 * n + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask) {
        std::vector<long long> elems;
        for (long long i = 0; i < width; ++i) {
            if ((mask >> i) & 1) elems.push_back(lo + i);
        }
        const IntegerSet s = make_set(std::move(elems), lo, lo + width - 1);
        std::vector<Rational> point;
        for (int x : shifts) {
            const long long c = kind == ConvKind::diff ? conv_diff(s, x) : conv_sum(s, x);
            point.emplace_back(BigInt(c), BigInt(denom));
        }
        keys.insert(key_of(point));
    }
    return keys;
}

} // namespace

TEST_CASE("traversal counts floor the scaled weights") {
    const std::vector<std::vector<int>> two{{1, 2}, {1, 2}};
    CHECK(multiplicities({rat(1, 2), rat(1, 2)}, 100, two) == std::vector<long long>{25, 25});

    const std::vector<std::vector<int>> mixed{{0}, {0, 1, 3, 2}};
    CHECK(multiplicities({rat(1, 3), rat(2, 3)}, 10, mixed) == std::vector<long long>{3, 1});

    CHECK_THROWS_AS(multiplicities({rat(1)}, 10, two), std::invalid_argument);
    CHECK_THROWS_AS(multiplicities({rat(1, 2), rat(1, 4)}, 10, two), std::invalid_argument);
    CHECK_THROWS_AS(multiplicities({rat(3, 2), rat(-1, 2)}, 10, two), std::invalid_argument);
    CHECK_THROWS_AS(multiplicities({rat(1, 2), rat(1, 2)}, 0, two), std::invalid_argument);
    CHECK_THROWS_AS(multiplicities({rat(1), rat(0)}, 10, {{1, 2}, {}}), std::invalid_argument);
}

TEST_CASE("cycles link into one walk") {
    const ShiftGraph g = build_debruijn(2);

    CHECK(link_cycles(g, {{1, 2}, {0, 1, 2}}, {1, 1}) == std::vector<int>{1, 2, 1, 2, 0, 1});
    // disjoint pair forces a two-step bridge through vertex 0
    CHECK(link_cycles(g, {{0, 1, 2}, {1, 3, 2}}, {1, 1}) ==
          std::vector<int>{0, 1, 2, 0, 0, 1, 3, 2, 1});
    CHECK(link_cycles(g, {{3}}, {3}) == std::vector<int>{3, 3, 3, 3});

    for (const auto& walk : {link_cycles(g, {{1, 2}, {0, 1, 2}}, {1, 1}),
                             link_cycles(g, {{0, 1, 2}, {1, 3, 2}}, {2, 3})}) {
        CHECK(is_walk(g, walk));
    }

    CHECK_THROWS_AS(link_cycles(g, {{0}, {3}}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(link_cycles(g, {{0}}, {-1}), std::invalid_argument);
    CHECK_THROWS_AS(link_cycles(g, {{0}, {3}}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(link_cycles(g, {{0, 3}}, {1}), std::invalid_argument);
}

TEST_CASE("walks spell explicit sets") {
    const ShiftGraph g = build_debruijn(2);

    // three turns around the 3-cycle started at label 10 spell 100100100;
    // only the first nine positions survive the trim
    const std::vector<int> tour{2, 0, 1, 2, 0, 1, 2, 0, 1, 2};
    CHECK(walk_to_set(g, tour, 9).elements == std::vector<long long>{1, 4, 7});

    const IntegerSet a = make_set({1, 3}, 1, 5);
    const std::vector<int> open = encode_walk(a, g.d);
    CHECK(walk_to_set(g, open, 5).elements == a.elements);
    CHECK(walk_to_set(g, close_walk(g, open), 5).elements == a.elements);

    CHECK_THROWS_AS(walk_to_set(g, {0, 3}, 5), std::invalid_argument);
    CHECK_THROWS_AS(walk_to_set(g, {0, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(walk_to_set(build_double_debruijn(2), {0}, 5), std::invalid_argument);
}

TEST_CASE("doubled walks spell symmetric sets") {
    const ShiftGraph g = build_double_debruijn(2);

    const IntegerSet a = make_set({-1, 2}, -3, 3);
    const std::vector<int> closed = close_walk(g, encode_double_walk(a, g.d));
    REQUIRE(closed == std::vector<int>{9, 6, 0, 9});
    CHECK(walk_to_set_double(g, closed, 3).elements == a.elements);

    // the open walk's windows never reach position -n, and the closing edges
    // replay the start labels there, so the round trip may disagree with the
    // input at -n and only at -n; no positive-shift sum count sees that slot
    const auto without_left = [](std::vector<long long> v, long long n) {
        std::erase(v, -n);
        return v;
    };
    for (const IntegerSet& orig : {make_set({-5, -2, 0, 1, 4, 6}, -6, 6),
                                   make_set({-6, -2, 0, 1, 4, 6}, -6, 6)}) {
        const IntegerSet back = walk_to_set_double(g, close_walk(g, encode_double_walk(orig, g.d)), 6);
        CHECK(without_left(back.elements, 6) == without_left(orig.elements, 6));
        for (long long x = 1; x <= 2; ++x) CHECK(conv_sum(back, x) == conv_sum(orig, x));
    }

    CHECK_THROWS_AS(walk_to_set_double(g, {0, 3}, 5), std::invalid_argument);
    CHECK_THROWS_AS(walk_to_set_double(build_debruijn(2), {0}, 5), std::invalid_argument);
}

TEST_CASE("realized sets hit their target correlations") {
    const ShiftGraph g = build_debruijn(2);
    const std::vector<std::vector<int>> cat = enumerate_cycles(g);
    REQUIRE(cat.size() == 6);

    std::vector<Rational> on_ones(6, rat(0));
    on_ones[5] = rat(1); // the all-ones loop, corner (1,1)
    const RealizeResult full = realize(g, cat, on_ones, 1000);
    CHECK(full.set.elements.size() == 1000);
    CHECK(full.achieved == std::vector<Rational>{rat(999, 1000), rat(998, 1000)});
    CHECK(full.linf_error == rat(2, 1000));
    CHECK(full.linf_error <= full.apriori_bound);

    std::vector<Rational> on_zero(6, rat(0));
    on_zero[0] = rat(1);
    const RealizeResult empty = realize(g, cat, on_zero, 1000);
    CHECK(empty.set.elements.empty());
    CHECK(empty.linf_error == 0);

    std::vector<Rational> on_alt(6, rat(0));
    on_alt[3] = rat(1); // the 2-cycle, corner (0, 1/2)
    const RealizeResult alt = realize(g, cat, on_alt, 1000);
    CHECK(alt.set.elements.size() == 500);
    CHECK(alt.set.elements.front() == 2);
    CHECK(alt.achieved == std::vector<Rational>{rat(0), rat(499, 1000)});
    CHECK(alt.linf_error == rat(1, 1000));

    const ShiftGraph gd = build_double_debruijn(1);
    const RealizeResult dbl = realize(gd, {{pack_double_vertex(1, 1, 1)}}, {rat(1)}, 50);
    CHECK(dbl.set.elements.size() == 101);
    CHECK(dbl.achieved == std::vector<Rational>{rat(100, 101)});
    CHECK(dbl.linf_error == rat(1, 101));

    CHECK_THROWS_AS(realize(g, cat, std::vector<Rational>(6, rat(1, 3)), 1000),
                    std::invalid_argument);
}

TEST_CASE("subset spectrum by brute force") {
    const SpectrumCloud tiny = enumerate_spectrum(2, 2, ConvKind::diff, {1, 2});
    CHECK(cloud_keys(tiny) == std::set<std::string>{"0/1;0/1;", "1/2;0/1;"});

    const SpectrumCloud unit = enumerate_spectrum(1, 1, ConvKind::diff, {1});
    CHECK(cloud_keys(unit) == std::set<std::string>{"0/1;"});

    const SpectrumCloud unit_sum = enumerate_spectrum(1, 1, ConvKind::sum, {1});
    CHECK(cloud_keys(unit_sum) == std::set<std::string>{"0/1;", "2/3;"});

    // the full interval attains (n-1)/n, (n-2)/n, ...
    const SpectrumCloud d3 = enumerate_spectrum(3, 8, ConvKind::diff, shifts_identity(3));
    CHECK(cloud_keys(d3).count("7/8;6/8;5/8;") == 0); // keys are reduced
    CHECK(cloud_keys(d3).count("7/8;3/4;5/8;") == 1);

    // a shift wider than the window pairs nothing
    const SpectrumCloud wide = enumerate_spectrum(2, 2, ConvKind::diff, {1, 3});
    for (const auto& p : wide.points) CHECK(p[1] == 0);
    CHECK(cloud_keys(wide).count("1/2;0/1;") == 1);
}

TEST_CASE("spectrum matches the set-based recount") {
    for (long long n = 2; n <= 6; ++n) {
        CHECK(cloud_keys(enumerate_spectrum(2, n, ConvKind::diff, {1, 2})) ==
              naive_cloud(2, n, ConvKind::diff, {1, 2}));
    }
    CHECK(cloud_keys(enumerate_spectrum(2, 8, ConvKind::diff, {2, 4})) ==
          naive_cloud(2, 8, ConvKind::diff, {2, 4}));
    for (long long n = 1; n <= 3; ++n) {
        CHECK(cloud_keys(enumerate_spectrum(2, n, ConvKind::sum, {1, 2})) ==
              naive_cloud(2, n, ConvKind::sum, {1, 2}));
    }
}

TEST_CASE("spectrum is deterministic across thread counts") {
    const SpectrumCloud one = enumerate_spectrum(2, 10, ConvKind::diff, {1, 2}, 1);
    const SpectrumCloud four = enumerate_spectrum(2, 10, ConvKind::diff, {1, 2}, 4);
    CHECK(one.points == four.points);
}

TEST_CASE("spectrum validates its inputs") {
    CHECK_THROWS_AS(enumerate_spectrum(2, 23, ConvKind::diff, {1, 2}), CapExceeded);
    CHECK_THROWS_AS(enumerate_spectrum(2, 11, ConvKind::sum, {1, 2}), CapExceeded);
    CHECK_THROWS_AS(enumerate_spectrum(0, 5, ConvKind::diff, {}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_spectrum(9, 5, ConvKind::diff, shifts_identity(9)),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_spectrum(2, 5, ConvKind::diff, {1}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_spectrum(2, 5, ConvKind::diff, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_spectrum(2, 5, ConvKind::diff, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_spectrum(2, 0, ConvKind::diff, {1, 2}), std::invalid_argument);
    CHECK(shifts_identity(3) == std::vector<int>{1, 2, 3});
    CHECK(parse_conv_kind("diff") == ConvKind::diff);
    CHECK(parse_conv_kind("sum") == ConvKind::sum);
    CHECK_THROWS_AS(parse_conv_kind("prod"), InputError);
}

TEST_CASE("enclosure report measures both directions") {
    Polytope p;
    p.d = 2;
    p.corners = {{rat(0), rat(0)}, {rat(1, 4), rat(0)}, {rat(0), rat(1, 2)}, {rat(1), rat(1)}};

    SpectrumCloud corners_only;
    corners_only.d = 2;
    corners_only.points = p.corners;
    const EnclosureReport ideal = enclosure_report(corners_only, p);
    CHECK(ideal.forward_max == 0);
    CHECK(ideal.converse_max == rat(1, 2)); // midpoint of the long diagonal

    const SpectrumCloud real = enumerate_spectrum(2, 12, ConvKind::diff, {1, 2});
    const EnclosureReport rep = enclosure_report(real, p);
    CHECK(rep.forward_max == rat(1, 42));
    CHECK(rep.converse_max == rat(1, 6));

    SpectrumCloud skinny;
    skinny.d = 1;
    skinny.points = {{rat(0)}};
    CHECK_THROWS_AS(enclosure_report(skinny, p), std::invalid_argument);
    SpectrumCloud hollow;
    hollow.d = 2;
    CHECK_THROWS_AS(enclosure_report(hollow, p), std::invalid_argument);
}
