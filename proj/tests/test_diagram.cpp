#include "gcfiber/diagram.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace gcfiber;
using namespace gcfiber::testing;

TEST_CASE("gamma enumeration") {
    auto g3 = gamma(3);
    CHECK(g3 == std::vector<LadderIndex>{{1, 1}, {1, 2}, {2, 1}});
    CHECK(gamma(6).size() == 15);
    for (int n = 3; n <= 9; ++n) {
        auto g = gamma(n);
        CHECK(g.size() == static_cast<size_t>(n * (n - 1) / 2));
        std::set<LadderIndex> seen(g.begin(), g.end());
        CHECK(seen.size() == g.size());
        for (const auto& a : g) CHECK(in_gamma(n, a));
    }
    CHECK_THROWS_AS(gamma(2), std::invalid_argument);
}

TEST_CASE("segment and center points") {
    auto p = segment_point(3, 2, rat("0"));
    CHECK(p.u_at({1, 1}) == 0);
    CHECK(p.u_at({1, 2}) == 1);
    CHECK(p.u_at({2, 1}) == -1);

    auto q = segment_point(3, 2, rat("1/2"));
    CHECK(q.u_at({1, 2}) == rat("1/2"));
    CHECK(q.u_at({2, 1}) == rat("-1/2"));

    auto r = segment_point(6, 2, rat("1"));
    for (const auto& a : gamma(6)) {
        if (in_box(2, a)) CHECK(r.u_at(a) == 0);
        else CHECK(r.u_at(a) == Rational(a.j - a.i));
    }

    auto s = segment_point(7, 3, rat("1/2"));
    CHECK(s.u_at({1, 2}) == rat("1/2"));
    CHECK(s.u_at({1, 4}) == 3);

    CHECK(center_point(3).u_at({1, 2}) == 1);
    CHECK(center_point(4).u_at({2, 1}) == -1);
    CHECK(center_point(5).u_at({1, 3}) == 2);

    CHECK_THROWS_AS(segment_point(7, 4, rat("1/2")), std::invalid_argument);
    CHECK_THROWS_AS(segment_point(6, 2, rat("2")), std::invalid_argument);

    // Membership in the polytope on a grid of t values.
    for (int n : {4, 5, 6, 7}) {
        for (int m = 2; m <= n / 2; ++m) {
            for (int tick = 0; tick <= 5; ++tick) {
                CHECK(segment_point(n, m, Rational(tick, 5)).in_polytope());
            }
        }
    }
}

TEST_CASE("orders") {
    CHECK(order_hor_less({1, 2}, {2, 1}));
    CHECK(order_hor_less({2, 2}, {1, 4}));
    CHECK(order_ver_less({2, 1}, {1, 2}));

    for (int n = 3; n <= 9; ++n) {
        auto g = gamma(n);
        for (const auto& a : g) {
            CHECK(!order_hor_less(a, a));
            CHECK(!order_ver_less(a, a));
            for (const auto& b : g) {
                if (a == b) continue;
                CHECK(order_hor_less(a, b) != order_hor_less(b, a));
                CHECK(order_ver_less(a, b) != order_ver_less(b, a));
                for (const auto& c : g) {
                    if (order_hor_less(a, b) && order_hor_less(b, c)) CHECK(order_hor_less(a, c));
                }
            }
        }
    }
}

TEST_CASE("schubert cycles and disc intersections") {
    auto cycles6 = schubert_cycles(6);
    CHECK(cycles6.size() == 10);

    // P^hor_{4,5} in Fl(6) is the union of the facets through (4,1) and (4,2).
    const SchubertCycle* hor45 = nullptr;
    for (const auto& c : cycles6)
        if (c.horizontal && c.index == 4) hor45 = &c;
    REQUIRE(hor45 != nullptr);
    CHECK(hor45->facets == std::vector<Facet>{{true, {4, 1}}, {true, {4, 2}}});

    for (int n = 3; n <= 9; ++n) {
        for (const auto& cycle : schubert_cycles(n)) {
            for (const auto& a : gamma(n)) {
                Facet hor{true, a}, ver{false, a};
                CHECK(disc_intersection(hor, cycle) == ((cycle.horizontal && cycle.index == a.i) ? 1 : 0));
                CHECK(disc_intersection(ver, cycle) == ((!cycle.horizontal && cycle.index == a.j) ? 1 : 0));
            }
        }
    }

    // beta^{1,2}_{1,1} meets D^ver_{2,1} once.
    const auto& ver21 = *std::find_if(cycles6.begin(), cycles6.end(),
                                      [](const SchubertCycle& c) { return !c.horizontal && c.index == 1; });
    CHECK(disc_intersection(Facet{false, {1, 1}}, ver21) == 1);
}

TEST_CASE("seed index sets") {
    auto s72 = seed_index_set(7, 2);
    CHECK(s72.seed == std::vector<LadderIndex>{{2, 2}, {1, 3}, {2, 3}, {3, 3}, {3, 4}});
    CHECK(s72.initial == std::vector<LadderIndex>{{1, 3}, {2, 3}, {3, 3}, {3, 4}});

    CHECK(seed_index_set(4, 2).seed == std::vector<LadderIndex>{{2, 2}, {1, 3}, {2, 3}});
    CHECK(seed_index_set(6, 3).seed == std::vector<LadderIndex>{{3, 3}, {1, 4}, {2, 4}, {3, 4}});
    CHECK(seed_index_set(6, 2).seed == std::vector<LadderIndex>{{2, 2}, {1, 3}, {2, 3}, {3, 3}});
    CHECK(seed_index_set(9, 3).seed ==
          std::vector<LadderIndex>{{3, 3}, {1, 4}, {2, 4}, {3, 4}, {4, 4}, {4, 5}});
    CHECK_THROWS_AS(seed_index_set(7, 4), std::invalid_argument);
}

TEST_CASE("diagram shape") {
    DiagramShape s(7, 3);
    CHECK(s.k == 4);
    CHECK(!s.m_beyond_half);
    CHECK(DiagramShape(7, 4).m_beyond_half); // typeable, beyond floor(n/2)
    CHECK_THROWS_AS(DiagramShape(7, 5), std::invalid_argument);
    CHECK_THROWS_AS(DiagramShape(6, 1), std::invalid_argument);
    CHECK(DiagramShape(6, 3).k == 3);
}
