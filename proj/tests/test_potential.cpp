#include "gcfiber/potential.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace gcfiber;
using namespace gcfiber::testing;

namespace {

Assignment all_ones(int n, const Rational& cap) {
    Assignment y;
    for (const auto& a : gamma(n)) y.y[a] = NovikovSeries::constant(1, cap);
    return y;
}

Assignment random_units(int n, Rng& rng, const Rational& cap) {
    Assignment y;
    for (const auto& a : gamma(n)) y.y[a] = rng.unit(cap, 2);
    return y;
}

// The displayed four-term logarithmic derivative, instantiated by hand as an
// oracle against the generated gradient.
NovikovSeries four_term_gradient(const GcPoint& p, const LadderIndex& at, const Assignment& y,
                                 const BulkParameter& bulk) {
    const int n = p.n;
    auto y_at = [&](const LadderIndex& a) -> std::optional<NovikovSeries> {
        if (a.i == 0 || a.j == 0) return std::nullopt;
        if (a.i + a.j == n + 1) return NovikovSeries::one();
        return y.at(a);
    };
    NovikovSeries acc = NovikovSeries::zero();
    const int i = at.i, j = at.j;
    if (auto up = y_at({i, j + 1})) {
        NovikovSeries v = bulk.at({false, j}) * *up * invert_unit(y.at(at));
        acc -= v.shifted(p.u_at({i, j + 1}) - p.u_at(at));
    }
    if (auto lf = y_at({i - 1, j})) {
        NovikovSeries v = bulk.at({true, i - 1}) * *lf * invert_unit(y.at(at));
        acc -= v.shifted(p.u_at({i - 1, j}) - p.u_at(at));
    }
    if (auto rt = y_at({i + 1, j})) {
        NovikovSeries v = bulk.at({true, i}) * y.at(at) * invert_unit(*rt);
        acc += v.shifted(p.u_at(at) - p.u_at({i + 1, j}));
    }
    if (auto dn = y_at({i, j - 1})) {
        NovikovSeries v = bulk.at({false, j - 1}) * y.at(at) * invert_unit(*dn);
        acc += v.shifted(p.u_at(at) - p.u_at({i, j - 1}));
    }
    return acc;
}

} // namespace

TEST_CASE("Fl(3) potential reproduces the displayed Laurent polynomial") {
    for (std::string ts : {"1/4", "1/2", "3/4"}) {
        GcPoint p = segment_point(3, 2, rat(ts));
        PotentialExpr w = build_potential(p);
        CHECK(canonical_text(w, true) ==
              "(y_1_2/y_1_1 + y_1_1/y_2_1 + y_1_2 + 1/y_2_1)*T^(1-t) + (1/y_1_2 + y_2_1)*T^(1+t)");
    }
    GcPoint p = segment_point(3, 2, rat("1/2"));
    CHECK(canonical_text(build_potential(p), false) ==
          "(y_1_2/y_1_1 + y_1_1/y_2_1 + y_1_2 + 1/y_2_1)*T^(1/2) + (1/y_1_2 + y_2_1)*T^(3/2)");
}

TEST_CASE("exponent groups of the segment potential") {
    PotentialExpr w = build_potential(segment_point(6, 2, rat("1/3")));
    std::set<Rational> exps;
    for (const auto& t : w.terms) exps.insert(t.t_exp);
    CHECK(exps == std::set<Rational>{rat("2/3"), rat("1"), rat("4/3")});

    PotentialExpr w0 = build_potential(center_point(5));
    for (const auto& t : w0.terms) CHECK(t.t_exp == 1);
    CHECK(!w0.zero_exponent_flag);

    PotentialExpr w1 = build_potential(segment_point(6, 2, rat("1")));
    CHECK(w1.zero_exponent_flag); // boundary point: flagged, not fatal
}

TEST_CASE("facet bijection") {
    for (int n : {3, 4, 6}) {
        GcPoint p = center_point(n);
        PotentialExpr w = build_potential(p);
        CHECK(w.terms.size() == gamma(n).size() * 2);
        std::set<std::pair<bool, LadderIndex>> facets;
        for (const auto& t : w.terms) {
            facets.insert({t.facet.horizontal, t.facet.at});
            // The T-exponent is the facet's distance at the generating point.
            if (t.facet.horizontal)
                CHECK(t.t_exp == p.u_at(t.facet.at) - p.u_at({t.facet.at.i + 1, t.facet.at.j}));
            else
                CHECK(t.t_exp == p.u_at({t.facet.at.i, t.facet.at.j + 1}) - p.u_at(t.facet.at));
        }
        CHECK(facets.size() == w.terms.size());
    }
}

TEST_CASE("apply_bulk") {
    PotentialExpr w = build_potential(segment_point(6, 2, rat("1/2")));

    // The empty bulk is the identity on the term list.
    PotentialExpr same = apply_bulk(w, BulkParameter{});
    REQUIRE(same.terms.size() == w.terms.size());
    for (size_t i = 0; i < w.terms.size(); ++i) CHECK(!same.terms[i].bulk);

    // c^hor_{4,5} touches exactly the two facet terms of P^hor_{4,5}.
    BulkParameter bulk;
    bulk.hor[4] = NovikovSeries::constant(1, rat("3")) + NovikovSeries::monomial(1, 1, rat("3"));
    PotentialExpr wb = apply_bulk(w, bulk);
    std::set<LadderIndex> tagged;
    for (const auto& t : wb.terms)
        if (t.bulk) {
            CHECK(t.bulk->horizontal);
            CHECK(t.bulk->index == 4);
            CHECK(t.facet.horizontal);
            tagged.insert(t.facet.at);
        }
    CHECK(tagged == std::set<LadderIndex>{{4, 1}, {4, 2}});

    BulkParameter non_unit;
    non_unit.ver[2] = NovikovSeries::monomial(1, 1, rat("3"));
    CHECK_THROWS_AS(apply_bulk(w, non_unit), std::domain_error);
}

TEST_CASE("Fl(3) deformed potential and gradients") {
    const Rational t = rat("1/2");
    const Rational cap = rat("4");
    GcPoint p = segment_point(3, 2, t);
    PotentialExpr w = build_potential(p);

    BulkParameter tentative;
    tentative.ver[1] = NovikovSeries::constant(1, cap) + NovikovSeries::monomial(1, 2 * t, cap);
    PotentialExpr wb = apply_bulk(w, tentative);

    // W(1,1,1) = 4 T^{1-t} + 2 T^{1+t}; the tentative bulk adds 2 T^{1+t}.
    Assignment ones = all_ones(3, cap);
    NovikovSeries plain = evaluate(w, ones, BulkParameter{});
    CHECK(equals_mod(plain, NovikovSeries::monomial(4, rat("1/2")) + NovikovSeries::monomial(2, rat("3/2")), cap));
    NovikovSeries deformed = evaluate(wb, ones, tentative);
    CHECK(equals_mod(deformed, NovikovSeries::monomial(4, rat("1/2")) + NovikovSeries::monomial(4, rat("3/2")), cap));

    // The (1,1)-gradient vanishes identically once y_{1,1}^2 = 1 + T^{2t}.
    Assignment y = ones;
    y.y[{1, 1}] = sqrt_unit(tentative.ver.at(1), -1);
    CHECK(normalized_gradient(wb, {1, 1}, y, tentative).is_zero());
    CHECK(!normalized_gradient(wb, {1, 1}, ones, tentative).is_zero());

    // evaluate(y12/y11) at y11 = -sqrt(1+T^{2t}) equals -invert(sqrt(1+T^{2t})).
    PotentialExpr ratio;
    ratio.n = 3;
    PotentialTerm term;
    term.num = LadderIndex{1, 2};
    term.den = LadderIndex{1, 1};
    ratio.terms.push_back(term);
    CHECK(evaluate(ratio, y, BulkParameter{}) == -invert_unit(sqrt_unit(tentative.ver.at(1), +1)));

    CHECK(evaluate(PotentialExpr{3, {}, false}, y, BulkParameter{}).is_zero());
}

TEST_CASE("generated gradient equals the hand-instantiated four-term formula") {
    Rng rng(5150);
    const Rational cap = rat("2");
    for (int n = 3; n <= 6; ++n) {
        for (int m = 2; m <= std::max(2, n / 2); ++m) {
            if (n == 3 && m != 2) continue;
            GcPoint p = segment_point(n, m, rat("1/3"));
            PotentialExpr w = build_potential(p);
            BulkParameter bulk;
            for (int i = 1; i <= n - 1; ++i) {
                if (rng.integer(0, 1)) bulk.hor[i] = rng.unit(cap, 1);
                if (rng.integer(0, 1)) bulk.ver[i] = rng.unit(cap, 1);
            }
            PotentialExpr wb = apply_bulk(w, bulk);
            Assignment y = random_units(n, rng, cap);
            for (const auto& a : gamma(n)) {
                NovikovSeries generated = evaluate(log_gradient(wb, a), y, bulk);
                NovikovSeries byhand = four_term_gradient(p, a, y, bulk);
                CHECK(equals_mod(generated, byhand, cap));
            }
        }
    }
}

TEST_CASE("multiplicative finite difference identity") {
    // W(y with y_a doubled) - W(y with y_a halved) = (3/2) * y_a dW/dy_a,
    // exactly, because every monomial has exponent -1, 0 or +1 in y_a.
    Rng rng(99);
    const Rational cap = rat("2");
    GcPoint p = segment_point(5, 2, rat("1/2"));
    PotentialExpr w = build_potential(p);
    for (int iter = 0; iter < 10; ++iter) {
        Assignment y = random_units(5, rng, cap);
        for (const auto& a : gamma(5)) {
            Assignment up = y, dn = y;
            up.y[a] = y.at(a) * NovikovSeries::constant(2);
            dn.y[a] = y.at(a) * NovikovSeries::constant(rat("1/2"));
            NovikovSeries lhs = evaluate(w, up, {}) - evaluate(w, dn, {});
            NovikovSeries rhs = evaluate(log_gradient(w, a), y, {}) * NovikovSeries::constant(rat("3/2"));
            CHECK(equals_mod(lhs, rhs, cap));
        }
    }
}

TEST_CASE("normalized gradient at the center is a rational constant") {
    Assignment ones = all_ones(4, rat("3"));
    PotentialExpr w = build_potential(center_point(4));
    for (const auto& a : gamma(4)) {
        NovikovSeries g = normalized_gradient(w, a, ones, {});
        CHECK(g.is_constant());
    }
    CHECK(normalized_gradient(w, {1, 3}, ones, {}).leading_coefficient() == 1);
    CHECK(normalized_gradient(w, {1, 1}, ones, {}).is_zero());
}
