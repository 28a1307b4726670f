#include "gcfiber/lift.hpp"

#include "gcfiber/json_io.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace gcfiber;
using namespace gcfiber::testing;

namespace {

// The inner-lift equations, re-evaluated through the potential layer (the
// constructor never goes through these code paths).
void check_inner_equations(int n, int m, const Rational& t, const InnerLift& inner, const Rational& order) {
    GcPoint p = segment_point(n, m, t);
    PotentialExpr w = build_potential(p);
    BulkParameter bulk;
    if (inner.c_ver_corner) bulk.ver[m] = *inner.c_ver_corner;
    PotentialExpr wb = apply_bulk(w, bulk);
    Assignment y;
    for (const auto& [a, v] : inner.y) y.y[a] = v;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            NovikovSeries g = normalized_gradient(wb, {i, j}, y, bulk);
            CHECK(known_to(g, order));
            CHECK(is_zero_mod(g, order));
        }
    }
}

} // namespace

TEST_CASE("lift_inside satisfies the box equations and the border congruences") {
    for (auto [n, m, ts] : std::vector<std::tuple<int, int, const char*>>{
             {6, 2, "1/2"}, {7, 3, "1/2"}, {7, 3, "1/4"}, {6, 3, "1/3"}, {9, 4, "1/5"}}) {
        Rational t = rat(ts), cap = rat("3");
        Seed seed = find_generic_seed(n, m);
        InnerLift inner = lift_inside(n, m, t, cap, seed.d);

        check_inner_equations(n, m, t, inner, cap);

        auto yc = symmetric_inner_solution(m, seed.at({m, m}));
        for (int j = 1; j <= m; ++j) {
            // Leading congruence y_{m+1,j} = (-1)^{m-j} d_{m,m}^2 / y_{j,m+1} mod T^{>0}.
            if (in_gamma(n, {m + 1, j})) {
                Rational expect = seed.at({m, m}) * seed.at({m, m}) / seed.at({j, m + 1});
                if ((m - j) % 2 != 0) expect = -expect;
                const NovikovSeries& v = inner.y.at({m + 1, j});
                CHECK(v.is_unit());
                CHECK(v.leading_coefficient() == expect);
            }
            // First correction valuation (m - j + 1) t for the staged column.
            if (j <= m - 1) {
                NovikovSeries diff = inner.y.at({j + 1, m}) - NovikovSeries::constant(yc.at({j + 1, m}));
                REQUIRE(!diff.is_zero());
                CHECK(*valuation(diff).value == Rational(m - j + 1) * t);
            }
        }
        for (const auto& [l, a] : inner.a) CHECK(a.is_unit());
    }
}

TEST_CASE("inner correction coefficients obey the stage recurrence") {
    const int n = 9, m = 4;
    const Rational t = rat("1/2");
    Seed seed = find_generic_seed(n, m);
    InnerLift inner = lift_inside(n, m, t, rat("4"), seed.d);
    auto yc = symmetric_inner_solution(m, seed.at({m, m}));
    for (int j = 1; j <= m - 1; ++j) {
        Rational q = Rational(m - j + 1) * t;
        std::vector<Rational> corr;
        for (int i = 0; i <= m - j - 1; ++i) {
            LadderIndex at{j + 1 + i, m - i};
            corr.push_back((inner.y.at(at) - NovikovSeries::constant(yc.at(at))).coefficient(q));
        }
        for (size_t i = 1; i < corr.size(); ++i) {
            LadderIndex hi{static_cast<int>(i) + j + 1, m - static_cast<int>(i)};
            LadderIndex lo{static_cast<int>(i) + j, m - static_cast<int>(i)};
            REQUIRE(corr[i - 1] != 0);
            CHECK(corr[i] / corr[i - 1] == -(yc.at(hi) * yc.at(hi)) / (yc.at(lo) * yc.at(lo)));
        }
    }
}

TEST_CASE("certify end to end") {
    for (auto [n, m, ts, caps] : std::vector<std::tuple<int, int, const char*, const char*>>{
             {4, 2, "1/2", "3"}, {6, 3, "1/4", "2"}, {5, 2, "2/3", "2"}}) {
        Certificate cert = certify(n, m, rat(ts), rat(caps));
        CertificateReport report = verify_certificate(cert);
        CHECK(report.all_pass());
        for (const auto& [a, v] : cert.point.y) {
            CHECK(v.is_unit());
            CHECK(v.leading_coefficient() == cert.slt_leading.at(a));
        }
        for (const auto& [i, c] : cert.bulk.hor) CHECK(c.is_unit());
        for (const auto& [j, c] : cert.bulk.ver) CHECK(c.is_unit());
    }
}

TEST_CASE("certify validates its range") {
    CHECK_THROWS_AS(certify(3, 2, rat("1/2"), rat("3")), std::invalid_argument);
    CHECK_THROWS_AS(certify(6, 2, rat("0"), rat("3")), std::invalid_argument);
    CHECK_THROWS_AS(certify(6, 2, rat("1"), rat("3")), std::invalid_argument);
    // Cap must exceed the largest symbolic gradient offset (here m t = 2).
    CHECK_THROWS_AS(certify(8, 4, rat("1/2"), rat("2")), std::invalid_argument);
}

TEST_CASE("certify_fl3 matches the worked construction") {
    for (std::string ts : {"1/4", "1/2", "3/4"}) {
        Rational t = rat(ts), cap = rat("3");
        Certificate cert = certify_fl3(t, cap);
        CHECK(verify_certificate(cert).all_pass());

        NovikovSeries expected_b = NovikovSeries::constant(1, cap) + NovikovSeries::monomial(1, 2 * t, cap);
        CHECK(cert.bulk.ver.at(1) == expected_b);

        const NovikovSeries& y11 = cert.point.y.at({1, 1});
        CHECK(y11.coefficient(rat("0")) == -1);
        CHECK(y11.coefficient(2 * t) == rat("-1/2")); // -1 - (1/2) T^{2t} mod T^{>2t}
        CHECK(cert.bulk.ver.at(2).leading_coefficient() == rat("-1/2"));
        CHECK(cert.bulk.hor.at(2).leading_coefficient() == rat("1/2"));

        // The (1,1) gradient vanishes identically at the exact square root.
        PotentialExpr wb = apply_bulk(build_potential(segment_point(3, 2, t)), cert.bulk);
        Assignment y;
        for (const auto& [a, v] : cert.point.y) y.y[a] = v;
        CHECK(normalized_gradient(wb, {1, 1}, y, cert.bulk).is_zero());
    }
    CHECK_THROWS_AS(certify_fl3(rat("0"), rat("3")), std::invalid_argument);
}

TEST_CASE("verify_certificate flags tampering") {
    Certificate cert = certify(5, 2, rat("1/2"), rat("2"));
    REQUIRE(verify_certificate(cert).all_pass());

    Certificate bent = cert;
    bent.point.y[{1, 2}] *= NovikovSeries::constant(1, rat("2")) + NovikovSeries::monomial(1, 1, rat("2"));
    CertificateReport report = verify_certificate(bent);
    CHECK(!report.all_pass());

    Certificate non_unit = cert;
    non_unit.bulk.ver[3] = NovikovSeries::monomial(1, rat("1/2"), rat("2"));
    CertificateReport report2 = verify_certificate(non_unit);
    CHECK(!report2.all_pass());

    Certificate wrong_lead = cert;
    wrong_lead.slt_leading[{1, 2}] += 1;
    CHECK(!verify_certificate(wrong_lead).all_pass());
}

TEST_CASE("verification is idempotent under serialization") {
    Certificate cert = certify(6, 2, rat("1/3"), rat("2"));
    ordered_json j = certificate_to_json(cert);
    Certificate back = certificate_from_json(j);
    CHECK(certificate_to_json(back) == j);
    CHECK(dump_json(certificate_to_json(back)) == dump_json(j));

    CertificateReport a = verify_certificate(cert);
    CertificateReport b = verify_certificate(back);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].what == b.entries[i].what);
        CHECK(a.entries[i].pass == b.entries[i].pass);
    }
}

TEST_CASE("lift_outside agrees with certify") {
    const int n = 7, m = 3;
    Rational t = rat("1/2"), cap = rat("2");
    Seed seed = find_generic_seed(n, m);
    SltSolution slt = solve_slt(n, m, seed);
    InnerLift inner = lift_inside(n, m, t, cap, seed.d);
    auto [bulk, point] = lift_outside(n, m, t, cap, slt, inner);
    Certificate cert = certify_with_seed(n, m, t, cap, seed);
    for (const auto& [a, v] : cert.point.y) CHECK(point.at(a) == v);
    for (const auto& [i, c] : cert.bulk.hor) CHECK(bulk.hor.at(i) == c);
    for (const auto& [j, c] : cert.bulk.ver) CHECK(bulk.ver.at(j) == c);
}

TEST_CASE("series round trip through JSON") {
    Rng rng(13);
    for (int iter = 0; iter < 50; ++iter) {
        NovikovSeries s = rng.element(rat("3"), 4);
        CHECK(series_from_json(series_to_json(s)) == s);
    }
    NovikovSeries exact = NovikovSeries::constant(rat("-7/3"));
    CHECK(series_from_json(series_to_json(exact)) == exact);
}
