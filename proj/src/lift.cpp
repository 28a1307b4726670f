#include "gcfiber/lift.hpp"

#include <algorithm>
#include <sstream>

namespace gcfiber {

namespace {

std::string stage_name(const LadderIndex& at) {
    return "equation at " + to_string(at);
}

// Shared solver state for the inside and outside lifting passes. All interior
// equations (i+j < n) are bulk-free in z-coordinates, so they are generated
// from the undeformed potential's log-gradients; the last diagonal and the
// n = 2m corner isolate c-products instead.
class LiftEngine {
public:
    LiftEngine(int n, int m, const Rational& t, const Rational& store_cap, const Seed& seed)
        : n_(n), m_(m), k_((n + 1) / 2), t_(t), cap_store_(store_cap),
          cap_work_(store_cap + m + 2), seed_(seed),
          point_(segment_point(n, m, t)), w_(build_potential(point_)) {
        inner_const_ = symmetric_inner_solution(m_, seed_.at({m_, m_}));
    }

    void run_inside() {
        for (const auto& [a, v] : inner_const_)
            if (a.i + a.j <= m_ + 1) z_[a] = NovikovSeries::constant(v, cap_work_);
        for (int s = 1; s <= m_; ++s)
            if (in_gamma(n_, {s, m_ + 1}))
                z_[{s, m_ + 1}] = NovikovSeries::constant(seed_.at({s, m_ + 1}), cap_work_);

        for (int j = 1; j <= m_ - 1; ++j) {
            const Rational q = Rational(m_ - j + 1) * t_;
            const Rational dj = seed_.at({j, m_ + 1});
            if (j == 1) {
                Rational a1 = dj * inner_const_.at({1, m_ - 1}) / (inner_const_.at({1, m_}) * inner_const_.at({1, m_}));
                a_[j] = NovikovSeries::constant(a1, cap_work_);
            } else {
                NovikovSeries den = z_at({j - 1, m_}) + NovikovSeries::monomial(dj, q, cap_work_);
                if (!den.is_unit()) throw LiftFailure("inner stage", "multiplier denominator is not a unit");
                a_[j] = div_unit(NovikovSeries::constant(dj, cap_work_), den);
            }
            if (!a_.at(j).is_unit()) throw LiftFailure("inner stage", "multiplier a_j is not a unit");

            solve_interior({j, m_}, {j + 1, m_});
            for (int i = j + 1; i <= m_ - 1; ++i) solve_interior({i, m_ + j - i}, {i + 1, m_ + j - i});
            if (in_gamma(n_, {m_ + 1, j})) solve_interior({m_, j}, {m_ + 1, j});
        }

        if (2 * m_ < n_) {
            solve_interior({m_, m_}, {m_ + 1, m_});
        } else {
            // n = 2m: the corner equation fixes c^ver_{m+1,m} (leading value 1).
            ph_[m_] = NovikovSeries::one();
            pv_[m_] = solve_product({m_, m_}, /*horizontal=*/false);
            if (pv_.at(m_).leading_coefficient() != 1)
                throw LiftFailure("corner equation", "c^ver_{m+1,m} does not lead with 1");
        }
        inside_done_ = true;
    }

    void run_outside() {
        if (!inside_done_) throw std::logic_error("run_inside first");
        for (int diag = m_ + 3; diag <= n_; ++diag) {
            int above_end, below_start;
            if (diag <= 2 * m_ + 1) {
                above_end = diag - m_ - 2;
                below_start = m_ + 2;
            } else {
                const int pivot = diag / 2;
                z_[{pivot, diag - pivot}] = NovikovSeries::constant(seed_.at({pivot, diag - pivot}), cap_work_);
                above_end = pivot - 1;
                below_start = pivot + 1;
            }
            for (int i = std::min(above_end, diag - 1); i >= 1; --i)
                solve_interior({i, diag - 1 - i}, {i, diag - i});
            for (int r = std::max(below_start, 2); r <= diag - 1; ++r)
                solve_interior({r - 1, diag - r}, {r, diag - r});
        }

        int hor_start = k_, ver_start = k_;
        if (2 * m_ == n_) {
            hor_start = ver_start = m_ + 1; // anchors placed by run_inside
        } else if (n_ % 2 == 0) {
            pv_[k_] = NovikovSeries::one(); // gauge: c^ver_{k+1,k} = 1
            ph_[k_] = solve_product({k_, k_}, /*horizontal=*/true);
            hor_start = ver_start = k_ + 1;
        }
        for (int i = hor_start; i <= n_ - 1; ++i) ph_[i] = solve_product({i, n_ - i}, true);
        for (int j = ver_start; j <= n_ - 1; ++j) pv_[j] = solve_product({n_ - j, j}, false);
        outside_done_ = true;
    }

    InnerLift make_inner() const {
        InnerLift inner;
        inner.n = n_;
        inner.m = m_;
        inner.t = t_;
        inner.a = a_;
        if (2 * m_ == n_) inner.c_ver_corner = pv_.at(m_);
        for (int i = 1; i <= m_; ++i)
            for (int j = 1; j <= m_; ++j) inner.y[{i, j}] = z_.at({i, j});
        for (int l = 1; l <= m_; ++l) {
            inner.y[{l, m_ + 1}] = y_value({l, m_ + 1});
            inner.y[{m_ + 1, l}] = y_value({m_ + 1, l});
        }
        return inner;
    }

    BulkParameter make_bulk() const {
        BulkParameter bulk;
        for (int i = k_; i <= n_ - 1; ++i) {
            bulk.hor[i] = truncate(div_unit(ph_at(i), ph_at(i - 1)), cap_store_);
            bulk.ver[i] = truncate(div_unit(pv_at(i), pv_at(i - 1)), cap_store_);
        }
        return bulk;
    }

    Assignment make_point() const {
        Assignment y;
        for (const auto& a : gamma(n_)) y.y[a] = truncate(y_value(a), cap_store_);
        return y;
    }

private:
    int n_, m_, k_;
    Rational t_, cap_store_, cap_work_;
    Seed seed_;
    GcPoint point_;
    PotentialExpr w_;
    std::map<LadderIndex, Rational> inner_const_;
    std::map<LadderIndex, NovikovSeries> z_;
    std::map<int, NovikovSeries> ph_, pv_;
    std::map<int, NovikovSeries> a_;
    bool inside_done_ = false, outside_done_ = false;

    const NovikovSeries& z_at(const LadderIndex& a) const {
        auto it = z_.find(a);
        if (it == z_.end()) throw std::logic_error("lift: value at " + to_string(a) + " not yet determined");
        return it->second;
    }

    NovikovSeries ph_at(int idx) const {
        if (idx == k_ - 1) return NovikovSeries::one();
        return ph_.at(idx);
    }
    NovikovSeries pv_at(int idx) const {
        if (idx == k_ - 1) return NovikovSeries::one();
        return pv_.at(idx);
    }

    // y = F * z; frozen indices are handled by the expression layer.
    NovikovSeries y_value(const LadderIndex& a) const {
        if (a.i + a.j == n_ + 1) return NovikovSeries::one();
        NovikovSeries v = z_at(a);
        if (a.i >= k_ + 1) v = v * ph_at(a.i - 1);
        else if (a.j >= k_ + 1) v = div_unit(v, pv_at(a.j - 1));
        return v;
    }

    // Solves the (bulk-free) z-form of the gradient equation at `at` for the
    // single unknown reference, checking the isolation stays in Lambda_U.
    void solve_interior(const LadderIndex& at, const LadderIndex& unknown) {
        PotentialExpr g = log_gradient(w_, at);
        auto nu = min_t_exp(g);
        if (!nu) throw std::logic_error("empty gradient at " + to_string(at));

        NovikovSeries rest = NovikovSeries::zero(cap_work_);
        const PotentialTerm* pivot = nullptr;
        for (const auto& term : g.terms) {
            const bool hits_num = term.num && *term.num == unknown;
            const bool hits_den = term.den && *term.den == unknown;
            if (hits_num || hits_den) {
                if (pivot) throw std::logic_error("unknown appears twice at " + to_string(at));
                pivot = &term;
                continue;
            }
            NovikovSeries v = NovikovSeries::constant(term.scalar, cap_work_);
            if (term.num) v *= z_at(*term.num);
            if (term.den) v *= invert_unit(z_at(*term.den));
            rest += v.shifted(term.t_exp - *nu);
        }
        if (!pivot) throw std::logic_error("unknown absent from equation at " + to_string(at));

        const Rational offset = pivot->t_exp - *nu;
        NovikovSeries shifted = (-rest).shifted(-offset);
        NovikovSeries result;
        if (pivot->den && *pivot->den == unknown) {
            if (!shifted.is_unit())
                throw LiftFailure(stage_name(at), "degenerate isolation: residue valuation differs from the "
                                                  "crossing exponent");
            NovikovSeries numv = NovikovSeries::constant(pivot->scalar, cap_work_);
            if (pivot->num) numv *= z_at(*pivot->num);
            result = div_unit(numv, shifted);
        } else {
            NovikovSeries denv = NovikovSeries::constant(Rational(1) / pivot->scalar, cap_work_);
            if (pivot->den) denv *= z_at(*pivot->den);
            result = shifted * denv;
        }
        if (!result.is_unit()) throw LiftFailure(stage_name(at), "isolated value is not a unit");
        z_[unknown] = result;
    }

    // Last-diagonal equations: the unknown is a c-product attached to the
    // frozen-side term; the other frozen-side term carries the inverse of the
    // previous product of the same family.
    NovikovSeries solve_product(const LadderIndex& at, bool horizontal) {
        PotentialExpr g = log_gradient(w_, at);
        auto nu = min_t_exp(g);
        if (!nu) throw std::logic_error("empty gradient at " + to_string(at));

        NovikovSeries rest = NovikovSeries::zero(cap_work_);
        std::optional<Rational> unknown_offset;
        for (const auto& term : g.terms) {
            const bool frozen_num = !term.num && term.den;
            const bool frozen_den = term.num && !term.den;
            const bool is_unknown = horizontal ? frozen_den : frozen_num;
            if (is_unknown) {
                if (unknown_offset) throw std::logic_error("two product terms at " + to_string(at));
                unknown_offset = term.t_exp - *nu;
                continue;
            }
            NovikovSeries v = NovikovSeries::constant(term.scalar, cap_work_);
            if (frozen_num) v *= invert_unit(ph_at(at.i - 1)); // -c^ver/(prod) * 1/z
            if (frozen_den) v *= invert_unit(pv_at(at.j - 1)); // +c^hor/(prod) * z
            if (term.num) v *= z_at(*term.num);
            if (term.den) v *= invert_unit(z_at(*term.den));
            rest += v.shifted(term.t_exp - *nu);
        }
        if (!unknown_offset) throw std::logic_error("no product term at " + to_string(at));

        NovikovSeries shifted = (-rest).shifted(-*unknown_offset);
        NovikovSeries value;
        if (horizontal) {
            // +P * z_{i,j} * T^off + rest = 0
            value = div_unit(shifted, z_at(at));
        } else {
            // -P / z_{i,j} * T^off + rest = 0
            value = -(shifted * z_at(at));
        }
        if (!value.is_unit())
            throw LiftFailure(stage_name(at), "c-product is not a unit (seed not generic at the last diagonal)");
        return value;
    }
};

Seed seed_from_inner_data(int n, int m, const std::map<LadderIndex, Rational>& d) {
    Seed seed;
    seed.n = n;
    seed.m = m;
    seed.d = d;
    return seed;
}

} // namespace

bool CertificateReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

std::string CertificateReport::summary() const {
    std::ostringstream out;
    size_t fails = 0;
    for (const auto& e : entries)
        if (!e.pass) {
            ++fails;
            out << " [" << e.what << ": " << e.detail << "]";
        }
    std::ostringstream head;
    head << entries.size() << " checks, " << fails << " failed" << out.str();
    return head.str();
}

InnerLift lift_inside(int n, int m, const Rational& t, const Rational& cap,
                      const std::map<LadderIndex, Rational>& d) {
    if (t <= 0 || t >= 1) throw std::invalid_argument("lift_inside requires 0 < t < 1");
    if (cap <= 0) throw std::invalid_argument("lift_inside requires a positive cap");
    LiftEngine engine(n, m, t, cap, seed_from_inner_data(n, m, d));
    engine.run_inside();
    return engine.make_inner();
}

std::pair<BulkParameter, Assignment> lift_outside(int n, int m, const Rational& t, const Rational& cap,
                                                  const SltSolution& slt, const InnerLift& inner) {
    LiftEngine engine(n, m, t, cap, slt.seed);
    engine.run_inside();
    // The inner pass is deterministic in the seed; cross-check the handoff.
    InnerLift recomputed = engine.make_inner();
    for (const auto& [a, v] : inner.y) {
        auto it = recomputed.y.find(a);
        if (it == recomputed.y.end() || !equals_mod(it->second, v, std::min(cap, Rational(1))))
            throw LiftFailure("lift_outside", "inner lift disagrees with the supplied data at " + to_string(a));
    }
    engine.run_outside();
    return {engine.make_bulk(), engine.make_point()};
}

Certificate certify_with_seed(int n, int m, const Rational& t, const Rational& cap, const Seed& seed) {
    if (n == 3) throw std::invalid_argument("use certify_fl3 for n = 3");
    if (n < 4) throw std::invalid_argument("certify requires n >= 4");
    DiagramShape shape(n, m);
    if (t <= 0 || t >= 1)
        throw std::invalid_argument("certify requires 0 < t < 1 (t = 0 and t = 1 are outside the solver's domain)");
    if (cap <= 0) throw std::invalid_argument("certify requires a positive cap");
    {
        // Every gradient must be checkable to a positive order: the largest
        // symbolic exponent offset over Gamma(n) must stay below the cap.
        PotentialExpr w = build_potential(segment_point(n, m, t));
        Rational max_offset(0);
        for (const auto& a : gamma(n)) {
            PotentialExpr g = log_gradient(w, a);
            auto lo = min_t_exp(g), hi = max_t_exp(g);
            if (lo && *hi - *lo > max_offset) max_offset = *hi - *lo;
        }
        if (cap <= max_offset)
            throw std::invalid_argument("cap " + to_string(cap) + " is too small: the largest gradient offset is " +
                                        to_string(max_offset) + "; choose cap > that");
    }

    SltSolution slt = solve_slt(n, m, seed);
    InnerLift inner = lift_inside(n, m, t, cap, seed.d);
    auto [bulk, point] = lift_outside(n, m, t, cap, slt, inner);

    Certificate cert;
    cert.n = n;
    cert.m = m;
    cert.t = t;
    cert.cap = cap;
    cert.bulk = std::move(bulk);
    cert.point = std::move(point);
    cert.seed = seed;
    cert.slt_leading = slt.inner_y;
    for (const auto& [a, v] : slt.y) cert.slt_leading[a] = v;
    cert.c_hor_leading = slt.c_hor;
    cert.c_ver_leading = slt.c_ver;

    cert.report = verify_certificate(cert);
    if (!cert.report.all_pass())
        throw LiftFailure("certify", "certificate failed verification: " + cert.report.summary());
    return cert;
}

Certificate certify(int n, int m, const Rational& t, const Rational& cap) {
    if (n == 3) throw std::invalid_argument("use certify_fl3 for n = 3");
    Seed seed = find_generic_seed(n, m);
    return certify_with_seed(n, m, t, cap, seed);
}

Certificate certify_fl3(const Rational& t, const Rational& cap) {
    if (t <= 0 || t >= 1) throw std::invalid_argument("certify_fl3 requires 0 < t < 1");
    if (cap <= 2 * t)
        throw std::invalid_argument("certify_fl3 requires cap > 2t (the bulk adjustment offset)");
    const Rational cap_work = cap + 2;
    const Rational two_t = 2 * t;

    Certificate cert;
    cert.n = 3;
    cert.m = 2;
    cert.t = t;
    cert.cap = cap;

    NovikovSeries tentative = NovikovSeries::constant(1, cap_work) + NovikovSeries::monomial(1, two_t, cap_work);
    NovikovSeries y11 = sqrt_unit(tentative, -1);
    Assignment y;
    y.y[{1, 1}] = y11;
    y.y[{1, 2}] = NovikovSeries::constant(1, cap_work);
    y.y[{2, 1}] = NovikovSeries::constant(1, cap_work);

    GcPoint point = segment_point(3, 2, t);
    PotentialExpr w = build_potential(point);

    // Adjust c^ver_{3,2} and c^hor_{2,3} so the (1,2)- and (2,1)-gradients
    // vanish: both enter a single term at offset 2t above the leading order.
    auto adjust = [&](const LadderIndex& at, const CoeffRef& target) -> NovikovSeries {
        PotentialExpr g = log_gradient(w, at);
        auto nu = min_t_exp(g);
        BulkParameter tentative_bulk;
        tentative_bulk.ver[1] = tentative;
        NovikovSeries rest = NovikovSeries::zero(cap_work);
        const PotentialTerm* pivot = nullptr;
        for (const auto& term : g.terms) {
            CoeffRef ref{term.facet.horizontal, term.facet.horizontal ? term.facet.at.i : term.facet.at.j};
            if (ref == target) {
                pivot = &term;
                continue;
            }
            NovikovSeries v = NovikovSeries::constant(term.scalar, cap_work);
            if (ref.horizontal == false && ref.index == 1) v *= tentative;
            if (term.num) v *= y.at(*term.num);
            if (term.den) v *= invert_unit(y.at(*term.den));
            rest += v.shifted(term.t_exp - *nu);
        }
        if (!pivot) throw std::logic_error("fl3: adjustment term not found");
        // pivot value: scalar * c * y_num / y_den * T^offset; solve for c.
        NovikovSeries coeff = NovikovSeries::constant(pivot->scalar, cap_work);
        if (pivot->num) coeff *= y.at(*pivot->num);
        if (pivot->den) coeff *= invert_unit(y.at(*pivot->den));
        NovikovSeries shifted = (-rest).shifted(-(pivot->t_exp - *nu));
        if (!shifted.is_unit())
            throw LiftFailure("fl3 adjustment", "residue valuation differs from the adjustment exponent");
        return div_unit(shifted, coeff);
    };

    NovikovSeries c_ver32 = adjust({1, 2}, CoeffRef{false, 2});
    NovikovSeries c_hor23 = adjust({2, 1}, CoeffRef{true, 2});

    cert.bulk.ver[1] = truncate(tentative, cap);
    cert.bulk.ver[2] = truncate(c_ver32, cap);
    cert.bulk.hor[2] = truncate(c_hor23, cap);
    for (auto& [a, v] : y.y) cert.point.y[a] = truncate(v, cap);

    cert.slt_leading[{1, 1}] = -1;
    cert.slt_leading[{1, 2}] = 1;
    cert.slt_leading[{2, 1}] = 1;
    cert.c_ver_leading[1] = 1;
    cert.c_ver_leading[2] = Rational(-1, 2);
    cert.c_hor_leading[2] = Rational(1, 2);

    cert.report = verify_certificate(cert);
    if (!cert.report.all_pass())
        throw LiftFailure("certify_fl3", "certificate failed verification: " + cert.report.summary());
    return cert;
}

CertificateReport verify_certificate(const Certificate& cert) {
    CertificateReport report;
    auto add = [&](const std::string& what, bool pass, const std::string& detail = "") {
        report.entries.push_back({what, pass, detail});
    };

    GcPoint point = segment_point(cert.n, cert.m, cert.t);
    PotentialExpr w = build_potential(point);

    for (const auto& a : gamma(cert.n)) {
        auto it = cert.point.y.find(a);
        if (it == cert.point.y.end()) {
            add("point " + to_string(a) + " present", false, "missing");
            continue;
        }
        add("point " + to_string(a) + " in Lambda_U", it->second.is_unit(),
            it->second.is_unit() ? "" : "valuation is not 0");
        auto lead = cert.slt_leading.find(a);
        if (lead != cert.slt_leading.end() && it->second.is_unit())
            add("point " + to_string(a) + " leading coefficient", it->second.leading_coefficient() == lead->second,
                "expected " + to_string(lead->second));
    }
    for (const auto& [i, c] : cert.bulk.hor) {
        add("bulk c_hor_" + std::to_string(i) + " in Lambda_U", c.is_unit());
        auto lead = cert.c_hor_leading.find(i);
        if (lead != cert.c_hor_leading.end() && c.is_unit())
            add("bulk c_hor_" + std::to_string(i) + " leading coefficient", c.leading_coefficient() == lead->second,
                "expected " + to_string(lead->second));
    }
    for (const auto& [j, c] : cert.bulk.ver) {
        add("bulk c_ver_" + std::to_string(j) + " in Lambda_U", c.is_unit());
        auto lead = cert.c_ver_leading.find(j);
        if (lead != cert.c_ver_leading.end() && c.is_unit())
            add("bulk c_ver_" + std::to_string(j) + " leading coefficient", c.leading_coefficient() == lead->second,
                "expected " + to_string(lead->second));
    }
    if (!std::all_of(report.entries.begin(), report.entries.end(), [](const CheckEntry& e) { return e.pass; }))
        return report;

    PotentialExpr wb = apply_bulk(w, cert.bulk); // all bulk entries are units here
    for (const auto& a : gamma(cert.n)) {
        PotentialExpr g = log_gradient(wb, a);
        auto lo = min_t_exp(g), hi = max_t_exp(g);
        if (!lo) {
            add("gradient " + to_string(a), true, "no terms");
            continue;
        }
        Rational n_check = cert.cap - (*hi - *lo);
        if (!report.min_n_check || n_check < *report.min_n_check) report.min_n_check = n_check;
        if (n_check <= 0) {
            add("gradient " + to_string(a) + " vanishes", false, "n_check <= 0: cap too small for this gradient");
            continue;
        }
        NovikovSeries resid = normalized_gradient(wb, a, cert.point, cert.bulk);
        if (!known_to(resid, n_check)) {
            add("gradient " + to_string(a) + " vanishes", false, "residual not known to order n_check");
            continue;
        }
        bool ok = is_zero_mod(resid, n_check);
        std::string detail;
        if (!ok) {
            std::ostringstream msg;
            msg << "residual " << resid.to_text() << " mod T^(" << to_string(n_check) << ")";
            detail = msg.str();
        }
        add("gradient " + to_string(a) + " vanishes mod T^(" + to_string(n_check) + ")", ok, detail);
    }
    return report;
}

} // namespace gcfiber
