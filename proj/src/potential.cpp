#include "gcfiber/potential.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gcfiber {

namespace {

// Symbolic u-coordinate a + b*t of a segment point; (value, 0) otherwise.
std::pair<Rational, Rational> symbolic_u(const GcPoint& p, const LadderIndex& a) {
    if (a.i + a.j == p.n + 1) return {p.lambda.at(static_cast<size_t>(a.i) - 1), Rational(0)};
    if (p.segment_m) {
        Rational base(a.j - a.i);
        if (std::max(a.i, a.j) <= *p.segment_m) return {base, -base};
        return {base, Rational(0)};
    }
    return {p.u_at(a), Rational(0)};
}

std::optional<LadderIndex> variable_ref(int n, const LadderIndex& a) {
    if (a.i + a.j == n + 1) return std::nullopt; // frozen diagonal, y = 1
    return a;
}

std::string variable_text(const std::optional<LadderIndex>& v) {
    if (!v) return "1";
    std::ostringstream out;
    out << "y_" << v->i << "_" << v->j;
    return out.str();
}

std::string exponent_text(const PotentialTerm& t, bool symbolic) {
    if (!symbolic) return to_string(t.t_exp);
    std::ostringstream out;
    if (t.exp_t == 0) return to_string(t.exp_const);
    if (t.exp_const != 0) out << to_string(t.exp_const);
    if (t.exp_t == 1) out << (t.exp_const != 0 ? "+" : "") << "t";
    else if (t.exp_t == -1) out << "-t";
    else {
        if (t.exp_t > 0 && t.exp_const != 0) out << "+";
        out << to_string(t.exp_t) << "t";
    }
    return out.str();
}

} // namespace

std::string to_string(const CoeffRef& c) {
    std::ostringstream out;
    if (c.horizontal) out << "c_hor_" << c.index << "_" << c.index + 1;
    else out << "c_ver_" << c.index + 1 << "_" << c.index;
    return out.str();
}

NovikovSeries BulkParameter::at(const CoeffRef& c) const {
    const auto& m = c.horizontal ? hor : ver;
    auto it = m.find(c.index);
    return it == m.end() ? NovikovSeries::one() : it->second;
}

bool BulkParameter::all_units() const {
    for (const auto& [i, c] : hor)
        if (!c.is_unit()) return false;
    for (const auto& [j, c] : ver)
        if (!c.is_unit()) return false;
    return true;
}

const NovikovSeries& Assignment::at(const LadderIndex& a) const {
    auto it = y.find(a);
    if (it == y.end()) throw std::out_of_range("assignment missing " + to_string(a));
    return it->second;
}

bool Assignment::all_units() const {
    for (const auto& [a, v] : y)
        if (!v.is_unit()) return false;
    return true;
}

PotentialExpr build_potential(const GcPoint& point) {
    PotentialExpr w;
    w.n = point.n;
    for (const auto& a : gamma(point.n)) {
        // Vertical facet u_{i,j+1} = u_{i,j}: term y_{i,j+1}/y_{i,j}.
        {
            auto [ac, at_] = symbolic_u(point, {a.i, a.j + 1});
            auto [bc, bt] = symbolic_u(point, a);
            PotentialTerm t;
            t.num = variable_ref(point.n, {a.i, a.j + 1});
            t.den = a;
            t.exp_const = ac - bc;
            t.exp_t = at_ - bt;
            t.t_exp = point.u_at({a.i, a.j + 1}) - point.u_at(a);
            t.facet = Facet{false, a};
            if (t.t_exp == 0) w.zero_exponent_flag = true;
            w.terms.push_back(std::move(t));
        }
        // Horizontal facet u_{i,j} = u_{i+1,j}: term y_{i,j}/y_{i+1,j}.
        {
            auto [ac, at_] = symbolic_u(point, a);
            auto [bc, bt] = symbolic_u(point, {a.i + 1, a.j});
            PotentialTerm t;
            t.num = a;
            t.den = variable_ref(point.n, {a.i + 1, a.j});
            t.exp_const = ac - bc;
            t.exp_t = at_ - bt;
            t.t_exp = point.u_at(a) - point.u_at({a.i + 1, a.j});
            t.facet = Facet{true, a};
            if (t.t_exp == 0) w.zero_exponent_flag = true;
            w.terms.push_back(std::move(t));
        }
    }
    return w;
}

PotentialExpr apply_bulk(const PotentialExpr& w, const BulkParameter& bulk) {
    if (!bulk.all_units()) throw std::domain_error("bulk entry is not a unit");
    PotentialExpr out = w;
    for (auto& t : out.terms) {
        CoeffRef ref{t.facet.horizontal, t.facet.horizontal ? t.facet.at.i : t.facet.at.j};
        const auto& m = ref.horizontal ? bulk.hor : bulk.ver;
        if (m.count(ref.index)) t.bulk = ref;
    }
    return out;
}

PotentialExpr log_gradient(const PotentialExpr& w, const LadderIndex& at) {
    PotentialExpr g;
    g.n = w.n;
    for (const auto& t : w.terms) {
        int weight = 0;
        if (t.num && *t.num == at) weight += 1;
        if (t.den && *t.den == at) weight -= 1;
        if (weight == 0) continue;
        PotentialTerm gt = t;
        gt.scalar = t.scalar * weight;
        g.terms.push_back(std::move(gt));
    }
    return g;
}

NovikovSeries evaluate(const PotentialExpr& expr, const Assignment& y, const BulkParameter& bulk) {
    NovikovSeries acc = NovikovSeries::zero();
    for (const auto& t : expr.terms) {
        NovikovSeries v = NovikovSeries::constant(t.scalar);
        if (t.bulk) v *= bulk.at(*t.bulk);
        if (t.num) v *= y.at(*t.num);
        if (t.den) v *= invert_unit(y.at(*t.den));
        acc += v.shifted(t.t_exp);
    }
    return acc;
}

std::optional<Rational> min_t_exp(const PotentialExpr& expr) {
    std::optional<Rational> out;
    for (const auto& t : expr.terms)
        if (!out || t.t_exp < *out) out = t.t_exp;
    return out;
}

std::optional<Rational> max_t_exp(const PotentialExpr& expr) {
    std::optional<Rational> out;
    for (const auto& t : expr.terms)
        if (!out || t.t_exp > *out) out = t.t_exp;
    return out;
}

NovikovSeries normalized_gradient(const PotentialExpr& wb, const LadderIndex& at,
                                  const Assignment& y, const BulkParameter& bulk) {
    PotentialExpr g = log_gradient(wb, at);
    auto nu = min_t_exp(g);
    if (!nu) return NovikovSeries::zero();
    for (auto& t : g.terms) t.t_exp -= *nu;
    return evaluate(g, y, bulk);
}

std::string canonical_text(const PotentialExpr& expr, bool symbolic) {
    std::vector<const PotentialTerm*> order;
    order.reserve(expr.terms.size());
    for (const auto& t : expr.terms) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](const PotentialTerm* a, const PotentialTerm* b) {
        if (a->t_exp != b->t_exp) return a->t_exp < b->t_exp;
        if (a->facet.at != b->facet.at) return order_hor_less(a->facet.at, b->facet.at);
        return !a->facet.horizontal && b->facet.horizontal; // vertical first
    });

    std::ostringstream out;
    size_t pos = 0;
    bool first_group = true;
    while (pos < order.size()) {
        size_t end = pos;
        while (end < order.size() && order[end]->t_exp == order[pos]->t_exp) ++end;
        if (!first_group) out << " + ";
        first_group = false;
        out << "(";
        for (size_t i = pos; i < end; ++i) {
            if (i > pos) out << " + ";
            const PotentialTerm& t = *order[i];
            if (t.scalar != 1) out << to_string(t.scalar) << "*";
            if (t.bulk) out << to_string(*t.bulk) << "*";
            if (!t.num && !t.den) out << "1";
            else if (t.num && !t.den) out << variable_text(t.num);
            else out << variable_text(t.num) << "/" << variable_text(t.den);
        }
        out << ")*T^(" << exponent_text(*order[pos], symbolic) << ")";
        pos = end;
    }
    if (order.empty()) out << "0";
    return out.str();
}

} // namespace gcfiber
