#include "gcfiber/diagram.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gcfiber {

std::string to_string(const LadderIndex& a) {
    std::ostringstream out;
    out << "(" << a.i << "," << a.j << ")";
    return out.str();
}

std::vector<LadderIndex> gamma(int n) {
    if (n < 3) throw std::invalid_argument("gamma(n) requires n >= 3");
    std::vector<LadderIndex> out;
    for (int d = 2; d <= n; ++d)
        for (int i = 1; i < d; ++i) out.push_back({i, d - i});
    return out;
}

bool order_hor_less(const LadderIndex& a, const LadderIndex& b) {
    if (a.i + a.j != b.i + b.j) return a.i + a.j < b.i + b.j;
    return a.i < b.i;
}

bool order_ver_less(const LadderIndex& a, const LadderIndex& b) {
    if (a.i + a.j != b.i + b.j) return a.i + a.j < b.i + b.j;
    return a.j < b.j;
}

DiagramShape::DiagramShape(int n_, std::optional<int> m_) : n(n_), m(m_), k((n_ + 1) / 2) {
    if (n < 3) throw std::invalid_argument("DiagramShape requires n >= 3");
    if (m) {
        if (*m < 2 || *m > k) throw std::invalid_argument("box size m out of range [2, ceil(n/2)]");
        m_beyond_half = (*m > n / 2);
    }
}

Rational GcPoint::u_at(const LadderIndex& a) const {
    if (a.i + a.j == n + 1) return lambda.at(static_cast<size_t>(a.i) - 1);
    auto it = u.find(a);
    if (it == u.end()) throw std::out_of_range("no coordinate at " + to_string(a));
    return it->second;
}

bool GcPoint::in_polytope() const {
    for (const auto& a : gamma(n)) {
        if (u_at({a.i, a.j + 1}) - u_at(a) < 0) return false;
        if (u_at(a) - u_at({a.i + 1, a.j}) < 0) return false;
    }
    return true;
}

std::vector<Rational> monotone_lambda(int n) {
    std::vector<Rational> lambda;
    lambda.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) lambda.emplace_back(n - 2 * i + 1);
    return lambda;
}

GcPoint segment_point(int n, int m, const Rational& t) {
    if (n < 3) throw std::invalid_argument("segment_point requires n >= 3");
    const int k = (n + 1) / 2;
    const bool fl3 = (n == 3 && m == 2);
    if (!fl3 && (m < 2 || m > k || (m > n / 2 && n % 2 != 0)))
        throw std::invalid_argument("segment_point: m out of range");
    if (t < 0 || t > 1) throw std::invalid_argument("segment_point: t must lie in [0, 1]");

    GcPoint p;
    p.n = n;
    p.lambda = monotone_lambda(n);
    p.segment_m = m;
    p.segment_t = t;
    for (const auto& a : gamma(n)) {
        Rational base(a.j - a.i);
        p.u[a] = (std::max(a.i, a.j) <= m) ? base * (Rational(1) - t) : base;
    }
    return p;
}

GcPoint center_point(int n) {
    GcPoint p = segment_point(n, 2, Rational(0));
    p.segment_m.reset();
    p.segment_t = Rational(0);
    return p;
}

std::vector<SchubertCycle> schubert_cycles(int n) {
    std::vector<SchubertCycle> out;
    for (int i = 1; i <= n - 1; ++i) {
        SchubertCycle hor{true, i, {}};
        for (int s = 1; s <= n - i; ++s) hor.facets.push_back({true, {i, s}});
        out.push_back(std::move(hor));
    }
    for (int j = 1; j <= n - 1; ++j) {
        SchubertCycle ver{false, j, {}};
        for (int r = 1; r <= n - j; ++r) ver.facets.push_back({false, {r, j}});
        out.push_back(std::move(ver));
    }
    return out;
}

int disc_intersection(const Facet& facet, const SchubertCycle& cycle) {
    if (facet.at.i < 1 || facet.at.j < 1) throw std::invalid_argument("malformed facet");
    if (facet.horizontal != cycle.horizontal) return 0;
    return (facet.horizontal ? facet.at.i : facet.at.j) == cycle.index ? 1 : 0;
}

SeedIndexSet seed_index_set(int n, int m) {
    const int k = (n + 1) / 2;
    if (m < 2 || m > k || (m > n / 2 && n % 2 != 0))
        throw std::invalid_argument("seed_index_set: m out of range");
    SeedIndexSet out;
    out.seed.push_back({m, m});
    for (int s = 1; s <= m; ++s) out.seed.push_back({s, m + 1});
    for (int r = m + 1;; ++r) {
        if (in_gamma(n, {r, r})) out.seed.push_back({r, r});
        else break;
        if (in_gamma(n, {r, r + 1})) out.seed.push_back({r, r + 1});
        else break;
    }
    out.initial.assign(out.seed.begin() + 1, out.seed.end());
    return out;
}

} // namespace gcfiber
