#include "gcfiber/slt.hpp"

#include <algorithm>
#include <sstream>

namespace gcfiber {

namespace {

LadderIndex up(const LadderIndex& a) { return {a.i, a.j + 1}; }
LadderIndex left(const LadderIndex& a) { return {a.i - 1, a.j}; }
LadderIndex right(const LadderIndex& a) { return {a.i + 1, a.j}; }
LadderIndex down(const LadderIndex& a) { return {a.i, a.j - 1}; }

bool in_box_not_corner(int m, const LadderIndex& a) {
    return in_box(m, a) && !(a.i == m && a.j == m);
}

int pivot_row(int diag) { return diag / 2; } // middle entry of {(r, diag-r)}

} // namespace

const Rational& Seed::at(const LadderIndex& a) const {
    auto it = d.find(a);
    if (it == d.end()) throw std::out_of_range("seed has no entry at " + gcfiber::to_string(a));
    return it->second;
}

std::string SltEquation::label() const {
    std::ostringstream out;
    switch (kind) {
    case Kind::Inside: out << "l" << gcfiber::to_string(at) << " [inside]"; break;
    case Kind::Outside: out << "l" << gcfiber::to_string(at) << " [outside]"; break;
    case Kind::Link: out << "link l=" << link_l; break;
    }
    return out.str();
}

const SltEquation& SltSystem::equation_at(const LadderIndex& a) const {
    for (const auto& eq : equations)
        if (eq.kind != SltEquation::Kind::Link && eq.at == a) return eq;
    throw std::out_of_range("no equation at " + gcfiber::to_string(a));
}

const SltEquation& SltSystem::link(int l) const {
    for (const auto& eq : equations)
        if (eq.kind == SltEquation::Kind::Link && eq.link_l == l) return eq;
    throw std::out_of_range("no link equation");
}

SltSystem build_slt(int n, int m) {
    DiagramShape shape(n, m);
    SltSystem sys;
    sys.n = n;
    sys.m = m;
    sys.k = shape.k;

    auto freeze = [n](const LadderIndex& a) -> std::optional<LadderIndex> {
        if (a.i + a.j == n + 1) return std::nullopt;
        return a;
    };

    for (const auto& a : gamma(n)) {
        const bool inside = in_box(m, a);
        SltEquation eq;
        eq.kind = inside ? SltEquation::Kind::Inside : SltEquation::Kind::Outside;
        eq.at = a;

        struct Raw {
            int sign;
            CoeffRef c;
            LadderIndex num, den;
        };
        const Raw raw[4] = {
            {-1, {false, a.j}, up(a), a},
            {-1, {true, a.i - 1}, left(a), a},
            {+1, {true, a.i}, a, right(a)},
            {+1, {false, a.j - 1}, a, down(a)},
        };
        for (const auto& r : raw) {
            if (r.num.i == 0 || r.den.j == 0) continue; // zero row / zero column
            if (inside) {
                if (!in_box(m, r.num) || !in_box(m, r.den)) continue;
            } else {
                if (in_box_not_corner(m, r.num) || in_box_not_corner(m, r.den)) continue;
            }
            SltTerm t;
            t.sign = r.sign;
            t.c = r.c;
            t.num = freeze(r.num);
            t.den = freeze(r.den);
            eq.terms.push_back(std::move(t));
        }
        sys.equations.push_back(std::move(eq));
    }

    for (int l = 1; l <= m; ++l) {
        SltEquation eq;
        eq.kind = SltEquation::Kind::Link;
        eq.at = {l, 0};
        eq.link_l = l;
        SltTerm first;
        first.sign = ((m + 1 - l) % 2 == 0) ? 1 : -1;
        first.num = freeze({l, m + 1});
        first.den = LadderIndex{m, m};
        SltTerm second;
        second.sign = 1;
        second.num = LadderIndex{m, m};
        second.den = freeze({m + 1, l});
        eq.terms = {first, second};
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

std::map<LadderIndex, Rational> symmetric_inner_base(int m) {
    if (m < 2) throw std::invalid_argument("symmetric_inner_base requires m >= 2");
    std::map<LadderIndex, Rational> out;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            if (i + j > m + 1) continue;
            Rational v(1);
            if (i < j)
                for (int r = 0; r <= j - i - 1; ++r) v *= Rational(2 * i + 2 * r);
            else if (i > j)
                for (int r = 0; r <= i - j - 1; ++r) v /= Rational(2 * j + 2 * r);
            out[{i, j}] = v;
        }
    }
    return out;
}

std::map<LadderIndex, Rational> symmetric_inner_solution(int m, const Rational& c) {
    if (c == 0) throw std::invalid_argument("symmetric_inner_solution requires c != 0");
    auto base = symmetric_inner_base(m);
    std::map<LadderIndex, Rational> full = base;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            if (i + j <= m + 1) continue;
            Rational v = base.at({m + 1 - j, m + 1 - i});
            if ((i + j - m - 1) % 2 != 0) v = -v;
            full[{i, j}] = v;
        }
    }
    // full y_{m,m} = (-1)^{m-1}; rescale so the corner equals c.
    Rational scale = (m % 2 == 1) ? c : -c;
    for (auto& [a, v] : full) v *= scale;
    return full;
}

namespace {

Rational row_factor(const std::map<int, Rational>& c_hor, int k, int row) {
    Rational f(1);
    for (int r = k; r <= row - 1; ++r) f *= c_hor.at(r);
    return f;
}

Rational col_factor(const std::map<int, Rational>& c_ver, int k, int col) {
    Rational f(1);
    for (int r = k; r <= col - 1; ++r) f *= c_ver.at(r);
    return f;
}

} // namespace

std::map<LadderIndex, Rational> coordinate_change_to_z(const std::map<LadderIndex, Rational>& y,
                                                       const std::map<int, Rational>& c_hor,
                                                       const std::map<int, Rational>& c_ver, int n, int m) {
    const int k = (n + 1) / 2;
    (void)m;
    std::map<LadderIndex, Rational> z;
    for (const auto& [a, v] : y) {
        if (a.i >= k + 1) z[a] = v / row_factor(c_hor, k, a.i);
        else if (a.j >= k + 1) z[a] = v * col_factor(c_ver, k, a.j);
        else z[a] = v;
    }
    return z;
}

std::map<LadderIndex, Rational> coordinate_change_to_y(const std::map<LadderIndex, Rational>& z,
                                                       const std::map<int, Rational>& c_hor,
                                                       const std::map<int, Rational>& c_ver, int n, int m) {
    const int k = (n + 1) / 2;
    (void)m;
    std::map<LadderIndex, Rational> y;
    for (const auto& [a, v] : z) {
        if (a.i >= k + 1) y[a] = v * row_factor(c_hor, k, a.i);
        else if (a.j >= k + 1) y[a] = v / col_factor(c_ver, k, a.j);
        else y[a] = v;
    }
    return y;
}

const Rational& ZState::z_at(const LadderIndex& a) const {
    auto it = z.find(a);
    if (it == z.end()) throw SltFailure(a, "value not yet determined");
    return it->second;
}

namespace {

Rational prod_hor_at(const ZState& s, int idx) {
    if (idx == s.k - 1) return Rational(1);
    auto it = s.prod_hor.find(idx);
    if (it == s.prod_hor.end()) throw SltFailure({idx, 0}, "horizontal c-product not yet determined");
    return it->second;
}

Rational prod_ver_at(const ZState& s, int idx) {
    if (idx == s.k - 1) return Rational(1);
    auto it = s.prod_ver.find(idx);
    if (it == s.prod_ver.end()) throw SltFailure({0, idx}, "vertical c-product not yet determined");
    return it->second;
}

} // namespace

Rational k_form(const ZState& s, const LadderIndex& at) {
    const int n = s.n, m = s.m;
    const int i = at.i, j = at.j;
    if (!in_gamma(n, at) || in_box(m, at))
        throw std::invalid_argument("k_form is defined outside B(m) only");

    if (i + j < n) {
        if (i >= j) {
            // isolates z_{i+1,j}
            Rational num = s.z_at({i, j + 1});
            if (!(i - 1 == m && j < m)) num += s.z_at({i - 1, j}); // drop y_{m,s}, s < m
            Rational zij = s.z_at(at);
            if (zij == 0) throw SltFailure(at, "pole: z vanishes");
            Rational v = num / (zij * zij);
            if (j - 1 >= 1) {
                Rational zd = s.z_at({i, j - 1});
                if (zd == 0) throw SltFailure(at, "pole: z vanishes");
                v -= Rational(1) / zd;
            }
            return v;
        }
        // i < j: isolates z_{i,j+1}
        Rational zij = s.z_at(at);
        Rational zr = s.z_at({i + 1, j});
        if (zr == 0) throw SltFailure(at, "pole: z vanishes");
        Rational inner = Rational(1) / zr;
        if (!(j - 1 == m && i < m)) { // drop 1/y_{r,m}, r < m
            Rational zd = s.z_at({i, j - 1});
            if (zd == 0) throw SltFailure(at, "pole: z vanishes");
            inner += Rational(1) / zd;
        }
        Rational v = zij * zij * inner;
        if (i - 1 >= 1) v -= s.z_at({i - 1, j});
        return v;
    }

    // i + j == n: the isolated quantity is a c-product.
    if (i >= j) {
        Rational num = Rational(1) / prod_hor_at(s, i - 1);
        if (i - 1 >= 1 && !(in_box_not_corner(m, {i - 1, j}))) num += s.z_at({i - 1, j});
        Rational zij = s.z_at(at);
        if (zij == 0) throw SltFailure(at, "pole: z vanishes");
        Rational v = num / (zij * zij);
        if (j - 1 >= 1) {
            Rational zd = s.z_at({i, j - 1});
            if (zd == 0) throw SltFailure(at, "pole: z vanishes");
            v -= Rational(1) / zd;
        }
        return v;
    }
    Rational inner = Rational(1) / prod_ver_at(s, j - 1);
    if (!(in_box_not_corner(m, {i, j - 1}))) {
        Rational zd = s.z_at({i, j - 1});
        if (zd == 0) throw SltFailure(at, "pole: z vanishes");
        inner += Rational(1) / zd;
    }
    Rational zij = s.z_at(at);
    Rational v = zij * zij * inner;
    if (i - 1 >= 1) v -= s.z_at({i - 1, j});
    return v;
}

namespace {

// Rows of diagonal `diag` whose values are produced by k-forms (the wings);
// everything else on the diagonal must already be present in the state.
void complete_diagonal_direct(ZState& s, int diag) {
    const int n = s.n, m = s.m;
    if (diag < 2 || diag > n) throw std::invalid_argument("diagonal out of range");
    int row_above_end, row_below_start; // unknown rows: 1..row_above_end and row_below_start..diag-1
    if (diag <= 2 * m + 1) {
        row_above_end = diag - m - 2;
        row_below_start = m + 2;
    } else {
        row_above_end = pivot_row(diag) - 1;
        row_below_start = pivot_row(diag) + 1;
    }
    for (int i = std::min(row_above_end, diag - 1); i >= 1; --i) {
        Rational v = k_form(s, {i, diag - 1 - i});
        if (v == 0) throw SltFailure({i, diag - i}, "isolated value vanishes");
        s.z[{i, diag - i}] = v;
    }
    for (int r = std::max(row_below_start, 2); r <= diag - 1; ++r) {
        Rational w = k_form(s, {r - 1, diag - r});
        if (w == 0) throw SltFailure({r, diag - r}, "isolated value vanishes");
        s.z[{r, diag - r}] = Rational(1) / w;
    }
}

} // namespace

FractionalLinear ab_recurrence(const std::vector<Rational>& bracket_single,
                               const std::vector<Rational>& bracket_pair) {
    if (bracket_single.size() != bracket_pair.size())
        throw std::invalid_argument("bracket sequences must have equal length");
    FractionalLinear f;
    f.a = {Rational(0), Rational(1)}; // A(-1), A(0)
    f.b = {Rational(1), Rational(0)}; // B(-1), B(0)
    for (size_t i = 0; i < bracket_single.size(); ++i) {
        size_t cur = f.a.size();
        f.a.push_back(bracket_single[i] * f.a[cur - 1] + bracket_pair[i] * f.a[cur - 2]);
        f.b.push_back(bracket_single[i] * f.b[cur - 1] + bracket_pair[i] * f.b[cur - 2]);
    }
    return f;
}

std::map<LadderIndex, Rational> propagate_diagonal(const ZState& state, int diag, PropagationMode mode) {
    const int n = state.n, m = state.m;
    if (diag < 2 || diag > n) throw std::invalid_argument("diagonal out of range");
    if (mode == PropagationMode::Direct) {
        ZState scratch = state;
        complete_diagonal_direct(scratch, diag);
        std::map<LadderIndex, Rational> out;
        for (int r = 1; r <= diag - 1; ++r) {
            auto it = scratch.z.find({r, diag - r});
            if (it != scratch.z.end()) out[it->first] = it->second;
        }
        return out;
    }

    // Recurrence mode: each wing value is a fractional-linear function of the
    // pivot (or of the wing anchor for diagonals crossing the box).
    std::map<LadderIndex, Rational> out;
    int anchor_above, anchor_below;
    if (diag <= 2 * m + 1) {
        anchor_above = diag - m - 1; // seed (s, m+1)
        anchor_below = m + 1;        // link (m+1, l)
    } else {
        anchor_above = anchor_below = pivot_row(diag);
    }
    for (int r = 1; r <= diag - 1; ++r) {
        auto it = state.z.find({r, diag - r});
        if (it != state.z.end()) out[it->first] = it->second;
    }

    // Up wing: X(i) = z_{a-i, diag-a+i}, eq at (a-i, diag-1-a+i), X(i) = [i] + [i,i-1]/X(i-1).
    {
        const int a = anchor_above;
        std::vector<Rational> singles, pairs;
        for (int i = 1; a - i >= 1; ++i) {
            LadderIndex e{a - i, diag - 1 - (a - i)};
            Rational ze = state.z_at(e);
            if (ze == 0) throw SltFailure(e, "pole: z vanishes");
            Rational q0(0);
            if (e.i - 1 >= 1) q0 -= state.z_at({e.i - 1, e.j});
            if (!(e.j - 1 == m && e.i < m)) {
                Rational zd = state.z_at({e.i, e.j - 1});
                if (zd == 0) throw SltFailure(e, "pole: z vanishes");
                q0 += ze * ze / zd;
            }
            singles.push_back(q0);
            pairs.push_back(ze * ze);
        }
        FractionalLinear f = ab_recurrence(singles, pairs);
        Rational x0 = state.z_at({a, diag - a});
        for (size_t i = 1; i < singles.size() + 1; ++i) {
            Rational den = f.a[i] * x0 + f.b[i];         // A(i-1) X0 + B(i-1)
            Rational num = f.a[i + 1] * x0 + f.b[i + 1]; // A(i) X0 + B(i)
            if (den == 0) throw SltFailure({a - static_cast<int>(i), diag - 1 - a + static_cast<int>(i)},
                                           "pole in fractional-linear chain");
            out[{a - static_cast<int>(i), diag - a + static_cast<int>(i)}] = num / den;
        }
    }

    // Down wing: X'(i) = z_{a+i, diag-a-i}; 1/X'(i) = u_i + X'(i-1)/v_i.
    {
        const int a = anchor_below;
        // Moebius matrices acting on X0: X'(i) = (A X0 + B) / (C X0 + D).
        Rational A(1), B(0), C(0), D(1);
        Rational x0 = (a <= diag - 1) ? state.z_at({a, diag - a}) : Rational(0);
        for (int i = 1; a + i <= diag - 1; ++i) {
            LadderIndex e{a + i - 1, diag - (a + i)};
            Rational ze = state.z_at(e);
            if (ze == 0) throw SltFailure(e, "pole: z vanishes");
            Rational u(0);
            if (e.j - 1 >= 1) {
                Rational zd = state.z_at({e.i, e.j - 1});
                if (zd == 0) throw SltFailure(e, "pole: z vanishes");
                u -= Rational(1) / zd;
            }
            if (!(e.i - 1 == m && e.j < m) && e.i - 1 >= 1) u += state.z_at({e.i - 1, e.j}) / (ze * ze);
            Rational v = ze * ze;
            // X'(i) = v / (u*v + X'(i-1)): compose [[0, v], [1, u*v]].
            Rational nA = v * C, nB = v * D, nC = A + u * v * C, nD = B + u * v * D;
            A = nA;
            B = nB;
            C = nC;
            D = nD;
            Rational den = C * x0 + D;
            if (den == 0) throw SltFailure(e, "pole in fractional-linear chain");
            out[{a + i, diag - a - i}] = (A * x0 + B) / den;
        }
    }
    return out;
}

bool is_pre_generic(const ZState& state, const LadderIndex& rs, const Rational& d) {
    if (d == 0) return false;
    ZState scratch = state;
    scratch.z[rs] = d;
    try {
        complete_diagonal_direct(scratch, rs.i + rs.j);
    } catch (const SltFailure&) {
        return false;
    }
    return true;
}

namespace {

// Places the inner solution, the column seeds and the row links for a given
// d_{m,m} prefix; diagonals are then completed one by one.
ZState initial_state(int n, int m, const Seed& seed, bool require_all = true) {
    DiagramShape shape(n, m);
    ZState s;
    s.n = n;
    s.m = m;
    s.k = shape.k;
    const Rational& dmm = seed.at({m, m});
    if (dmm == 0) throw SltFailure({m, m}, "seed value vanishes");
    if (m == s.k && n % 2 == 0 && dmm * dmm != 1)
        throw SltFailure({m, m}, "for n = 2m the corner seed must be +1 or -1");
    for (const auto& [a, v] : symmetric_inner_solution(m, dmm)) s.z[a] = v;
    for (int l = 1; l <= m; ++l) {
        LadderIndex col{l, m + 1};
        if (!in_gamma(n, col)) continue;
        if (require_all || seed.d.count(col)) {
            const Rational& dl = seed.at(col);
            if (dl == 0) throw SltFailure(col, "seed value vanishes");
            s.z[col] = dl;
            LadderIndex row{m + 1, l};
            if (in_gamma(n, row)) {
                Rational v = dmm * dmm / dl;
                if ((m - l) % 2 != 0) v = -v;
                s.z[row] = v;
            }
        }
    }
    return s;
}

void run_product_stage(ZState& s) {
    const int n = s.n, m = s.m, k = s.k;
    int hor_start = k, ver_start = k;
    if (m == k) {
        s.prod_hor[m] = 1;
        s.prod_ver[m] = 1;
        hor_start = ver_start = m + 1;
    } else if (n % 2 == 0) {
        s.prod_ver[k] = 1;
        Rational ph = k_form(s, {k, k});
        if (ph == 0) throw SltFailure({k, k}, "c-product vanishes");
        s.prod_hor[k] = ph;
        hor_start = ver_start = k + 1;
    }
    for (int j = ver_start; j <= n - 1; ++j) {
        Rational v = k_form(s, {n - j, j});
        if (v == 0) throw SltFailure({n - j, j}, "c-product vanishes");
        s.prod_ver[j] = v;
    }
    for (int i = hor_start; i <= n - 1; ++i) {
        Rational v = k_form(s, {i, n - i});
        if (v == 0) throw SltFailure({i, n - i}, "c-product vanishes");
        s.prod_hor[i] = v;
    }
}

void run_propagation(ZState& s) {
    for (int diag = s.m + 3; diag <= s.n; ++diag) {
        if (diag >= 2 * s.m + 2) {
            // Pivot diagonals: the middle entry must have been seeded already.
            s.z_at({pivot_row(diag), diag - pivot_row(diag)});
        }
        complete_diagonal_direct(s, diag);
    }
    run_product_stage(s);
}

std::vector<Rational> candidate_values() {
    std::vector<Rational> out;
    out.emplace_back(1);
    out.emplace_back(-1);
    Int q = 10;
    for (int e = 1; e <= 8; ++e, q *= 10) {
        out.push_back(Rational(q - 1, q));
        out.push_back(Rational(1 - q, q));
    }
    for (long v : {2L, -2L, 3L, -3L}) out.emplace_back(v);
    out.push_back(Rational(1, 2));
    out.push_back(Rational(-1, 2));
    return out;
}

} // namespace

Seed family_seed(int n, int m, const Rational& a) {
    if (n != 2 * m) throw std::invalid_argument("family_seed requires n = 2m");
    auto idx = seed_index_set(n, m);
    Seed seed;
    seed.n = n;
    seed.m = m;
    seed.indices = idx.seed;
    seed.d[{m, m}] = 1;
    Rational rho(1);
    for (int sdx = 1; sdx <= m; ++sdx) {
        if (sdx >= 2) rho *= Rational(2 * (sdx - 1));
        seed.d[{sdx, m + 1}] = (sdx == m) ? Rational(1) : a / rho; // (m, m+1) is frozen to 1
    }
    return seed;
}

GenericityCheck check_seed_generic(int n, int m, const Seed& seed) {
    GenericityCheck out;
    try {
        (void)solve_slt(n, m, seed);
        out.generic = true;
    } catch (const SltFailure& f) {
        out.generic = false;
        out.failing_equation = f.at();
        out.reason = f.what();
    }
    return out;
}

Seed find_generic_seed(int n, int m) {
    DiagramShape shape(n, m);
    const int k = shape.k;
    auto idx = seed_index_set(n, m);

    if (m == k && n % 2 == 0) {
        // One-parameter closed-form family; scan the scale.
        std::vector<Rational> scan;
        for (long a = 1; a <= 100; ++a) scan.emplace_back(a);
        Int q = 10;
        for (int e = 1; e <= 8; ++e, q *= 10) scan.push_back(Rational(q + 1, q));
        for (const auto& a : scan) {
            Seed seed = family_seed(n, m, a);
            if (check_seed_generic(n, m, seed).generic) return seed;
        }
        throw std::runtime_error("find_generic_seed: scan budget exhausted for the n = 2m family parameter");
    }

    const auto candidates = candidate_values();
    Seed seed;
    seed.n = n;
    seed.m = m;
    seed.indices = idx.seed;

    std::vector<size_t> choice(idx.seed.size(), 0);
    long attempts = 0;
    const long budget = 200000;
    size_t slot = 0;
    while (true) {
        if (++attempts > budget)
            throw std::runtime_error("find_generic_seed: perturbation scan budget exhausted at n=" +
                                     std::to_string(n) + " m=" + std::to_string(m));
        if (choice[slot] >= candidates.size()) {
            // Exhausted this slot: backtrack.
            if (slot == 0)
                throw std::runtime_error("find_generic_seed: no generic seed found within the scan");
            choice[slot] = 0;
            seed.d.erase(idx.seed[slot]);
            --slot;
            ++choice[slot];
            continue;
        }
        const LadderIndex at = idx.seed[slot];
        seed.d[at] = candidates[choice[slot]];

        // Local test: rebuild the prefix and complete the diagonals this slot governs.
        bool ok = true;
        try {
            Seed prefix;
            prefix.n = n;
            prefix.m = m;
            for (size_t t = 0; t <= slot; ++t) prefix.d[idx.seed[t]] = seed.d.at(idx.seed[t]);
            ZState s = initial_state(n, m, prefix, /*require_all=*/false);
            for (const auto& [a, v] : prefix.d)
                if (a.i > m && in_gamma(n, a)) s.z[a] = v; // chain pivots
            // The corner slot places the inner solution only; every later slot
            // re-runs the propagation through its own diagonal.
            if (slot > 0) {
                int last_diag = at.i + at.j;
                for (int diag = m + 3; diag <= std::min(last_diag, n); ++diag) {
                    if (diag >= 2 * m + 2) s.z_at({pivot_row(diag), diag - pivot_row(diag)});
                    complete_diagonal_direct(s, diag);
                }
            }
            if (slot + 1 == idx.seed.size()) run_product_stage(s);
        } catch (const SltFailure&) {
            ok = false;
        }
        if (!ok) {
            ++choice[slot];
            continue;
        }
        if (slot + 1 == idx.seed.size()) return seed;
        ++slot;
    }
}

SltSolution solve_slt(int n, int m, const Seed& seed) {
    DiagramShape shape(n, m);
    const int k = shape.k;
    auto idx = seed_index_set(n, m);
    for (const auto& a : idx.seed) {
        if (!seed.d.count(a)) throw std::invalid_argument("seed is missing an entry at " + gcfiber::to_string(a));
        if (seed.d.at(a) == 0) throw std::invalid_argument("seed entry at " + gcfiber::to_string(a) + " is zero");
    }
    if (m == k && n % 2 == 0 && seed.at({m, m + 1}) != 1)
        throw std::invalid_argument("for n = 2m the (m,m+1) seed slot lies on the frozen diagonal and must be 1");

    ZState s = initial_state(n, m, seed);
    // Plant the pivot seeds of the diagonals past the box.
    for (const auto& a : idx.seed)
        if (a.i > m && in_gamma(n, a)) s.z[a] = seed.at(a);
    run_propagation(s);

    SltSolution sol;
    sol.n = n;
    sol.m = m;
    sol.seed = seed;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) sol.inner_y[{i, j}] = s.z.at({i, j});
    for (int i = k; i <= n - 1; ++i) {
        sol.c_hor[i] = prod_hor_at(s, i) / prod_hor_at(s, i - 1);
        sol.c_ver[i] = prod_ver_at(s, i) / prod_ver_at(s, i - 1);
    }
    for (const auto& a : gamma(n)) {
        if (in_box_not_corner(m, a)) continue;
        Rational v = s.z.at(a);
        if (a.i >= k + 1) v *= prod_hor_at(s, a.i - 1);
        else if (a.j >= k + 1) v /= prod_ver_at(s, a.j - 1);
        sol.y[a] = v;
    }

    SltReport report = verify_slt(sol, build_slt(n, m));
    if (!report.pass()) {
        std::ostringstream msg;
        msg << "internal error: propagation produced an invalid SLT solution;";
        for (const auto& r : report.nonzero_residuals) msg << " " << r.equation << " -> " << to_string(r.value);
        throw std::logic_error(msg.str());
    }
    return sol;
}

SltReport verify_slt(const SltSolution& sol, const SltSystem& sys) {
    SltReport report;
    const int k = sys.k;

    auto component = [&](const LadderIndex& a) -> Rational {
        if (in_box(sol.m, a)) {
            auto it = sol.inner_y.find(a);
            if (it != sol.inner_y.end()) return it->second;
        }
        return sol.y.at(a);
    };

    for (const auto& [a, v] : sol.y)
        if (v == 0) report.zero_components.push_back("y" + gcfiber::to_string(a));
    for (const auto& [a, v] : sol.inner_y)
        if (v == 0) report.zero_components.push_back("inner y" + gcfiber::to_string(a));
    for (const auto& [i, v] : sol.c_hor)
        if (v == 0) report.zero_components.push_back("c_hor_" + std::to_string(i));
    for (const auto& [j, v] : sol.c_ver)
        if (v == 0) report.zero_components.push_back("c_ver_" + std::to_string(j));
    if (!report.all_nonzero()) return report;

    for (const auto& eq : sys.equations) {
        Rational acc(0);
        for (const auto& t : eq.terms) {
            Rational v(t.sign);
            if (t.c && t.c->index >= k)
                v *= t.c->horizontal ? sol.c_hor.at(t.c->index) : sol.c_ver.at(t.c->index);
            if (t.num) {
                Rational nv = (eq.kind == SltEquation::Kind::Inside) ? sol.inner_y.at(*t.num) : component(*t.num);
                v *= nv;
            }
            if (t.den) {
                Rational dv = (eq.kind == SltEquation::Kind::Inside) ? sol.inner_y.at(*t.den) : component(*t.den);
                v /= dv;
            }
            acc += v;
        }
        if (acc != 0) report.nonzero_residuals.push_back({eq.label(), acc});
    }
    return report;
}

} // namespace gcfiber
