#pragma once

#include "gcfiber/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gcfiber {

/// Double index (i, j) of the ladder diagram, 1-based.
struct LadderIndex {
    int i = 0;
    int j = 0;

    auto operator<=>(const LadderIndex&) const = default;
};

std::string to_string(const LadderIndex& a);

/// Gamma(n) = { (i,j) | 2 <= i+j <= n }, listed in <_hor order. Throws for n < 3.
std::vector<LadderIndex> gamma(int n);

inline bool in_gamma(int n, const LadderIndex& a) {
    return a.i >= 1 && a.j >= 1 && a.i + a.j >= 2 && a.i + a.j <= n;
}

inline bool in_box(int m, const LadderIndex& a) {
    return a.i >= 1 && a.j >= 1 && a.i <= m && a.j <= m;
}

/// (i,j) <_hor (i',j'): smaller anti-diagonal first, then smaller row.
bool order_hor_less(const LadderIndex& a, const LadderIndex& b);
/// (i,j) <_ver (i',j'): smaller anti-diagonal first, then smaller column.
bool order_ver_less(const LadderIndex& a, const LadderIndex& b);

/// Shape data for Gamma(n) with an optional box B(m).
struct DiagramShape {
    int n;
    std::optional<int> m;
    int k; // ceil(n/2)
    bool m_beyond_half = false; // m > floor(n/2)

    DiagramShape(int n, std::optional<int> m = std::nullopt);
};

/// A point of the GC polytope: coordinates on Gamma(n) plus the boundary
/// tuple lambda with the convention u_{i, n+1-i} = lambda_i.
struct GcPoint {
    int n = 0;
    std::map<LadderIndex, Rational> u;
    std::vector<Rational> lambda; // lambda[0] = lambda_1, ..., lambda[n-1]

    // Set for points on the segment I_m(t); used for symbolic exponents.
    std::optional<int> segment_m;
    std::optional<Rational> segment_t;

    /// Coordinate lookup extended to the frozen diagonal i+j = n+1.
    Rational u_at(const LadderIndex& a) const;
    /// All defining inequalities of Delta_lambda hold at this point.
    bool in_polytope() const;
};

/// Monotone lambda_i = n - 2i + 1.
std::vector<Rational> monotone_lambda(int n);

/// The point I_m(t): u_{i,j} = (j-i)(1-t) on the box, j-i outside.
/// Accepts 2 <= m <= floor(n/2); m = ceil(n/2) for even n (flagged) and for
/// n = 3 (the Fl(3) segment). Requires 0 <= t <= 1.
GcPoint segment_point(int n, int m, const Rational& t);

/// The reflexive center u_{i,j} = j - i.
GcPoint center_point(int n);

/// A facet of Delta_lambda: horizontal u_{i,j} = u_{i+1,j} or vertical
/// u_{i,j+1} = u_{i,j}, identified by (i,j) in Gamma(n).
struct Facet {
    bool horizontal = false;
    LadderIndex at;

    auto operator<=>(const Facet&) const = default;
};

/// Union of facets forming a degree-two Schubert cycle.
struct SchubertCycle {
    bool horizontal = false; // horizontal(i): P^hor_{i,i+1}; else P^ver_{j+1,j}
    int index = 0;           // i (resp. j), 1 <= index <= n-1
    std::vector<Facet> facets;
};

/// All 2(n-1) degree-two Schubert cycles of Fl(n).
std::vector<SchubertCycle> schubert_cycles(int n);

/// Intersection number of the basic disc class through `facet` with `cycle`:
/// 1 iff the kinds match and the facet belongs to the cycle's band.
int disc_intersection(const Facet& facet, const SchubertCycle& cycle);

/// Index set where seed data is planted, in the listed order, plus the same
/// set without (m,m).
struct SeedIndexSet {
    std::vector<LadderIndex> seed;    // I_seed
    std::vector<LadderIndex> initial; // I_initial = I_seed \ {(m,m)}
};

SeedIndexSet seed_index_set(int n, int m);

} // namespace gcfiber
