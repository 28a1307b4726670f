#pragma once

#include "gcfiber/diagram.hpp"
#include "gcfiber/novikov.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gcfiber {

/// Reference to a bulk coefficient: c^hor_{i,i+1} (horizontal) or
/// c^ver_{j+1,j} (vertical).
struct CoeffRef {
    bool horizontal = false;
    int index = 0;

    auto operator<=>(const CoeffRef&) const = default;
};

std::string to_string(const CoeffRef& c);

/// One Laurent term: scalar * c * y_num / y_den * T^t_exp. Absent num/den
/// stand for the constant 1 (frozen diagonal variables y_{s,n+1-s} = 1);
/// terms whose references would hit the zero row or column are never built.
struct PotentialTerm {
    Rational scalar = Rational(1);
    std::optional<LadderIndex> num;
    std::optional<LadderIndex> den;
    Rational t_exp;
    Rational exp_const; // symbolic exponent a + b*t (display metadata)
    Rational exp_t;
    Facet facet;
    std::optional<CoeffRef> bulk;
};

struct PotentialExpr {
    int n = 0;
    std::vector<PotentialTerm> terms;
    bool zero_exponent_flag = false; // point on the boundary in a live direction
};

/// Bulk parameter c = exp(b), stored multiplicatively. Entries absent from
/// the maps are the constant 1 (undeformed).
struct BulkParameter {
    std::map<int, NovikovSeries> hor; // i -> c^hor_{i,i+1}
    std::map<int, NovikovSeries> ver; // j -> c^ver_{j+1,j}

    NovikovSeries at(const CoeffRef& c) const;
    bool all_units() const;
};

/// Point of the algebraic torus: y-values over the Novikov field.
struct Assignment {
    std::map<LadderIndex, NovikovSeries> y;

    const NovikovSeries& at(const LadderIndex& a) const;
    bool all_units() const;
};

/// W(y) = sum over (i,j) of (y_{i,j+1}/y_{i,j}) T^{u_{i,j+1}-u_{i,j}}
///      + (y_{i,j}/y_{i+1,j}) T^{u_{i,j}-u_{i+1,j}}, one term per facet.
PotentialExpr build_potential(const GcPoint& point);

/// Attaches c-factors facet-by-facet: horizontal-facet terms at row band i
/// gain c^hor_{i,i+1}, vertical-facet terms at column band j gain
/// c^ver_{j+1,j}. Only entries present in `bulk` are attached (absent = 1).
/// Throws std::domain_error on a non-unit bulk entry.
PotentialExpr apply_bulk(const PotentialExpr& w, const BulkParameter& bulk);

/// y_{at} * dW/dy_{at}, derived term-by-term from the stored monomials.
PotentialExpr log_gradient(const PotentialExpr& w, const LadderIndex& at);

/// Exact substitution, truncated per the operands' caps.
NovikovSeries evaluate(const PotentialExpr& expr, const Assignment& y, const BulkParameter& bulk);

/// Least t-exponent over the expression's terms (the symbolic valuation nu);
/// nullopt for the empty expression.
std::optional<Rational> min_t_exp(const PotentialExpr& expr);
std::optional<Rational> max_t_exp(const PotentialExpr& expr);

/// Evaluated log-gradient at `at`, divided by T^nu with nu the least
/// symbolic t-exponent of that gradient (exact: exponents are shifted before
/// evaluation, so no negative-valuation intermediate arises).
NovikovSeries normalized_gradient(const PotentialExpr& wb, const LadderIndex& at,
                                  const Assignment& y, const BulkParameter& bulk);

/// Canonical text: groups sorted by t-exponent, terms within a group by
/// <_hor of the generating facet with vertical before horizontal.
/// `symbolic` renders exponents as a+b*t where available.
std::string canonical_text(const PotentialExpr& expr, bool symbolic);

} // namespace gcfiber
