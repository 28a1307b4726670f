#pragma once

#include "gcfiber/diagram.hpp"
#include "gcfiber/potential.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcfiber {

/// Seed data: prescribed nonzero rationals at the indices of I_seed.
struct Seed {
    int n = 0;
    int m = 0;
    std::vector<LadderIndex> indices;
    std::map<LadderIndex, Rational> d;

    const Rational& at(const LadderIndex& a) const;
};

/// One term of a split-leading-term equation after the drop rules:
/// sign * c * y_num / y_den with absent num/den standing for 1.
struct SltTerm {
    int sign = 1;
    std::optional<CoeffRef> c;
    std::optional<LadderIndex> num;
    std::optional<LadderIndex> den;
};

struct SltEquation {
    enum class Kind { Inside, Outside, Link };
    Kind kind = Kind::Inside;
    LadderIndex at;  // equation index (for Link: l stored in at = (l, 0))
    int link_l = 0;
    std::vector<SltTerm> terms;

    std::string label() const;
};

struct SltSystem {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<SltEquation> equations;

    const SltEquation& equation_at(const LadderIndex& a) const;
    const SltEquation& link(int l) const;
};

/// Exact rational solution of the SLT system.
struct SltSolution {
    int n = 0;
    int m = 0;
    std::map<LadderIndex, Rational> y;       // Gamma(n) \ B(m) plus (m,m)
    std::map<LadderIndex, Rational> inner_y; // B(m), the symmetric solution used
    std::map<int, Rational> c_hor;           // i >= k
    std::map<int, Rational> c_ver;           // j >= k
    Seed seed;
};

struct SltResidual {
    std::string equation;
    Rational value;
};

struct SltReport {
    std::vector<SltResidual> nonzero_residuals;
    std::vector<std::string> zero_components;

    bool all_zero() const { return nonzero_residuals.empty(); }
    bool all_nonzero() const { return zero_components.empty(); }
    bool pass() const { return all_zero() && all_nonzero(); }
};

/// Thrown when a propagation step degenerates; `at` names the failing equation.
class SltFailure : public std::runtime_error {
public:
    SltFailure(const LadderIndex& at, const std::string& reason)
        : std::runtime_error("equation at " + gcfiber::to_string(at) + ": " + reason), at_(at) {}
    const LadderIndex& at() const { return at_; }

private:
    LadderIndex at_;
};

/// The SLT system of Gamma(n) associated with B(m): per-index four-term
/// equations with the inside/outside drop profiles plus the diagonal links.
SltSystem build_slt(int n, int m);

/// Symmetric solution on the lower triangle i+j <= m+1:
/// 1 on the diagonal, prod_{r=0}^{j-i-1}(2i+2r) above, reciprocals below.
std::map<LadderIndex, Rational> symmetric_inner_base(int m);

/// Full symmetric solution on B(m) scaled so that y_{m,m} = c.
std::map<LadderIndex, Rational> symmetric_inner_solution(int m, const Rational& c);

/// z-coordinates: rows past k are divided by horizontal c-products, columns
/// past k are multiplied by vertical c-products. c maps hold individual
/// coefficients keyed as in SltSolution.
std::map<LadderIndex, Rational> coordinate_change_to_z(const std::map<LadderIndex, Rational>& y,
                                                       const std::map<int, Rational>& c_hor,
                                                       const std::map<int, Rational>& c_ver, int n, int m);
std::map<LadderIndex, Rational> coordinate_change_to_y(const std::map<LadderIndex, Rational>& z,
                                                       const std::map<int, Rational>& c_hor,
                                                       const std::map<int, Rational>& c_ver, int n, int m);

/// Working state for the z-coordinate propagation.
struct ZState {
    int n = 0;
    int m = 0;
    int k = 0;
    std::map<LadderIndex, Rational> z;
    std::map<int, Rational> prod_hor; // partial products of c^hor, anchored at k-1 -> 1
    std::map<int, Rational> prod_ver;

    const Rational& z_at(const LadderIndex& a) const;
};

/// The isolated expression of the equation at `at` in z-coordinates
/// (bulk-free below the last diagonal; the product cases on i+j = n).
/// Throws SltFailure on a pole.
Rational k_form(const ZState& state, const LadderIndex& at);

enum class PropagationMode { Direct, Recurrence };

/// Completes diagonal `diag` from its pivot middle-out. Direct mode iterates
/// k_form; Recurrence mode uses the fractional-linear A/B representation of
/// each wing value as a function of the pivot. Returns the diagonal values.
std::map<LadderIndex, Rational> propagate_diagonal(const ZState& state, int diag, PropagationMode mode);

/// Numerator/denominator recurrence A(i) = [i] A(i-1) + [i,i-1] A(i-2) with
/// A(0) = 1, B(0) = 0, A(-1) = 0, B(-1) = 1.
struct FractionalLinear {
    std::vector<Rational> a; // A(-1), A(0), A(1), ...
    std::vector<Rational> b;
};
FractionalLinear ab_recurrence(const std::vector<Rational>& bracket_single,
                               const std::vector<Rational>& bracket_pair);

/// True iff planting d at pivot (r,s) lets diagonal r+s complete with all
/// values defined and nonzero (the k-forms on diagonal r+s-1 are nonzero).
bool is_pre_generic(const ZState& state, const LadderIndex& rs, const Rational& d);

/// Deterministic scan for a generic seed; throws std::runtime_error with
/// diagnostics when the perturbation budget is exhausted.
Seed find_generic_seed(int n, int m);

/// Solves the SLT system from a seed. Throws SltFailure (naming the failing
/// equation) when the seed is not generic.
SltSolution solve_slt(int n, int m, const Seed& seed);

/// Exact re-evaluation of every equation of `sys` at `sol`.
SltReport verify_slt(const SltSolution& sol, const SltSystem& sys);

/// Convenience: solve and report the failing equation instead of throwing.
struct GenericityCheck {
    bool generic = false;
    std::optional<LadderIndex> failing_equation;
    std::string reason;
};
GenericityCheck check_seed_generic(int n, int m, const Seed& seed);

/// The closed-form one-parameter seed family used when n = 2m.
Seed family_seed(int n, int m, const Rational& a);

} // namespace gcfiber
