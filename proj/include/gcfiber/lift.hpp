#pragma once

#include "gcfiber/novikov.hpp"
#include "gcfiber/potential.hpp"
#include "gcfiber/slt.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gcfiber {

/// Thrown when a lifting isolation degenerates (valuation mismatch or a
/// non-unit where a unit is required).
class LiftFailure : public std::runtime_error {
public:
    LiftFailure(const std::string& stage, const std::string& reason)
        : std::runtime_error(stage + ": " + reason) {}
};

/// Inner lift data: Novikov values on B(m) and its adjacent border, plus the
/// stage multipliers a_j (defined for the staged columns j = 1..m-1).
struct InnerLift {
    int n = 0;
    int m = 0;
    Rational t;
    std::map<LadderIndex, NovikovSeries> y;
    std::map<int, NovikovSeries> a;
    // n = 2m only: c^ver_{m+1,m}, leading value 1, fixed by the corner equation.
    std::optional<NovikovSeries> c_ver_corner;
};

struct CheckEntry {
    std::string what;
    bool pass = false;
    std::string detail;
};

struct CertificateReport {
    std::vector<CheckEntry> entries;
    std::optional<Rational> min_n_check;

    bool all_pass() const;
    std::string summary() const;
};

/// Verifiable critical-point certificate.
struct Certificate {
    std::string version = "gcfiber-1";
    int n = 0;
    int m = 0;
    Rational t;
    Rational cap; // N
    BulkParameter bulk;
    Assignment point;
    std::map<LadderIndex, Rational> slt_leading; // expected leading coefficients
    std::map<int, Rational> c_hor_leading;
    std::map<int, Rational> c_ver_leading;
    Seed seed;                // provenance
    CertificateReport report; // check report recorded at production time
};

/// Inside-B(m) lift from the boundary data d (values at (m,m), (s,m+1)).
/// Solves every gradient equation on B(m) exactly over truncated series.
InnerLift lift_inside(int n, int m, const Rational& t, const Rational& cap,
                      const std::map<LadderIndex, Rational>& d);

/// Completes the lift outside B(m): wing propagation in z-coordinates,
/// c-products from the last diagonal, unit bulk coefficients and the full
/// critical point over Lambda_U.
std::pair<BulkParameter, Assignment> lift_outside(int n, int m, const Rational& t, const Rational& cap,
                                                  const SltSolution& slt, const InnerLift& inner);

/// Full pipeline: find_generic_seed -> solve_slt -> lift -> verify.
Certificate certify(int n, int m, const Rational& t, const Rational& cap);

/// Same, but from a caller-supplied seed.
Certificate certify_with_seed(int n, int m, const Rational& t, const Rational& cap, const Seed& seed);

/// The Fl(3) construction: tentative bulk exp(b^ver_{2,1}) = 1 + T^{2t},
/// y_{1,2} = y_{2,1} = 1, y_{1,1} = -sqrt(1 + T^{2t}), then the two remaining
/// bulk coefficients are computed so the gradients vanish.
Certificate certify_fl3(const Rational& t, const Rational& cap);

/// Exact recheck: unit valuations, leading-coefficient agreement and
/// normalized gradients vanishing mod T^{n_check} per index, with n_check
/// computed from each gradient's symbolic exponent offsets.
CertificateReport verify_certificate(const Certificate& cert);

} // namespace gcfiber
