#pragma once

#include "gcfiber/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace gcfiber {

/// Valuation of a Novikov element: either the least exponent, or the
/// zero-element tag for the empty series.
struct ValuationClass {
    std::optional<Rational> value; // nullopt <=> zero element

    bool is_zero_element() const { return !value.has_value(); }
};

/// Truncated element of the Novikov field: a finite sum of c*T^e with exact
/// rational exponents and coefficients, known up to (strictly below) `cap`.
/// A series without a cap is exact. Exponents are kept strictly increasing;
/// zero coefficients are never stored.
class NovikovSeries {
public:
    NovikovSeries() = default;

    static NovikovSeries zero(std::optional<Rational> cap = std::nullopt);
    static NovikovSeries constant(const Rational& c, std::optional<Rational> cap = std::nullopt);
    static NovikovSeries one() { return constant(1); }
    static NovikovSeries monomial(const Rational& coeff, const Rational& exp,
                                  std::optional<Rational> cap = std::nullopt);

    const std::map<Rational, Rational>& terms() const { return terms_; }
    const std::optional<Rational>& cap() const { return cap_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;

    ValuationClass valuation() const;
    bool is_unit() const; // valuation exactly 0
    /// Coefficient of the least exponent; throws on the zero element.
    const Rational& leading_coefficient() const;
    const Rational& leading_exponent() const;
    /// Coefficient at a specific exponent (0 if absent).
    Rational coefficient(const Rational& exp) const;

    /// Every stored exponent is >= 0 (membership in Lambda_0 as far as known).
    bool in_lambda0() const;

    NovikovSeries operator-() const;
    NovikovSeries operator+(const NovikovSeries& rhs) const;
    NovikovSeries operator-(const NovikovSeries& rhs) const;
    NovikovSeries operator*(const NovikovSeries& rhs) const;

    NovikovSeries& operator+=(const NovikovSeries& rhs) { return *this = *this + rhs; }
    NovikovSeries& operator-=(const NovikovSeries& rhs) { return *this = *this - rhs; }
    NovikovSeries& operator*=(const NovikovSeries& rhs) { return *this = *this * rhs; }

    /// Multiplies by T^e (shifts all exponents and the cap by e).
    NovikovSeries shifted(const Rational& e) const;

    /// Structural equality (same terms, same cap).
    bool operator==(const NovikovSeries& rhs) const;
    bool operator!=(const NovikovSeries& rhs) const { return !(*this == rhs); }

    std::string to_text() const;

private:
    std::map<Rational, Rational> terms_;
    std::optional<Rational> cap_;

    void drop_capped();
    friend NovikovSeries invert_unit(const NovikovSeries&);
    friend NovikovSeries sqrt_unit(const NovikovSeries&, int);
    friend NovikovSeries truncate(const NovikovSeries&, const Rational&);
};

ValuationClass valuation(const NovikovSeries& x);
bool is_unit(const NovikovSeries& x);

/// Multiplicative inverse of a unit, exact modulo T^cap.
/// Throws std::domain_error("not a unit") when valuation(x) != 0, and
/// std::domain_error when x is exact (cap-less) but not a constant.
NovikovSeries invert_unit(const NovikovSeries& x);

/// Square root of a unit whose leading coefficient is the square of a
/// positive rational; `leading_sign` (+1/-1) selects the branch.
NovikovSeries sqrt_unit(const NovikovSeries& x, int leading_sign);

/// Compares all terms with exponent < order.
bool equals_mod(const NovikovSeries& x, const NovikovSeries& y, const Rational& order);
bool is_zero_mod(const NovikovSeries& x, const Rational& order);

/// True when the series is known at least up to `order` (cap >= order or exact).
bool known_to(const NovikovSeries& x, const Rational& order);

/// Drops terms with exponent >= order and lowers the cap to order.
NovikovSeries truncate(const NovikovSeries& x, const Rational& order);

/// x / y for unit y (x * invert_unit(y)).
NovikovSeries div_unit(const NovikovSeries& x, const NovikovSeries& y);

/// Parses the canonical text form produced by to_text().
NovikovSeries parse_series_text(const std::string& text);

} // namespace gcfiber
