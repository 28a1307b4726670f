#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace gcfiber {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num, den);
}

/// Renders q as "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q" (optional leading '-'). Throws std::invalid_argument on bad input.
Rational parse_rational(const std::string& text);

/// If q is the square of a rational, returns the nonnegative square root.
std::optional<Rational> rational_sqrt(const Rational& q);

} // namespace gcfiber
