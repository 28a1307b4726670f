#pragma once

#include "gcfiber/novikov.hpp"

#include <random>
#include <vector>

namespace gcfiber::testing {

inline Rational rat(const std::string& s) { return parse_rational(s); }

inline NovikovSeries series(std::initializer_list<std::pair<std::string, std::string>> terms,
                            std::optional<std::string> cap = std::nullopt) {
    std::optional<Rational> c;
    if (cap) c = rat(*cap);
    NovikovSeries out = NovikovSeries::zero(c);
    for (const auto& [e, v] : terms) out += NovikovSeries::monomial(rat(v), rat(e), c);
    return out;
}

class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    Rational rational(long lo = -6, long hi = 6, long max_den = 4) {
        std::uniform_int_distribution<long> num(lo, hi);
        std::uniform_int_distribution<long> den(1, max_den);
        return Rational(num(gen_), den(gen_));
    }

    Rational nonzero_rational(long lo = -6, long hi = 6, long max_den = 4) {
        Rational q;
        do {
            q = rational(lo, hi, max_den);
        } while (q == 0);
        return q;
    }

    Rational exponent(const Rational& below, long max_den = 4) {
        // Random exponent in [0, below) with small denominator.
        std::uniform_int_distribution<long> den(1, max_den);
        long d = den(gen_);
        Rational scaled = below * Rational(d);
        long hi = (numerator(scaled) / denominator(scaled)).convert_to<long>();
        std::uniform_int_distribution<long> num(0, std::max(0L, hi - 1));
        return Rational(num(gen_), d);
    }

    NovikovSeries unit(const Rational& cap, int extra_terms = 3) {
        NovikovSeries s = NovikovSeries::constant(nonzero_rational(), cap);
        for (int i = 0; i < extra_terms; ++i) {
            Rational e = exponent(cap);
            if (e == 0) continue;
            s += NovikovSeries::monomial(rational(), e, cap);
        }
        return s;
    }

    NovikovSeries element(const Rational& cap, int terms = 4) {
        NovikovSeries s = NovikovSeries::zero(cap);
        for (int i = 0; i < terms; ++i) s += NovikovSeries::monomial(rational(), exponent(cap), cap);
        return s;
    }

    int integer(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(gen_);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace gcfiber::testing
