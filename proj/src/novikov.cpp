#include "gcfiber/novikov.hpp"

#include <sstream>
#include <stdexcept>

namespace gcfiber {

namespace {

// Valuation floor used for precision propagation: least exponent, the cap for
// a zero-so-far series, and nullopt (infinity) for the exact zero.
std::optional<Rational> vfloor(const NovikovSeries& x) {
    if (!x.is_zero()) return x.terms().begin()->first;
    return x.cap();
}

std::optional<Rational> min_opt(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace

NovikovSeries NovikovSeries::zero(std::optional<Rational> cap) {
    NovikovSeries s;
    s.cap_ = std::move(cap);
    return s;
}

NovikovSeries NovikovSeries::constant(const Rational& c, std::optional<Rational> cap) {
    NovikovSeries s;
    s.cap_ = std::move(cap);
    if (c != 0) s.terms_[Rational(0)] = c;
    s.drop_capped();
    return s;
}

NovikovSeries NovikovSeries::monomial(const Rational& coeff, const Rational& exp,
                                      std::optional<Rational> cap) {
    NovikovSeries s;
    s.cap_ = std::move(cap);
    if (coeff != 0) s.terms_[exp] = coeff;
    s.drop_capped();
    return s;
}

bool NovikovSeries::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == 0;
}

ValuationClass NovikovSeries::valuation() const {
    if (terms_.empty()) return ValuationClass{std::nullopt};
    return ValuationClass{terms_.begin()->first};
}

bool NovikovSeries::is_unit() const {
    return !terms_.empty() && terms_.begin()->first == 0;
}

const Rational& NovikovSeries::leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("zero element has no leading coefficient");
    return terms_.begin()->second;
}

const Rational& NovikovSeries::leading_exponent() const {
    if (terms_.empty()) throw std::domain_error("zero element has no leading exponent");
    return terms_.begin()->first;
}

Rational NovikovSeries::coefficient(const Rational& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool NovikovSeries::in_lambda0() const {
    return terms_.empty() || terms_.begin()->first >= 0;
}

void NovikovSeries::drop_capped() {
    if (!cap_) return;
    terms_.erase(terms_.lower_bound(*cap_), terms_.end());
}

NovikovSeries NovikovSeries::operator-() const {
    NovikovSeries r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

NovikovSeries NovikovSeries::operator+(const NovikovSeries& rhs) const {
    NovikovSeries r;
    r.cap_ = min_opt(cap_, rhs.cap_);
    r.terms_ = terms_;
    for (const auto& [e, c] : rhs.terms_) {
        auto [it, inserted] = r.terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    r.drop_capped();
    return r;
}

NovikovSeries NovikovSeries::operator-(const NovikovSeries& rhs) const {
    return *this + (-rhs);
}

NovikovSeries NovikovSeries::operator*(const NovikovSeries& rhs) const {
    NovikovSeries r;
    std::optional<Rational> c1, c2;
    if (cap_ && vfloor(rhs)) c1 = *cap_ + *vfloor(rhs);
    if (rhs.cap_ && vfloor(*this)) c2 = *rhs.cap_ + *vfloor(*this);
    r.cap_ = min_opt(c1, c2);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            Rational e = ea + eb;
            if (r.cap_ && e >= *r.cap_) continue;
            auto [it, inserted] = r.terms_.emplace(e, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

NovikovSeries NovikovSeries::shifted(const Rational& e) const {
    NovikovSeries r;
    if (cap_) r.cap_ = *cap_ + e;
    for (const auto& [exp, c] : terms_) r.terms_.emplace(exp + e, c);
    return r;
}

bool NovikovSeries::operator==(const NovikovSeries& rhs) const {
    return terms_ == rhs.terms_ && cap_ == rhs.cap_;
}

ValuationClass valuation(const NovikovSeries& x) { return x.valuation(); }
bool is_unit(const NovikovSeries& x) { return x.is_unit(); }

NovikovSeries invert_unit(const NovikovSeries& x) {
    if (!x.is_unit()) throw std::domain_error("not a unit");
    const Rational lead = x.leading_coefficient();
    if (x.is_constant()) return NovikovSeries::constant(Rational(1) / lead, x.cap());
    if (!x.cap()) throw std::domain_error("cannot invert an exact non-constant series; truncate first");

    const Rational cap = *x.cap();
    NovikovSeries w = NovikovSeries::constant(Rational(1) / lead, cap);
    const NovikovSeries two = NovikovSeries::constant(2, cap);
    for (int iter = 0; iter < 1000; ++iter) {
        NovikovSeries resid = x * w - NovikovSeries::constant(1, cap);
        if (resid.is_zero()) return w;
        w = w * (two - x * w);
    }
    throw std::logic_error("invert_unit failed to converge");
}

NovikovSeries sqrt_unit(const NovikovSeries& x, int leading_sign) {
    if (leading_sign != 1 && leading_sign != -1)
        throw std::invalid_argument("leading_sign must be +1 or -1");
    if (!x.is_unit()) throw std::domain_error("not a unit");
    auto root = rational_sqrt(x.leading_coefficient());
    if (!root) throw std::domain_error("leading coefficient is not the square of a rational");
    Rational r0 = leading_sign * *root;
    if (x.is_constant()) return NovikovSeries::constant(r0, x.cap());
    if (!x.cap()) throw std::domain_error("cannot take the square root of an exact non-constant series; truncate first");

    const Rational cap = *x.cap();
    NovikovSeries r = NovikovSeries::constant(r0, cap);
    const NovikovSeries half = NovikovSeries::constant(Rational(1, 2), cap);
    for (int iter = 0; iter < 1000; ++iter) {
        NovikovSeries resid = r * r - x;
        if (resid.is_zero()) return r;
        r = (r + x * invert_unit(r)) * half;
    }
    throw std::logic_error("sqrt_unit failed to converge");
}

bool equals_mod(const NovikovSeries& x, const NovikovSeries& y, const Rational& order) {
    NovikovSeries d = x - y;
    for (const auto& [e, c] : d.terms()) {
        if (e >= order) break;
        if (c != 0) return false;
    }
    return true;
}

bool is_zero_mod(const NovikovSeries& x, const Rational& order) {
    return equals_mod(x, NovikovSeries::zero(), order);
}

bool known_to(const NovikovSeries& x, const Rational& order) {
    return !x.cap() || *x.cap() >= order;
}

NovikovSeries truncate(const NovikovSeries& x, const Rational& order) {
    NovikovSeries r(x);
    r.cap_ = x.cap() ? std::min(*x.cap(), order) : order;
    r.drop_capped();
    return r;
}

NovikovSeries div_unit(const NovikovSeries& x, const NovikovSeries& y) {
    return x * invert_unit(y);
}

std::string NovikovSeries::to_text() const {
    std::ostringstream out;
    if (terms_.empty()) {
        out << "0";
    } else {
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) out << " + ";
            first = false;
            out << to_string(c) << "*T^(" << to_string(e) << ")";
        }
    }
    if (cap_) out << " (mod T^(" << to_string(*cap_) << "))";
    return out.str();
}

NovikovSeries parse_series_text(const std::string& text) {
    std::string body = text;
    std::optional<Rational> cap;
    auto mod_pos = body.find(" (mod T^(");
    if (mod_pos != std::string::npos) {
        auto close = body.rfind("))");
        if (close == std::string::npos) throw std::invalid_argument("malformed series text");
        cap = parse_rational(body.substr(mod_pos + 9, close - (mod_pos + 9)));
        body = body.substr(0, mod_pos);
    }
    NovikovSeries r = NovikovSeries::zero(cap);
    if (body == "0") return r;
    size_t pos = 0;
    while (pos < body.size()) {
        auto plus = body.find(" + ", pos);
        std::string term = body.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        auto star = term.find("*T^(");
        if (star == std::string::npos || term.back() != ')')
            throw std::invalid_argument("malformed series term: " + term);
        Rational coeff = parse_rational(term.substr(0, star));
        Rational exp = parse_rational(term.substr(star + 4, term.size() - star - 5));
        r += NovikovSeries::monomial(coeff, exp, cap);
        if (plus == std::string::npos) break;
        pos = plus + 3;
    }
    return r;
}

} // namespace gcfiber
