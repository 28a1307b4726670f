#include "gcfiber/json_io.hpp"

#include <sstream>

namespace gcfiber {

namespace {

std::string index_key(const LadderIndex& a) {
    std::ostringstream out;
    out << a.i << "," << a.j;
    return out.str();
}

LadderIndex index_from_key(const std::string& key) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed index key: " + key);
    return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
}

ordered_json int_pair(const Rational& q) {
    return ordered_json::array({numerator(q).str(), denominator(q).str()});
}

Rational from_int_pair(const ordered_json& j) {
    return Rational(Int(j.at(0).get<std::string>()), Int(j.at(1).get<std::string>()));
}

// Keyed maps are emitted in <_hor order for byte-stable output.
template <typename T, typename Fn>
ordered_json index_map_to_json(const std::map<LadderIndex, T>& m, Fn&& value_to_json) {
    std::vector<LadderIndex> keys;
    keys.reserve(m.size());
    for (const auto& [a, v] : m) keys.push_back(a);
    std::sort(keys.begin(), keys.end(), order_hor_less);
    ordered_json out = ordered_json::object();
    for (const auto& a : keys) out[index_key(a)] = value_to_json(m.at(a));
    return out;
}

template <typename T, typename Fn>
ordered_json int_map_to_json(const std::map<int, T>& m, Fn&& value_to_json) {
    ordered_json out = ordered_json::object();
    for (const auto& [i, v] : m) out[std::to_string(i)] = value_to_json(v);
    return out;
}

} // namespace

ordered_json series_to_json(const NovikovSeries& s) {
    ordered_json terms = ordered_json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back(ordered_json::array(
            {numerator(e).str(), denominator(e).str(), numerator(c).str(), denominator(c).str()}));
    ordered_json out = ordered_json::object();
    out["terms"] = std::move(terms);
    out["cap"] = s.cap() ? int_pair(*s.cap()) : ordered_json(nullptr);
    return out;
}

NovikovSeries series_from_json(const ordered_json& j) {
    std::optional<Rational> cap;
    if (!j.at("cap").is_null()) cap = from_int_pair(j.at("cap"));
    NovikovSeries out = NovikovSeries::zero(cap);
    for (const auto& term : j.at("terms")) {
        Rational exp(Int(term.at(0).get<std::string>()), Int(term.at(1).get<std::string>()));
        Rational coeff(Int(term.at(2).get<std::string>()), Int(term.at(3).get<std::string>()));
        out += NovikovSeries::monomial(coeff, exp, cap);
    }
    return out;
}

ordered_json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const ordered_json& j) { return parse_rational(j.get<std::string>()); }

ordered_json seed_to_json(const Seed& seed) {
    ordered_json out = ordered_json::object();
    out["n"] = seed.n;
    out["m"] = seed.m;
    ordered_json indices = ordered_json::array();
    for (const auto& a : seed.indices) indices.push_back(ordered_json::array({a.i, a.j}));
    out["indices"] = std::move(indices);
    out["d"] = index_map_to_json(seed.d, [](const Rational& q) { return rational_to_json(q); });
    return out;
}

Seed seed_from_json(const ordered_json& j) {
    Seed seed;
    seed.n = j.at("n").get<int>();
    seed.m = j.at("m").get<int>();
    for (const auto& idx : j.at("indices"))
        seed.indices.push_back({idx.at(0).get<int>(), idx.at(1).get<int>()});
    for (const auto& [key, value] : j.at("d").items())
        seed.d[index_from_key(key)] = rational_from_json(value);
    return seed;
}

ordered_json slt_solution_to_json(const SltSolution& sol) {
    ordered_json out = ordered_json::object();
    out["n"] = sol.n;
    out["m"] = sol.m;
    out["y"] = index_map_to_json(sol.y, [](const Rational& q) { return rational_to_json(q); });
    out["inner_y"] = index_map_to_json(sol.inner_y, [](const Rational& q) { return rational_to_json(q); });
    out["c_hor"] = int_map_to_json(sol.c_hor, [](const Rational& q) { return rational_to_json(q); });
    out["c_ver"] = int_map_to_json(sol.c_ver, [](const Rational& q) { return rational_to_json(q); });
    out["seed"] = seed_to_json(sol.seed);
    return out;
}

SltSolution slt_solution_from_json(const ordered_json& j) {
    SltSolution sol;
    sol.n = j.at("n").get<int>();
    sol.m = j.at("m").get<int>();
    for (const auto& [key, value] : j.at("y").items()) sol.y[index_from_key(key)] = rational_from_json(value);
    for (const auto& [key, value] : j.at("inner_y").items())
        sol.inner_y[index_from_key(key)] = rational_from_json(value);
    for (const auto& [key, value] : j.at("c_hor").items()) sol.c_hor[std::stoi(key)] = rational_from_json(value);
    for (const auto& [key, value] : j.at("c_ver").items()) sol.c_ver[std::stoi(key)] = rational_from_json(value);
    sol.seed = seed_from_json(j.at("seed"));
    return sol;
}

ordered_json potential_to_json(const PotentialExpr& expr) {
    ordered_json terms = ordered_json::array();
    for (const auto& t : expr.terms) {
        ordered_json jt = ordered_json::object();
        jt["scalar"] = rational_to_json(t.scalar);
        jt["num"] = t.num ? ordered_json::array({t.num->i, t.num->j}) : ordered_json(nullptr);
        jt["den"] = t.den ? ordered_json::array({t.den->i, t.den->j}) : ordered_json(nullptr);
        jt["t_exp"] = rational_to_json(t.t_exp);
        jt["exp_const"] = rational_to_json(t.exp_const);
        jt["exp_t"] = rational_to_json(t.exp_t);
        jt["facet"] = ordered_json::object(
            {{"kind", t.facet.horizontal ? "hor" : "ver"}, {"at", ordered_json::array({t.facet.at.i, t.facet.at.j})}});
        if (t.bulk) jt["bulk"] = to_string(*t.bulk);
        terms.push_back(std::move(jt));
    }
    ordered_json out = ordered_json::object();
    out["n"] = expr.n;
    out["terms"] = std::move(terms);
    out["zero_exponent_flag"] = expr.zero_exponent_flag;
    return out;
}

ordered_json certificate_to_json(const Certificate& cert) {
    ordered_json out = ordered_json::object();
    out["version"] = cert.version;
    out["n"] = cert.n;
    out["m"] = cert.m;
    out["t"] = rational_to_json(cert.t);
    out["cap"] = rational_to_json(cert.cap);
    out["case_frozen_corner"] = (cert.n == 2 * cert.m);
    out["bulk"] = ordered_json::object(
        {{"hor", int_map_to_json(cert.bulk.hor, [](const NovikovSeries& s) { return series_to_json(s); })},
         {"ver", int_map_to_json(cert.bulk.ver, [](const NovikovSeries& s) { return series_to_json(s); })}});
    out["point"] = index_map_to_json(cert.point.y, [](const NovikovSeries& s) { return series_to_json(s); });
    out["slt_leading"] = index_map_to_json(cert.slt_leading, [](const Rational& q) { return rational_to_json(q); });
    out["c_hor_leading"] =
        int_map_to_json(cert.c_hor_leading, [](const Rational& q) { return rational_to_json(q); });
    out["c_ver_leading"] =
        int_map_to_json(cert.c_ver_leading, [](const Rational& q) { return rational_to_json(q); });
    out["seed"] = seed_to_json(cert.seed);
    out["n_check"] = cert.report.min_n_check ? rational_to_json(*cert.report.min_n_check) : ordered_json(nullptr);
    out["report"] = report_to_json(cert.report);
    return out;
}

Certificate certificate_from_json(const ordered_json& j) {
    Certificate cert;
    cert.version = j.at("version").get<std::string>();
    cert.n = j.at("n").get<int>();
    cert.m = j.at("m").get<int>();
    cert.t = rational_from_json(j.at("t"));
    cert.cap = rational_from_json(j.at("cap"));
    for (const auto& [key, value] : j.at("bulk").at("hor").items())
        cert.bulk.hor[std::stoi(key)] = series_from_json(value);
    for (const auto& [key, value] : j.at("bulk").at("ver").items())
        cert.bulk.ver[std::stoi(key)] = series_from_json(value);
    for (const auto& [key, value] : j.at("point").items())
        cert.point.y[index_from_key(key)] = series_from_json(value);
    for (const auto& [key, value] : j.at("slt_leading").items())
        cert.slt_leading[index_from_key(key)] = rational_from_json(value);
    for (const auto& [key, value] : j.at("c_hor_leading").items())
        cert.c_hor_leading[std::stoi(key)] = rational_from_json(value);
    for (const auto& [key, value] : j.at("c_ver_leading").items())
        cert.c_ver_leading[std::stoi(key)] = rational_from_json(value);
    cert.seed = seed_from_json(j.at("seed"));
    if (j.contains("report")) {
        const auto& rep = j.at("report");
        if (rep.contains("min_n_check")) cert.report.min_n_check = rational_from_json(rep.at("min_n_check"));
        for (const auto& e : rep.at("checks")) {
            CheckEntry entry;
            entry.what = e.at("check").get<std::string>();
            entry.pass = e.at("pass").get<bool>();
            if (e.contains("detail")) entry.detail = e.at("detail").get<std::string>();
            cert.report.entries.push_back(std::move(entry));
        }
    }
    return cert;
}

ordered_json report_to_json(const CertificateReport& report) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json je = ordered_json::object();
        je["check"] = e.what;
        je["pass"] = e.pass;
        if (!e.detail.empty()) je["detail"] = e.detail;
        entries.push_back(std::move(je));
    }
    ordered_json out = ordered_json::object();
    out["all_pass"] = report.all_pass();
    if (report.min_n_check) out["min_n_check"] = rational_to_json(*report.min_n_check);
    out["checks"] = std::move(entries);
    return out;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace gcfiber
