#include "gcfiber/cli.hpp"

#include "gcfiber/json_io.hpp"
#include "gcfiber/lift.hpp"
#include "gcfiber/render.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace gcfiber {

namespace {

struct CliError : std::runtime_error {
    int code;
    CliError(int code_, const std::string& msg) : std::runtime_error(msg), code(code_) {}
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(2, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ordered_json parse_json_file(const std::string& path) {
    try {
        return ordered_json::parse(slurp(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw CliError(2, "malformed JSON in " + path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw CliError(2, "cannot write " + out_path);
    f << text;
}

BulkParameter bulk_from_json(const ordered_json& j) {
    BulkParameter bulk;
    if (j.contains("hor"))
        for (const auto& [key, value] : j.at("hor").items()) bulk.hor[std::stoi(key)] = series_from_json(value);
    if (j.contains("ver"))
        for (const auto& [key, value] : j.at("ver").items()) bulk.ver[std::stoi(key)] = series_from_json(value);
    return bulk;
}

struct GridCase {
    int n, m;
    Rational t;
};

std::vector<GridCase> parse_cases(const std::string& spec) {
    std::vector<GridCase> cases;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ';')) {
        if (item.empty()) continue;
        std::istringstream fields(item);
        std::string ns, ms, ts;
        if (!std::getline(fields, ns, ',') || !std::getline(fields, ms, ',') || !std::getline(fields, ts, ','))
            throw CliError(2, "malformed grid case: " + item);
        cases.push_back({std::stoi(ns), std::stoi(ms), parse_rational(ts)});
    }
    return cases;
}

int cmd_potential(int n, int m, const std::string& t_str, const std::string& bulk_path,
                  const std::string& format, bool numeric, const std::string& out_path, std::ostream& out) {
    Rational t = parse_rational(t_str);
    GcPoint point = segment_point(n, m, t);
    PotentialExpr w = build_potential(point);
    if (!bulk_path.empty()) w = apply_bulk(w, bulk_from_json(parse_json_file(bulk_path)));
    if (format == "json") emit(dump_json(potential_to_json(w)), out_path, out);
    else emit(canonical_text(w, /*symbolic=*/!numeric) + "\n", out_path, out);
    return 0;
}

int cmd_slt(int n, int m, const std::string& seed_path, const std::string& out_path, std::ostream& out) {
    Seed seed = seed_path.empty() ? find_generic_seed(n, m) : seed_from_json(parse_json_file(seed_path));
    SltSolution sol = solve_slt(n, m, seed); // throws SltFailure naming the equation if not generic
    SltReport report = verify_slt(sol, build_slt(n, m));
    std::ostringstream msg;
    msg << "slt n=" << n << " m=" << m << ": " << (report.pass() ? "all residuals zero" : "FAILED") << "\n";
    out << msg.str();
    if (!out_path.empty()) emit(dump_json(slt_solution_to_json(sol)), out_path, out);
    return report.pass() ? 0 : 1;
}

int cmd_certify(int n, int m, const std::string& t_str, const std::string& cap_str,
                const std::string& seed_path, const std::string& out_path, std::ostream& out) {
    Rational t = parse_rational(t_str);
    Rational cap = parse_rational(cap_str);
    Certificate cert;
    if (n == 3) {
        cert = certify_fl3(t, cap);
    } else if (!seed_path.empty()) {
        cert = certify_with_seed(n, m, t, cap, seed_from_json(parse_json_file(seed_path)));
    } else {
        cert = certify(n, m, t, cap);
    }
    CertificateReport report = verify_certificate(cert);
    emit(dump_json(certificate_to_json(cert)), out_path, out);
    if (!out_path.empty())
        out << "certificate n=" << cert.n << " m=" << cert.m << " t=" << to_string(cert.t) << ": "
            << (report.all_pass() ? "verified" : "FAILED") << "\n";
    return report.all_pass() ? 0 : 1;
}

int cmd_verify(const std::string& cert_path, const std::string& out_path, std::ostream& out) {
    Certificate cert;
    try {
        cert = certificate_from_json(parse_json_file(cert_path));
    } catch (const nlohmann::json::exception& e) {
        throw CliError(2, std::string("malformed certificate: ") + e.what());
    }
    CertificateReport report = verify_certificate(cert);
    emit(dump_json(report_to_json(report)), out_path, out);
    if (!out_path.empty()) out << (report.all_pass() ? "PASS" : "FAIL") << "\n";
    return report.all_pass() ? 0 : 1;
}

int cmd_diagram(int n, int shade_m, int hor, int ver, const std::string& format, const std::string& out_path,
                std::ostream& out) {
    DiagramStyle style;
    if (shade_m > 0) style.shade_m = shade_m;
    if (hor > 0) style.mark_hor = hor;
    if (ver > 0) style.mark_ver = ver;
    emit(format == "text" ? render_ascii(n, style) : render_svg(n, style), out_path, out);
    return 0;
}

int cmd_grid(const std::string& cases_str, const std::string& spec_path, const std::string& cap_str, int jobs,
             const std::string& out_dir, std::ostream& out) {
    std::vector<GridCase> cases;
    if (!spec_path.empty()) {
        for (const auto& item : parse_json_file(spec_path))
            cases.push_back({item.at(0).get<int>(), item.at(1).get<int>(),
                             parse_rational(item.at(2).get<std::string>())});
    }
    if (!cases_str.empty())
        for (const auto& c : parse_cases(cases_str)) cases.push_back(c);
    if (cases.empty()) throw CliError(2, "grid: no cases given");
    Rational cap = parse_rational(cap_str);
    std::sort(cases.begin(), cases.end(), [](const GridCase& a, const GridCase& b) {
        return std::tie(a.n, a.m, a.t) < std::tie(b.n, b.m, b.t);
    });

    struct Result {
        bool pass = false;
        std::string message;
        std::string cert_json;
    };
    std::vector<Result> results(cases.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t idx = next.fetch_add(1); idx < cases.size(); idx = next.fetch_add(1)) {
            const GridCase& c = cases[idx];
            try {
                Certificate cert = (c.n == 3) ? certify_fl3(c.t, cap) : certify(c.n, c.m, c.t, cap);
                results[idx].pass = true;
                results[idx].cert_json = dump_json(certificate_to_json(cert));
            } catch (const std::exception& e) {
                results[idx].pass = false;
                results[idx].message = e.what();
            }
        }
    };
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cases.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    bool all = true;
    for (size_t idx = 0; idx < cases.size(); ++idx) {
        const GridCase& c = cases[idx];
        out << "n=" << c.n << " m=" << c.m << " t=" << to_string(c.t) << ": "
            << (results[idx].pass ? "PASS" : "FAIL " + results[idx].message) << "\n";
        all = all && results[idx].pass;
        if (results[idx].pass && !out_dir.empty()) {
            std::ostringstream name;
            name << out_dir << "/cert_n" << c.n << "_m" << c.m << "_t" << numerator(c.t) << "_" << denominator(c.t)
                 << ".json";
            std::ofstream f(name.str(), std::ios::binary);
            if (!f) throw CliError(2, "cannot write " + name.str());
            f << results[idx].cert_json;
        }
    }
    return all ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gelfand-Cetlin fiber non-displaceability certificates"};
    app.require_subcommand(1);

    int n = 0, m = 2;
    std::string t_str, cap_str = "2", seed_path, bulk_path, out_path, out_dir;
    std::string format_p = "text", format_d = "svg", cases_str, spec_path;
    int hor = 0, ver = 0, jobs = 1, diagram_m = 0;
    bool numeric = false;

    auto* p = app.add_subcommand("potential", "print the (bulk-deformed) potential of L_m(t)");
    p->add_option("--n", n)->required();
    p->add_option("--m", m);
    p->add_option("--t", t_str)->required();
    p->add_option("--bulk", bulk_path);
    p->add_option("--format", format_p);
    p->add_flag("--numeric", numeric, "render numeric exponents instead of a+bt");
    p->add_option("--out", out_path);

    auto* s = app.add_subcommand("slt", "solve the split leading term equation");
    s->add_option("--n", n)->required();
    s->add_option("--m", m)->required();
    s->add_option("--seed", seed_path);
    s->add_option("--out", out_path);

    auto* c = app.add_subcommand("certify", "produce a critical-point certificate");
    c->add_option("--n", n)->required();
    c->add_option("--m", m);
    c->add_option("--t", t_str)->required();
    c->add_option("--cap", cap_str);
    c->add_option("--seed", seed_path);
    c->add_option("--out", out_path);

    auto* v = app.add_subcommand("verify", "check a certificate file");
    std::string cert_path;
    v->add_option("certificate", cert_path)->required();
    v->add_option("--out", out_path);

    auto* d = app.add_subcommand("diagram", "emit the ladder diagram");
    d->add_option("--n", n)->required();
    d->add_option("--m", diagram_m, "shade B(m)");
    d->add_option("--hor", hor, "highlight P^hor_{i,i+1}");
    d->add_option("--ver", ver, "highlight P^ver_{j+1,j}");
    d->add_option("--format", format_d);
    d->add_option("--out", out_path);

    auto* g = app.add_subcommand("grid", "certify a batch of (n,m,t) cases");
    g->add_option("--cases", cases_str, "semicolon list n,m,t;...");
    g->add_option("--spec", spec_path, "JSON file [[n,m,\"t\"],...]");
    g->add_option("--cap", cap_str);
    g->add_option("--jobs", jobs);
    g->add_option("--out-dir", out_dir);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (p->parsed()) return cmd_potential(n, m, t_str, bulk_path, format_p, numeric, out_path, out);
        if (s->parsed()) return cmd_slt(n, m, seed_path, out_path, out);
        if (c->parsed()) return cmd_certify(n, m, t_str, cap_str, seed_path, out_path, out);
        if (v->parsed()) return cmd_verify(cert_path, out_path, out);
        if (d->parsed()) return cmd_diagram(n, diagram_m, hor, ver, format_d, out_path, out);
        if (g->parsed()) return cmd_grid(cases_str, spec_path, cap_str, jobs, out_dir, out);
    } catch (const CliError& e) {
        err << "error: " << e.what() << "\n";
        return e.code;
    } catch (const SltFailure& e) {
        err << "not generic: " << e.what() << "\n";
        return 1;
    } catch (const LiftFailure& e) {
        err << "lift failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace gcfiber
