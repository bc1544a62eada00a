#include "klab/errors.hpp"
#include "klab/flow.hpp"
#include "klab/lattice.hpp"
#include "klab/surface.hpp"
#include "klab/weierstrass.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>

using namespace klab;

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumeric = 2 };

// "a+bi", "a-bi", "a", "bi".
cd parse_complex(std::string s)
{
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw CLI::ValidationError("empty complex number");
    try {
        if (s.back() != 'i') return {std::stod(s), 0.0};
        s.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size(); k-- > 1;)
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                split = k;
                break;
            }
        auto imag = [](const std::string& t) {
            if (t.empty() || t == "+") return 1.0;
            if (t == "-") return -1.0;
            return std::stod(t);
        };
        if (split == std::string::npos) return {0.0, imag(s)};
        return {std::stod(s.substr(0, split)), imag(s.substr(split))};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("cannot parse complex number '" + s + "'");
    }
}

void print_class(const std::string& name, const DivisorClass& c)
{
    std::cout << name << " = " << to_string(c.s) << " [s] + (" << to_string(c.F) << ") [F]";
    for (const auto& [k, v] : c.components)
        std::cout << " + (" << to_string(v) << ") " << k.first << "/Theta_" << k.second;
    for (const auto& [k, v] : c.essential) std::cout << " + (" << to_string(v) << ") psi(" << k << ")";
    for (const auto& [k, v] : c.essential_symbolic) std::cout << " + " << to_string(v) << "*e_" << k << " psi(" << k << ")";
    std::cout << "\n";
}

int run_report(const std::string& path, bool verify, const std::string& t, bool json)
{
    const SurfaceData s = parse_surface_file(path);
    ReportOptions opt;
    opt.verify = verify;
    if (!t.empty()) opt.t = parse_rat(t);
    const ReportResult r = build_report(s, opt);
    if (json) {
        std::cout << r.doc.dump(2) << "\n";
    } else {
        std::cout << "genus " << s.genus << ", chi " << s.chi << ", deg J " << s.jacobian_degree << ", "
                  << s.fibers.size() << " singular fibers\n";
        print_class("K_X", canonical_class(s.genus, s.chi));
        print_class("[eta_X]", assemble_eta_class(s));
        print_class("D_X", class_D_X(s));
        const auto& iv = r.doc["t_interval"];
        if (iv["available"].get<bool>()) {
            std::cout << "t-interval (0, " << iv["upper"].get<std::string>() << "), t0 ~ "
                      << r.doc["t_zero"]["approx"].get<double>() << "\n";
            for (const auto& row : r.doc["curvature"])
                if (row.contains("curvature_printed"))
                    std::cout << "  t=" << row["t"].get<std::string>() << ": curvature printed "
                              << row["curvature_printed"]["approx"].get<double>() << ", derived "
                              << row["curvature_derived"]["approx"].get<double>() << "\n";
        } else {
            std::cout << "t-interval unavailable: " << iv["reason"].get<std::string>() << "\n";
        }
        for (const auto& f : r.doc["fibers"]) {
            std::cout << "  " << f["id"].get<std::string>() << " " << f["kind"].get<std::string>() << " N_p:";
            for (auto it = f["N_p"].begin(); it != f["N_p"].end(); ++it)
                std::cout << " " << it.value().get<std::string>();
            std::cout << "\n";
        }
        for (const auto& d : r.doc["diagnostics"])
            std::cout << (d["advisory"].get<bool>() ? "advisory" : "warning") << " [" << d["anchor"].get<std::string>()
                      << "] " << d["message"].get<std::string>() << "\n";
        if (verify)
            std::cout << "verification " << (r.verification_ok ? "passed" : "FAILED") << "\n";
    }
    return r.verification_ok ? kOk : kNumeric;
}

int run_np(const std::string& kind, int b, bool json)
{
    FiberKind k;
    if (kind == "I" || kind == "I*") {
        if (b < 0) throw ValidationError("kind " + kind + " needs --b");
        k = kind == "I" ? FiberKind::I(b) : FiberKind::IStar(b);
    } else {
        k = parse_fiber_kind(kind);
    }
    const auto n = compute_Np(k);
    const auto labels = component_labels(k);
    if (json) {
        ojson j;
        j["kind"] = to_string(k);
        j["N_p"] = ojson::object();
        for (std::size_t i = 0; i < n.size(); ++i) j["N_p"][labels[i]] = to_string(n[i]);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "N_p for " << to_string(k) << ":\n";
        if (n.empty()) std::cout << "  (no non-identity components)\n";
        for (std::size_t i = 0; i < n.size(); ++i) std::cout << "  " << labels[i] << "  " << to_string(n[i]) << "\n";
    }
    return kOk;
}

int run_verify_metric(int samples, std::optional<double> tol, bool json)
{
    bool ok = true;
    const auto rows = metric_checks(samples, tol);
    for (const auto& r : rows) {
        ok = ok && r.pass();
        if (json) {
            ojson j{{"point", r.point}, {"quantity", r.check}, {"expected", r.expected},
                    {"got", r.got}, {"residual", r.residual()}};
            std::cout << j.dump() << "\n";
        }
    }
    if (!json) {
        std::size_t failed = 0;
        double worst = 0;
        for (const auto& r : rows) {
            failed += !r.pass();
            worst = std::max(worst, r.residual());
        }
        std::cout << rows.size() << " checks, " << failed << " failed, worst residual " << worst << "\n";
    }
    return ok ? kOk : kNumeric;
}

int run_flow(const std::string& path, const std::string& t, double delta0, double eps0, bool json)
{
    const SurfaceData s = parse_surface_file(path);
    const SurfaceScalars sc{s.genus, s.chi, s.jacobian_degree};
    const Rat tr = parse_rat(t);
    const TInterval iv = t_interval(sc);
    const PiRatio t0 = t_zero(sc);
    const CurvatureReport c = scalar_curvature_eta_t(tr, sc);
    const double td = to_double(tr);
    const FlowState st = krf_step(delta0, eps0, td);
    const double a = krf_a(td, delta0, eps0, sc);
    ojson j;
    j["interval"] = {{"lower", "0"}, {"upper", to_string(iv.upper)}};
    j["t0"] = to_json(t0);
    j["curvature_printed"] = to_json(c.printed);
    j["curvature_derived"] = to_json(c.derived);
    j["curvature_ratio"] = to_string(c.ratio);
    j["state"] = {{"t", td}, {"delta", st.delta}, {"eps", st.eps}};
    j["a"] = a;
    j["twisted_coefficients"] = ojson::array();
    for (const auto& f : s.fibers)
        j["twisted_coefficients"].push_back(
            {{"fiber", f.id}, {"kind", to_string(f.model.kind)},
             {"coefficient", to_string(twisted_coefficient(f.model.kind, f.model.d_p))}});
    if (json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "interval (0, " << to_string(iv.upper) << "), t0 ~ " << t0.eval(std::numbers::pi) << "\n"
                  << "curvature at t=" << t << ": printed " << c.printed.eval(std::numbers::pi) << ", derived "
                  << c.derived.eval(std::numbers::pi) << " (ratio " << to_string(c.ratio) << ")\n"
                  << "flow state: delta " << st.delta << ", eps " << st.eps << ", a " << a << "\n";
        for (const auto& e : j["twisted_coefficients"])
            std::cout << "  " << e["fiber"].get<std::string>() << " " << e["kind"].get<std::string>()
                      << " coefficient " << e["coefficient"].get<std::string>() << "\n";
    }
    return kOk;
}

int run_weierstrass(const std::string& tau_s, const std::string& w_s, int terms, bool json)
{
    const cd tau = parse_complex(tau_s), w = parse_complex(w_s);
    const auto xy = kodaira_xy(tau, w, terms);
    const auto g = eisenstein_g(tau, terms);
    const double res = weierstrass_residual(tau, w, terms);
    auto c = [](cd z) { return ojson{z.real(), z.imag()}; };
    ojson j{{"x", c(xy.x.value)}, {"y", c(xy.y.value)}, {"g2", c(g.g2.value)}, {"g3", c(g.g3.value)},
            {"residual", res}, {"relation", cubic_calibration().chosen.label()},
            {"tail_bound", std::max({xy.x.tail_bound, xy.y.tail_bound, g.g2.tail_bound, g.g3.tail_bound})}};
    if (json) {
        std::cout << j.dump() << "\n";
    } else {
        std::cout << std::setprecision(12) << "x = " << xy.x.value << "\ny = " << xy.y.value << "\ng2 = " << g.g2.value
                  << "\ng3 = " << g.g3.value << "\nresidual of " << cubic_calibration().chosen.label() << ": " << res
                  << "\ntail bound " << j["tail_bound"].get<double>() << "\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact and numeric invariants of elliptic surfaces with Kodaira fibers"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    std::string path, t, kind, tau = "0.05", w = "0.5";
    bool verify = false;
    int b = -1, samples = 20, terms = 60;
    double tol = 0, delta0 = 1.0, eps0 = 1.0;

    auto* report = app.add_subcommand("report", "full class and flow report for a surface file");
    report->add_option("surface", path, "surface JSON")->required();
    report->add_flag("--verify", verify, "include numeric verification sections");
    report->add_option("--t", t, "extra t (rational) for the curvature table");

    auto* np = app.add_subcommand("np", "N_p correction for one fiber kind");
    np->add_option("kind", kind, "II, III*, I_3, I*, ...")->required();
    np->add_option("--b", b, "b for kinds I and I*");

    auto* vm = app.add_subcommand("verify-metric", "numeric checks of the metric family");
    vm->add_option("--samples", samples, "random points")->check(CLI::PositiveNumber);
    auto* tol_opt = vm->add_option("--tol", tol, "override every tolerance");

    auto* flow = app.add_subcommand("flow", "t-interval, curvature and flow parameters");
    flow->add_option("--surface", path, "surface JSON")->required();
    flow->add_option("--t", t, "t (rational)")->required();
    flow->add_option("--delta0", delta0, "initial delta");
    flow->add_option("--eps0", eps0, "initial epsilon");

    auto* ws = app.add_subcommand("weierstrass", "Kodaira x, y, g2, g3 and the cubic residual");
    ws->add_option("--tau", tau, "tau, e.g. 0.05+0.01i");
    ws->add_option("--w", w, "w, e.g. 0.5");
    ws->add_option("--terms", terms, "series terms")->check(CLI::Range(8, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }

    try {
        if (*report) return run_report(path, verify, t, json);
        if (*np) return run_np(kind, b, json);
        if (*vm) return run_verify_metric(samples, tol_opt->count() ? std::optional<double>(tol) : std::nullopt, json);
        if (*flow) return run_flow(path, t, delta0, eps0, json);
        if (*ws) return run_weierstrass(tau, w, terms, json);
    } catch (const ParseError& e) {
        std::cerr << "ParseError at byte " << e.position() << ": " << e.what() << "\n";
        return kValidation;
    } catch (const ValidationError& e) {
        std::cerr << "ValidationError: " << e.what() << "\n";
        return kValidation;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kValidation;
    } catch (const Error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        const std::string& c = e.code();
        const bool input = c == "OutOfInterval" || c == "ZeroChi" || c == "HypothesisFailed" || c == "BadOrder" ||
                           c == "DomainError" || c == "NotKodaira" || c == "NotSL2Z";
        return input ? kValidation : kNumeric;
    }
    return kOk;
}
