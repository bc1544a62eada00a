#include "klab/surface.hpp"
#include "klab/errors.hpp"
#include "klab/flow.hpp"
#include "klab/metric.hpp"
#include "klab/weierstrass.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace klab {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void structural(const std::string& where, const std::string& what)
{
    throw ParseError(0, where + ": " + what);
}

long long get_int(const nlohmann::json& obj, const std::string& key, const std::string& where,
                  std::optional<long long> fallback = std::nullopt)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (fallback) return *fallback;
        structural(where, "missing \"" + key + "\"");
    }
    if (!it->is_number_integer()) structural(where + "/" + key, "expected an integer");
    return it->get<long long>();
}

std::string fiber_kind_field(const FiberKind& k)
{
    if (k.tag == FiberTag::I) return "I";
    if (k.tag == FiberTag::IStar) return "I*";
    return to_string(k);
}

} // namespace

SurfaceData parse_surface(std::string_view bytes)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    if (!doc.is_object()) structural("/", "expected an object");

    SurfaceData s;
    std::vector<std::string> violations;
    s.genus = int(get_int(doc, "genus", "/"));
    s.chi = int(get_int(doc, "chi", "/"));
    s.jacobian_degree = int(get_int(doc, "jacobian_degree", "/"));
    if (s.genus < 0) violations.push_back("genus must be >= 0");
    if (s.jacobian_degree < 1) violations.push_back("jacobian_degree must be >= 1");

    auto fibers = doc.find("fibers");
    if (fibers == doc.end()) structural("/", "missing \"fibers\"");
    if (!fibers->is_array()) structural("/fibers", "expected an array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < fibers->size(); ++i) {
        const auto& f = (*fibers)[i];
        const std::string where = "/fibers/" + std::to_string(i);
        if (!f.is_object()) structural(where, "expected an object");
        auto kind_it = f.find("kind");
        if (kind_it == f.end() || !kind_it->is_string()) structural(where, "missing string \"kind\"");
        const std::string kind = kind_it->get<std::string>();
        const bool has_b = f.contains("b");
        FiberKind k;
        try {
            if (kind == "I" || kind == "I*") {
                if (!has_b) {
                    violations.push_back(where + ": kind " + kind + " needs \"b\"");
                    continue;
                }
                const long long b = get_int(f, "b", where);
                k = kind == "I" ? FiberKind::I(int(b)) : FiberKind::IStar(int(b));
            } else {
                k = parse_fiber_kind(kind);
                if (has_b) violations.push_back(where + ": \"b\" is only allowed for kinds I and I*");
            }
        } catch (const DomainError& e) {
            violations.push_back(where + ": " + e.what());
            continue;
        }
        FiberEntry entry;
        entry.id = "p" + std::to_string(i);
        if (auto id = f.find("id"); id != f.end()) {
            if (!id->is_string()) structural(where + "/id", "expected a string");
            entry.id = id->get<std::string>();
        }
        if (!ids.insert(entry.id).second) violations.push_back(where + ": duplicate fiber id " + entry.id);
        entry.model = {k, int(get_int(f, "d_p", where)), {0.0, 1.0}};
        if (auto om = f.find("omega0"); om != f.end()) {
            if (!om->is_array() || om->size() != 2 || !(*om)[0].is_number() || !(*om)[1].is_number())
                structural(where + "/omega0", "expected [re, im]");
            entry.model.omega0 = {(*om)[0].get<double>(), (*om)[1].get<double>()};
            if (!(entry.model.omega0.imag() > 0)) violations.push_back(where + ": omega0 must lie in H+");
        }
        if (const auto chk = validate_order(entry.model); !chk.ok)
            violations.push_back(where + ": " + chk.diagnostic);
        s.fibers.push_back(entry);
    }

    if (auto secs = doc.find("mw_sections"); secs != doc.end()) {
        if (!secs->is_array()) structural("/mw_sections", "expected an array");
        for (std::size_t i = 0; i < secs->size(); ++i) {
            const auto& j = (*secs)[i];
            const std::string where = "/mw_sections/" + std::to_string(i);
            if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
                structural(where, "expected an object with string \"name\"");
            SectionData sec;
            sec.name = j["name"].get<std::string>();
            sec.dot_zero = get_int(j, "dot_zero", where);
            if (auto ds = j.find("dot_sections"); ds != j.end()) {
                if (!ds->is_object()) structural(where + "/dot_sections", "expected an object");
                for (auto it = ds->begin(); it != ds->end(); ++it) {
                    if (!it->is_number_integer()) structural(where + "/dot_sections/" + it.key(), "expected an integer");
                    sec.dot_sections[it.key()] = it->get<long long>();
                }
            }
            if (auto m = j.find("in_mw0"); m != j.end()) {
                if (!m->is_boolean()) structural(where + "/in_mw0", "expected a boolean");
                sec.in_mw0 = m->get<bool>();
            }
            s.sections.push_back(sec);
        }
        for (const auto& a : s.sections)
            for (const auto& [other, v] : a.dot_sections)
                for (const auto& b : s.sections)
                    if (b.name == other) {
                        auto back = b.dot_sections.find(a.name);
                        if (back != b.dot_sections.end() && back->second != v)
                            violations.push_back("mw_sections: " + a.name + "." + b.name + " is not symmetric");
                    }
    }

    if (!violations.empty()) {
        std::string msg;
        for (const auto& v : violations) msg += (msg.empty() ? "" : "; ") + v;
        throw ValidationError(msg);
    }
    return s;
}

SurfaceData parse_surface_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_surface(ss.str());
}

ojson surface_to_json(const SurfaceData& s)
{
    ojson j;
    j["genus"] = s.genus;
    j["chi"] = s.chi;
    j["jacobian_degree"] = s.jacobian_degree;
    j["fibers"] = ojson::array();
    for (const auto& f : s.fibers) {
        ojson e;
        e["id"] = f.id;
        e["kind"] = fiber_kind_field(f.model.kind);
        if (f.model.kind.tag == FiberTag::I || f.model.kind.tag == FiberTag::IStar) e["b"] = f.model.kind.b;
        e["d_p"] = f.model.d_p;
        if (f.model.omega0 != cd(0.0, 1.0)) e["omega0"] = {f.model.omega0.real(), f.model.omega0.imag()};
        j["fibers"].push_back(e);
    }
    if (!s.sections.empty()) {
        j["mw_sections"] = ojson::array();
        for (const auto& sec : s.sections) {
            ojson e;
            e["name"] = sec.name;
            e["dot_zero"] = sec.dot_zero;
            e["dot_sections"] = ojson::object();
            for (const auto& [k, v] : sec.dot_sections) e["dot_sections"][k] = v;
            e["in_mw0"] = sec.in_mw0;
            j["mw_sections"].push_back(e);
        }
    }
    return j;
}

std::string serialize_surface(const SurfaceData& s) { return surface_to_json(s).dump(2); }

std::vector<Diagnostic> validate_surface(const SurfaceData& s)
{
    std::vector<Diagnostic> out;
    long long euler = 0;
    for (const auto& f : s.fibers) euler += fiber_constants(f.model.kind).euler;
    if (euler != 12LL * s.chi)
        out.push_back({"euler-number/sum-equals-12chi",
                       "fiber Euler numbers sum to " + std::to_string(euler) + ", expected 12*chi = " +
                           std::to_string(12LL * s.chi) + " (standard theory, advisory)",
                       true});
    if (s.chi <= 0)
        out.push_back({"t-interval/chi-positive", "chi <= 0: t-interval and curvature formulas unavailable", false});
    if (s.genus == 0)
        out.push_back({"t-interval/genus-at-least-1", "t-interval unavailable: genus must be >= 1", false});
    for (const auto& sec : s.sections)
        if (!sec.in_mw0)
            out.push_back({"shioda-pairing/mw0-only",
                           "section " + sec.name + " is not in MW^0; pairing formula does not apply", false});
    return out;
}

// ---- JSON forms -----------------------------------------------------------

ojson to_json(const Rat& r) { return to_string(r); }

ojson to_json(const PiLinear& x)
{
    ojson j;
    j["rat"] = to_string(x.rat);
    j["pi"] = to_string(x.pi);
    return j;
}

ojson to_json(const PiPoly& p)
{
    if (p.degree() <= 1) {
        const auto& c = p.coeffs();
        return to_json(PiLinear(c.empty() ? Rat(0) : c[0], c.size() > 1 ? c[1] : Rat(0)));
    }
    ojson j = ojson::array();
    for (const auto& c : p.coeffs()) j.push_back(to_string(c));
    return ojson{{"pi_powers", j}};
}

ojson to_json(const PiRatio& x)
{
    ojson j;
    j["num"] = to_json(x.num);
    j["den"] = to_json(x.den);
    j["approx"] = x.eval(kPi);
    return j;
}

ojson to_json(const DivisorClass& c)
{
    ojson j;
    j["s"] = to_json(c.s);
    j["F"] = to_json(c.F);
    j["components"] = ojson::object();
    for (const auto& [k, v] : c.components) j["components"][k.first + "/Theta_" + std::to_string(k.second)] = to_json(v);
    if (!c.sections.empty()) {
        j["sections"] = ojson::object();
        for (const auto& [k, v] : c.sections) j["sections"][k] = to_json(v);
    }
    j["essential"] = ojson::object();
    for (const auto& [k, v] : c.essential) j["essential"][k] = to_json(v);
    if (!c.essential_symbolic.empty()) {
        j["essential_symbolic"] = ojson::object();
        for (const auto& [k, v] : c.essential_symbolic) j["essential_symbolic"][k] = to_string(v) + "*e_" + k;
    }
    return j;
}

// ---- numeric checks -------------------------------------------------------

double CheckRow::residual() const { return std::abs(got - expected); }

std::vector<CheckRow> metric_checks(int samples, std::optional<double> tol, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-2.0, 2.0), V(0.5, 5.0), Z(-3.0, 3.0);
    std::vector<CheckRow> rows;
    auto t = [&](double def) { return tol.value_or(def); };
    auto fmt = [](const SiegelPoint& p) {
        std::ostringstream o;
        o.precision(6);
        o << "zeta=" << p.zeta.real() << (p.zeta.imag() < 0 ? "" : "+") << p.zeta.imag() << "i z=" << p.z.real()
          << (p.z.imag() < 0 ? "" : "+") << p.z.imag() << "i";
        return o.str();
    };
    const std::vector<GroupElement> gens{{{1, 1, 0, 1}, 0, 0}, {{0, 1, -1, 0}, 0, 0}, {{1, 0, 0, 1}, 1, 0},
                                         {{1, 0, 0, 1}, 0, 1}};
    const char* gen_names[] = {"T", "S", "n=(1,0)", "n=(0,1)"};
    const std::vector<MetricParams> params{{1, 1}, {2, 1}, {3, 2}, {1, 0.5}};
    for (int k = 0; k < samples; ++k) {
        SiegelPoint p{{U(rng), V(rng)}, {Z(rng), Z(rng)}};
        for (const auto& mp : params) {
            std::ostringstream name;
            name << "scalar_curvature(delta=" << mp.delta << ",eps=" << mp.eps << ")";
            rows.push_back({name.str(), fmt(p), -3.0 / mp.delta, scalar_curvature(mp, p), t(1e-6)});
        }
        rows.push_back({"fiber_volume(delta=1,eps=1)", fmt(p), 1.0, fiber_volume({1, 1}, p.zeta, 64), t(1e-9)});
        for (std::size_t g = 0; g < gens.size(); ++g)
            rows.push_back({std::string("invariance_residual(") + gen_names[g] + ")", fmt(p), 0.0,
                            invariance_residual(gens[g], {1, 1}, {p}), t(1e-9)});
    }
    return rows;
}

std::vector<CheckRow> series_checks()
{
    std::vector<CheckRow> rows;
    const cd rho = std::polar(1.0, 2.0 * kPi / 3.0);
    rows.push_back({"j_normalized", "tau=i", 1.0, std::abs(j_normalized({0, 1})), 1e-8});
    rows.push_back({"j_normalized", "tau=e^{2 pi i/3}", 0.0, std::abs(j_normalized(rho)), 1e-8});
    for (double th = 1.2; th < 5.0; th += 0.9)
        rows.push_back({"nodal_fiber_check", "w=e^{" + std::to_string(th) + "i}", 0.0,
                        nodal_fiber_check(std::polar(1.0, th)), 1e-12});
    const auto& cal = cubic_calibration();
    for (const auto& [v, worst] : cal.sweep)
        if (v.s2 == cal.chosen.s2 && v.s3 == cal.chosen.s3)
            rows.push_back({"weierstrass_residual", "calibration samples", 0.0, worst, 1e-8});
    return rows;
}

// ---- report ---------------------------------------------------------------

ReportResult build_report(const SurfaceData& s, const ReportOptions& opt)
{
    ReportResult res;
    ojson& r = res.doc;
    r["schema"] = "kodaira-lab/1";
    r["surface"] = surface_to_json(s);

    r["canonical_class"] = to_json(canonical_class(s.genus, s.chi));
    r["eta_class"] = to_json(assemble_eta_class(s));
    r["D_X"] = to_json(class_D_X(s));

    const SurfaceScalars sc{s.genus, s.chi, s.jacobian_degree};
    try {
        const TInterval iv = t_interval(sc);
        const PiRatio t0 = t_zero(sc);
        r["t_interval"] = {{"available", true}, {"lower", "0"}, {"upper", to_string(iv.upper)}};
        r["t_zero"] = to_json(t0);
        r["t_zero"]["in_interval"] = iv.contains(t0);

        ojson table = ojson::array();
        auto row = [&](const std::string& label, const PiRatio& t) {
            const CurvatureReport c = scalar_curvature_eta_t(t, sc);
            ojson e;
            e["t"] = label;
            e["curvature_printed"] = to_json(c.printed);
            e["curvature_derived"] = to_json(c.derived);
            e["ratio_printed_over_derived"] = to_string(c.ratio);
            table.push_back(e);
        };
        row("t0", t0);
        if (iv.contains(PiRatio{PiPoly(Rat(1))})) row("1", PiRatio{PiPoly(Rat(1))});
        if (opt.t) {
            if (iv.contains(PiRatio{PiPoly(*opt.t)}))
                row(to_string(*opt.t), PiRatio{PiPoly(*opt.t)});
            else
                table.push_back({{"t", to_string(*opt.t)}, {"error", "OutOfInterval"}});
        }
        r["curvature"] = table;
        r["curvature_convention"] = "derived branch is the one consistent with curvature -3/delta and fiber volume eps";
    } catch (const Error& e) {
        r["t_interval"] = {{"available", false}, {"reason", e.what()}, {"error", e.code()}};
        r["t_zero"] = nullptr;
        r["curvature"] = ojson::array();
    }

    ojson fibers = ojson::array();
    ojson twisted = ojson::array();
    for (const auto& f : s.fibers) {
        const FiberKind k = f.model.kind;
        const FiberConstants c = fiber_constants(k);
        ojson e;
        e["id"] = f.id;
        e["kind"] = to_string(k);
        e["d_p"] = f.model.d_p;
        e["delta_p"] = to_string(c.delta);
        e["mu_p"] = c.mu ? ojson(*c.mu) : ojson("infinity");
        e["h_p"] = c.h ? ojson(*c.h) : ojson("infinity");
        e["euler"] = c.euler;
        e["multiplicities"] = c.multiplicities;
        ojson np = ojson::object();
        const auto n = compute_Np(k);
        for (std::size_t i = 0; i < n.size(); ++i) np["Theta_" + std::to_string(i + 1)] = to_string(n[i]);
        e["N_p"] = np;
        try {
            ojson ex = ojson::object();
            for (const auto& [label, a] : extension_exponents(k)) ex[label] = to_string(a);
            e["extension_exponents"] = ex;
        } catch (const NoExponentData&) {
            e["extension_exponents"] = nullptr;
        }
        ojson flags = ojson::array();
        if (k.tag == FiberTag::I && k.b >= 2)
            flags.push_back("closed form -sum i(b+1-i)/(2b) Theta_i disagrees with R_p c = v; "
                            "matrix solution -k(b-k)/(2b) reported");
        if (k.is_pole()) flags.push_back("twisted coefficient uses d_p/infinity = 0");
        e["flags"] = flags;
        fibers.push_back(e);
        twisted.push_back({{"fiber", f.id}, {"kind", to_string(k)}, {"d_p", f.model.d_p},
                           {"coefficient", to_string(twisted_coefficient(k, f.model.d_p))}});
    }
    r["fibers"] = fibers;
    r["twisted_coefficients"] = twisted;
    const LimitMetrics lm = limit_metrics(s.jacobian_degree);
    r["limit_metrics"] = {{"omega_inf_coeff", to_string(lm.omega_inf)}, {"omega_wp_coeff", to_string(lm.omega_wp)}};
    r["fiber_volume_note"] = "literal fiber integral gives eps; the alternative value eps/delta coincides at delta = 1";

    ojson diags = ojson::array();
    for (const auto& d : validate_surface(s))
        diags.push_back({{"anchor", d.anchor}, {"message", d.message}, {"advisory", d.advisory}});
    r["diagnostics"] = diags;

    if (opt.verify) {
        ojson v = ojson::array();
        auto push = [&](const CheckRow& row) {
            v.push_back({{"check", row.check}, {"point", row.point}, {"expected", row.expected},
                         {"got", row.got}, {"residual", row.residual()}, {"tol", row.tol}, {"pass", row.pass()}});
            res.verification_ok = res.verification_ok && row.pass();
        };
        for (const auto& row : metric_checks(5)) push(row);
        for (const auto& row : series_checks()) push(row);
        r["verification"] = v;
        const auto& cal = cubic_calibration();
        ojson sweep = ojson::array();
        for (const auto& [var, worst] : cal.sweep) sweep.push_back({{"variant", var.label()}, {"max_residual", worst}});
        r["cubic_calibration"] = {{"chosen", cal.chosen.label()}, {"printed_form_valid", cal.printed_form_valid},
                                  {"sweep", sweep}};
    }
    return res;
}

} // namespace klab
