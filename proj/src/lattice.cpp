#include "klab/lattice.hpp"
#include "klab/errors.hpp"

namespace klab {

namespace {

template <class K, class V>
void add_into(std::map<K, V>& dst, const std::map<K, V>& src, int sign)
{
    for (const auto& [k, v] : src) {
        auto& slot = dst[k];
        if (sign > 0)
            slot += v;
        else
            slot -= v;
        if (slot == V(0)) dst.erase(k);
    }
}

template <class K, class V>
void scale_into(std::map<K, V>& m, const Rat& k)
{
    if (k == 0) {
        m.clear();
        return;
    }
    for (auto& [key, v] : m) v *= k;
}

} // namespace

DivisorClass& DivisorClass::operator+=(const DivisorClass& o)
{
    s += o.s;
    F += o.F;
    add_into(components, o.components, 1);
    add_into(sections, o.sections, 1);
    add_into(essential, o.essential, 1);
    add_into(essential_symbolic, o.essential_symbolic, 1);
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o)
{
    s -= o.s;
    F -= o.F;
    add_into(components, o.components, -1);
    add_into(sections, o.sections, -1);
    add_into(essential, o.essential, -1);
    add_into(essential_symbolic, o.essential_symbolic, -1);
    return *this;
}

DivisorClass& DivisorClass::operator*=(const Rat& k)
{
    s *= k;
    F *= k;
    scale_into(components, k);
    scale_into(sections, k);
    scale_into(essential, k);
    scale_into(essential_symbolic, k);
    return *this;
}

DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
DivisorClass operator*(const Rat& k, DivisorClass a) { return a *= k; }

std::map<std::string, PiPoly> DivisorClass::flatten(const PiPoly& scale) const
{
    std::map<std::string, PiPoly> out;
    auto put = [&](const std::string& key, const PiPoly& v) {
        PiPoly p = v * scale;
        if (!p.is_zero()) out[key] = p;
    };
    put("s", s);
    put("F", F);
    for (const auto& [k, v] : components) put(k.first + "/Theta_" + std::to_string(k.second), v);
    for (const auto& [k, v] : sections) put("section/" + k, v);
    for (const auto& [k, v] : essential) put("psi/" + k, v);
    for (const auto& [k, v] : essential_symbolic) put("e/" + k, PiPoly(v));
    return out;
}

bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.flatten() == b.flatten(); }

void SurfaceData::add_fiber(FiberKind k, int d_p)
{
    fibers.push_back({"p" + std::to_string(fibers.size()), LocalModel{k, d_p, {0.0, 1.0}}});
}

bool operator==(const SurfaceData& a, const SurfaceData& b)
{
    if (a.genus != b.genus || a.chi != b.chi || a.jacobian_degree != b.jacobian_degree ||
        a.sections != b.sections || a.fibers.size() != b.fibers.size())
        return false;
    for (std::size_t i = 0; i < a.fibers.size(); ++i) {
        const auto& x = a.fibers[i];
        const auto& y = b.fibers[i];
        if (x.id != y.id || x.model.kind != y.model.kind || x.model.d_p != y.model.d_p ||
            x.model.omega0 != y.model.omega0)
            return false;
    }
    return true;
}

std::vector<Rat> compute_Np(FiberKind k)
{
    const IntSymMatrix r = intersection_matrix(k);
    if (r.size() == 0) return {};
    return solve_symmetric(r, eta_intersection_vector(k));
}

DivisorClass trivial_class_T(int d, int chi)
{
    if (d < 1) throw DomainError("jacobian degree must be >= 1");
    // ([eta].[s], [eta].[F]) times the inverse Gram matrix of ([s], [F]).
    const IntSymMatrix gram{{-chi, 1}, {1, 0}};
    const RatMatrix inv = mat_inverse(gram);
    const PiLinear eta_s(Rat(0), make_rat(d, 3));
    const PiLinear eta_f(Rat(1));
    DivisorClass t;
    t.s = eta_s * inv[0][0] + eta_f * inv[1][0];
    t.F = eta_s * inv[0][1] + eta_f * inv[1][1];
    return t;
}

DivisorClass canonical_class(int g, int chi)
{
    DivisorClass k;
    k.F = PiLinear(Rat(2 * g - 2 + chi));
    return k;
}

DivisorClass shioda_image(const SectionData& sec, int chi)
{
    DivisorClass c;
    c.sections[sec.name] = PiLinear(Rat(1));
    c.s = PiLinear(Rat(-1));
    c.F = PiLinear(Rat(-(sec.dot_zero + chi)));
    if (c.F.is_zero()) c.F = PiLinear();
    return c;
}

Rat shioda_pairing(const SectionData& si, const SectionData& sj, int chi)
{
    if (!si.in_mw0 || !sj.in_mw0)
        throw NotInMW0("pairing formula holds only on MW^0 (" + (si.in_mw0 ? sj.name : si.name) + ")");
    if (si.name == sj.name) return Rat(-(2 * chi + 2 * si.dot_zero));
    long long ij = 0;
    if (auto it = si.dot_sections.find(sj.name); it != si.dot_sections.end())
        ij = it->second;
    else if (auto jt = sj.dot_sections.find(si.name); jt != sj.dot_sections.end())
        ij = jt->second;
    return Rat(-(chi + si.dot_zero + sj.dot_zero - ij));
}

namespace {

DivisorClass n_sum(const SurfaceData& s)
{
    DivisorClass out;
    for (const auto& f : s.fibers) {
        const auto np = compute_Np(f.model.kind);
        for (std::size_t i = 0; i < np.size(); ++i)
            if (np[i] != 0) out.components[{f.id, int(i + 1)}] = PiLinear(np[i]);
    }
    return out;
}

DivisorClass essential_part(const SurfaceData& s, const std::optional<EssentialInputs>& inputs)
{
    DivisorClass e;
    if (s.sections.empty()) return e;
    if (!inputs) {
        for (const auto& sec : s.sections) e.essential_symbolic[sec.name] = Rat(1);
        return e;
    }
    // E_X = sum c_j psi(s_j) with sum_j c_j psi_i.psi_j = [eta_X].psi_i.
    const std::size_t n = s.sections.size();
    IntSymMatrix p(n);
    std::vector<Rat> rhs_rat(n), rhs_pi(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j)
            p.set(i, j, boost::multiprecision::numerator(shioda_pairing(s.sections[i], s.sections[j], s.chi)));
        auto it = inputs->find(s.sections[i].name);
        if (it == inputs->end()) throw DomainError("missing essential input for " + s.sections[i].name);
        rhs_rat[i] = it->second.rat;
        rhs_pi[i] = it->second.pi;
    }
    const auto cr = solve_symmetric(p, rhs_rat);
    const auto cp = solve_symmetric(p, rhs_pi);
    for (std::size_t i = 0; i < n; ++i) {
        PiLinear c(cr[i], cp[i]);
        if (!c.is_zero()) e.essential[s.sections[i].name] = c;
    }
    return e;
}

} // namespace

DivisorClass assemble_eta_class(const SurfaceData& s, const std::optional<EssentialInputs>& inputs)
{
    return trivial_class_T(s.jacobian_degree, s.chi) + n_sum(s) + essential_part(s, inputs);
}

DivisorClass eta_epsilon_class(const SurfaceData& s, const Rat& eps,
                               const std::optional<EssentialInputs>& inputs)
{
    if (eps <= 0) throw NonpositiveEpsilon("epsilon must be positive, got " + to_string(eps));
    DivisorClass inner;
    inner.s = PiLinear(Rat(1));
    inner.F = PiLinear(Rat(s.chi));
    inner += n_sum(s);
    inner += essential_part(s, inputs);
    inner *= eps;
    DivisorClass out;
    out.F = PiLinear(Rat(0), make_rat(s.jacobian_degree, 3));
    return out + inner;
}

DivisorClass class_D_X(const SurfaceData& s, const std::optional<EssentialInputs>& inputs)
{
    DivisorClass d;
    d.s = PiLinear(Rat(1));
    return d + n_sum(s) + essential_part(s, inputs);
}

bool series_identity_holds(const SurfaceData& s, const Rat& eps)
{
    const Rat k(2 * s.genus - 2 + s.chi);
    const PiLinear denom(eps * s.chi, make_rat(s.jacobian_degree, 3));
    const auto lhs = eta_epsilon_class(s, eps).flatten(PiPoly(k));
    auto rhs = canonical_class(s.genus, s.chi).flatten(PiPoly(denom));
    for (const auto& [key, v] : class_D_X(s).flatten(PiPoly(eps * k))) {
        PiPoly sum = rhs[key] + v;
        if (sum.is_zero())
            rhs.erase(key);
        else
            rhs[key] = sum;
    }
    for (auto it = rhs.begin(); it != rhs.end();)
        it = it->second.is_zero() ? rhs.erase(it) : std::next(it);
    return lhs == rhs;
}

} // namespace klab
