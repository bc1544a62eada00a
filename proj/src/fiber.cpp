#include "klab/fiber.hpp"
#include "klab/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace klab {

FiberKind FiberKind::I(int b)
{
    if (b < 1) throw DomainError("I_b requires b >= 1");
    return {FiberTag::I, b};
}

FiberKind FiberKind::IStar(int b)
{
    if (b < 0) throw DomainError("I*_b requires b >= 0");
    return {FiberTag::IStar, b};
}

bool FiberKind::is_pole() const
{
    return tag == FiberTag::I || (tag == FiberTag::IStar && b >= 1);
}

std::string to_string(FiberKind k)
{
    switch (k.tag) {
    case FiberTag::Regular: return "regular";
    case FiberTag::I: return "I_" + std::to_string(k.b);
    case FiberTag::IStar: return "I*_" + std::to_string(k.b);
    case FiberTag::II: return "II";
    case FiberTag::IIStar: return "II*";
    case FiberTag::III: return "III";
    case FiberTag::IIIStar: return "III*";
    case FiberTag::IV: return "IV";
    case FiberTag::IVStar: return "IV*";
    }
    return "?";
}

FiberKind parse_fiber_kind(std::string_view s)
{
    if (s == "regular") return FiberKind::regular();
    if (s == "II") return FiberKind::II();
    if (s == "II*") return FiberKind::IIStar();
    if (s == "III") return FiberKind::III();
    if (s == "III*") return FiberKind::IIIStar();
    if (s == "IV") return FiberKind::IV();
    if (s == "IV*") return FiberKind::IVStar();
    auto number = [&](std::string_view t) {
        if (t.empty() || t.size() > 6) throw DomainError("bad fiber kind '" + std::string(s) + "'");
        int v = 0;
        for (char ch : t) {
            if (ch < '0' || ch > '9') throw DomainError("bad fiber kind '" + std::string(s) + "'");
            v = v * 10 + (ch - '0');
        }
        return v;
    };
    if (s.starts_with("I*_")) return FiberKind::IStar(number(s.substr(3)));
    if (s.starts_with("I_")) return FiberKind::I(number(s.substr(2)));
    throw DomainError("unknown fiber kind '" + std::string(s) + "'");
}

std::vector<FiberKind> all_kinds(int max_b)
{
    std::vector<FiberKind> out{FiberKind::regular(), FiberKind::IStar(0), FiberKind::II(),
                               FiberKind::IIStar(), FiberKind::III(), FiberKind::IIIStar(),
                               FiberKind::IV(), FiberKind::IVStar()};
    for (int b = 1; b <= max_b; ++b) {
        out.push_back(FiberKind::I(b));
        out.push_back(FiberKind::IStar(b));
    }
    return out;
}

// ---- SL2(Z) ---------------------------------------------------------------

SL2Z operator*(const SL2Z& x, const SL2Z& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

SL2Z inverse(const SL2Z& x) { return {x.d, -x.b, -x.c, x.a}; }

cd mobius(const SL2Z& g, cd w)
{
    return (double(g.a) * w + double(g.b)) / (double(g.c) * w + double(g.d));
}

FiberKind classify_monodromy(const SL2Z& m)
{
    if (m.det() != 1) throw NotSL2Z("determinant is " + std::to_string(m.det()));
    const long long t = m.trace();
    auto g4 = [](long long p, long long q, long long r, long long s) {
        return std::gcd(std::gcd(std::llabs(p), std::llabs(q)), std::gcd(std::llabs(r), std::llabs(s)));
    };
    // Parabolic: A -+ I has rank one, its single invariant factor is the gcd of its entries.
    if (t == 2) {
        if (m.b == 0 && m.c == 0) return FiberKind::regular();
        return FiberKind::I(int(g4(m.a - 1, m.b, m.c, m.d - 1)));
    }
    if (t == -2) {
        if (m.b == 0 && m.c == 0) return FiberKind::IStar(0);
        return FiberKind::IStar(int(g4(m.a + 1, m.b, m.c, m.d + 1)));
    }
    if (t > 2 || t < -2)
        throw NotKodaira("hyperbolic monodromy (trace " + std::to_string(t) + ") has no Kodaira type");
    // Elliptic, so c != 0. At the fixed point tau0 in H+,
    // c*tau0 + d = (t + i*sgn(c)*sqrt(4 - t^2)) / 2 and the derivative there is
    // (c*tau0 + d)^-2: the rotation sense is fixed by sgn(c) and is a conjugacy invariant.
    const bool positive_rotation = m.c < 0;
    switch (t) {
    case 1: return positive_rotation ? FiberKind::II() : FiberKind::IIStar();
    case -1: return positive_rotation ? FiberKind::IV() : FiberKind::IVStar();
    default: return positive_rotation ? FiberKind::III() : FiberKind::IIIStar();
    }
}

SL2Z monodromy_representative(FiberKind k)
{
    switch (k.tag) {
    case FiberTag::Regular: return {1, 0, 0, 1};
    case FiberTag::I: return {1, k.b, 0, 1};
    case FiberTag::IStar: return {-1, -k.b, 0, -1};
    case FiberTag::II: return {1, 1, -1, 0};
    case FiberTag::IIStar: return {0, -1, 1, 1};
    case FiberTag::III: return {0, 1, -1, 0};
    case FiberTag::IIIStar: return {0, -1, 1, 0};
    case FiberTag::IV: return {0, 1, -1, -1};
    case FiberTag::IVStar: return {-1, -1, 1, 0};
    }
    return {};
}

// ---- constants ------------------------------------------------------------

FiberConstants fiber_constants(FiberKind k)
{
    FiberConstants c;
    auto cong = [](int mod, int res) { return Congruence{mod, {res}, false}; };
    switch (k.tag) {
    case FiberTag::Regular:
        c = {0, 1, 1, 0, cong(1, 0), {1}};
        break;
    case FiberTag::I:
        c = {0, std::nullopt, std::nullopt, k.b, Congruence{1, {0}, true}, std::vector<int>(k.b, 1)};
        break;
    case FiberTag::IStar:
        if (k.b == 0) {
            c = {make_rat(1, 2), 1, 2, 6, cong(1, 0), {1, 1, 1, 1, 2}};
        } else {
            std::vector<int> mult{1, 1, 1, 1};
            mult.insert(mult.end(), k.b + 1, 2);
            c = {make_rat(1, 2), std::nullopt, std::nullopt, k.b + 6, Congruence{1, {0}, true}, mult};
        }
        break;
    case FiberTag::II: c = {make_rat(1, 6), 3, 6, 2, cong(3, 1), {1}}; break;
    case FiberTag::IIStar: c = {make_rat(5, 6), 3, 6, 10, cong(3, 2), {1, 2, 3, 4, 5, 6, 4, 3, 2}}; break;
    case FiberTag::III: c = {make_rat(1, 4), 2, 4, 3, cong(2, 1), {1, 1}}; break;
    case FiberTag::IIIStar: c = {make_rat(3, 4), 2, 4, 9, cong(2, 1), {1, 2, 3, 4, 3, 2, 2, 1}}; break;
    case FiberTag::IV: c = {make_rat(1, 3), 3, 3, 4, cong(3, 2), {1, 1, 1}}; break;
    case FiberTag::IVStar: c = {make_rat(2, 3), 3, 3, 8, cong(3, 1), {1, 2, 3, 2, 2, 1, 1}}; break;
    }
    return c;
}

namespace {

IntSymMatrix from_edges(std::size_t n, std::initializer_list<std::pair<int, int>> edges)
{
    IntSymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, -2);
    for (auto [p, q] : edges) m.set(p - 1, q - 1, 1);
    return m;
}

} // namespace

IntSymMatrix intersection_matrix(FiberKind k)
{
    switch (k.tag) {
    case FiberTag::Regular:
    case FiberTag::II: return IntSymMatrix(0);
    case FiberTag::I: {
        const std::size_t n = std::size_t(k.b - 1);
        IntSymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m.set(i, i, -2);
            if (i + 1 < n) m.set(i, i + 1, 1);
        }
        return m;
    }
    case FiberTag::IStar: {
        if (k.b == 0) return from_edges(4, {{1, 4}, {2, 4}, {3, 4}});
        // Theta_1..3 are tips, Theta_4..Theta_{4+b} the chain.
        const std::size_t n = std::size_t(k.b + 4);
        IntSymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, -2);
        for (std::size_t i = 3; i + 1 < n; ++i) m.set(i, i + 1, 1);
        m.set(0, 3, 1);
        m.set(1, n - 1, 1);
        m.set(2, n - 1, 1);
        return m;
    }
    case FiberTag::III: return IntSymMatrix{{-2}};
    case FiberTag::IIIStar: return from_edges(7, {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {6, 7}});
    case FiberTag::IIStar: return from_edges(8, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {5, 7}, {6, 8}});
    case FiberTag::IV: return IntSymMatrix{{-2, 1}, {1, -2}};
    case FiberTag::IVStar: return from_edges(6, {{1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 6}});
    }
    return {};
}

std::vector<Rat> eta_intersection_vector(FiberKind k)
{
    const Rat z(0);
    switch (k.tag) {
    case FiberTag::Regular:
    case FiberTag::II: return {};
    case FiberTag::I: return std::vector<Rat>(std::size_t(k.b - 1), make_rat(1, k.b));
    case FiberTag::IStar: {
        if (k.b == 0) return {z, z, z, make_rat(1, 2)};
        std::vector<Rat> v{z, z, z, make_rat(1, 4 * k.b)};
        v.insert(v.end(), std::size_t(k.b - 1), make_rat(1, 2 * k.b));
        v.push_back(make_rat(1, 4 * k.b));
        return v;
    }
    case FiberTag::III: return {make_rat(1, 2)};
    case FiberTag::IIIStar: return {z, z, make_rat(1, 4), z, z, z, z};
    case FiberTag::IIStar: return {z, z, z, z, make_rat(1, 6), z, z, z};
    case FiberTag::IV: return {make_rat(1, 3), make_rat(1, 3)};
    case FiberTag::IVStar: return {z, make_rat(1, 3), z, z, z, z};
    }
    return {};
}

std::vector<std::string> component_labels(FiberKind k)
{
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= intersection_matrix(k).size(); ++i)
        out.push_back("Theta_" + std::to_string(i));
    return out;
}

std::vector<std::pair<std::string, Rat>> extension_exponents(FiberKind k)
{
    const Rat h = make_rat(1, 2), t = make_rat(1, 3), q = make_rat(1, 4), s = make_rat(1, 6),
              tt = make_rat(2, 3);
    switch (k.tag) {
    case FiberTag::IStar:
        if (k.b != 0) break;
        return {{"Theta_1", h}, {"Theta_2", h}, {"Theta_3", h}, {"Theta_4", h}};
    case FiberTag::IVStar:
        return {{"Theta_01", t}, {"Theta_02", t}, {"Theta_11", t},
                {"Theta_12", t}, {"Theta_21", t}, {"Theta_22", t}};
    case FiberTag::IIIStar:
        return {{"Theta_01", q}, {"Theta_02", h}, {"Theta_03", h}, {"Theta_11", q},
                {"Theta_12", h}, {"Theta_13", h}, {"Theta_2", h}};
    case FiberTag::IIStar:
        return {{"Theta_1", s}, {"Theta_2", t}, {"Theta_3", h}, {"Theta_4", tt},
                {"Theta_5", tt}, {"Theta_6", t}, {"Theta_7", tt}, {"Theta_8", h}};
    case FiberTag::IV: return {{"Theta_1", t}, {"Theta_2", t}, {"Theta_3", t}};
    case FiberTag::III: return {{"Theta_0", q}, {"Theta_1", q}, {"Theta_2", h}};
    case FiberTag::II: return {{"Theta_1", s}, {"Theta_2", t}, {"Theta_3", h}};
    default: break;
    }
    throw NoExponentData(to_string(k) + " extends smoothly or with a double-log pole, no C^alpha data");
}

// ---- local models ---------------------------------------------------------

namespace {

const cd kEta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

cd rotated_period(cd s)
{
    if (std::abs(1.0 - s) < 1e-14) throw OutOfDomain("local period pole");
    return (kEta - kEta * kEta * s) / (1.0 - s);
}

} // namespace

cd local_period(const LocalModel& m, cd tau)
{
    if (m.d_p < 1) throw OutOfDomain("d_p must be positive");
    const int d = m.d_p;
    cd w;
    if (m.kind.is_pole()) {
        if (tau.imag() <= 0) throw OutOfDomain("pole models take zeta in H+");
        w = double(d) * tau;
    } else {
        if (std::abs(tau) >= 1.0) throw OutOfDomain("|tau| must be < 1");
        switch (m.kind.tag) {
        case FiberTag::Regular: w = std::pow(tau, d) + m.omega0; break;
        case FiberTag::IStar: w = std::pow(tau, 2 * d) + m.omega0; break;
        case FiberTag::II:
        case FiberTag::IIStar: w = rotated_period(std::pow(tau, 2 * d)); break;
        case FiberTag::IV:
        case FiberTag::IVStar: w = rotated_period(std::pow(tau, d)); break;
        case FiberTag::III:
        case FiberTag::IIIStar: {
            const cd s = std::pow(tau, 2 * d);
            if (std::abs(1.0 - s) < 1e-14) throw OutOfDomain("local period pole");
            w = cd(0, 1) * (1.0 + s) / (1.0 - s);
            break;
        }
        default: break;
        }
    }
    if (!(w.imag() > 0)) throw OutOfDomain("local period left H+");
    return w;
}

cd local_rotation(FiberKind k)
{
    const auto h = fiber_constants(k).h;
    if (!h) throw OutOfDomain(to_string(k) + " has no finite cyclic action");
    return std::polar(1.0, 2.0 * std::numbers::pi / *h);
}

FiberPoint local_action(const LocalModel& m, int k, FiberPoint pt)
{
    if (k < 0) throw OutOfDomain("negative power");
    const cd rot = local_rotation(m.kind);
    for (int step = 0; step < k; ++step) {
        const cd w = local_period(m, pt.tau);
        cd z = pt.z;
        switch (m.kind.tag) {
        case FiberTag::Regular: break;
        case FiberTag::IStar: z = -z; break;
        case FiberTag::II: z = -z / w; break;
        case FiberTag::IIStar: z = z / (w + 1.0); break;
        case FiberTag::IV: z = -z / (w + 1.0); break;
        case FiberTag::IVStar: z = z / w; break;
        case FiberTag::III: z = -z / w; break;
        case FiberTag::IIIStar: z = z / w; break;
        default: break;
        }
        pt = {rot * pt.tau, z};
    }
    return pt;
}

double lattice_residual(cd dz, cd omega)
{
    const double n = dz.imag() / omega.imag();
    const double mm = dz.real() - n * omega.real();
    return std::abs(dz - std::round(mm) - std::round(n) * omega);
}

OrderCheck validate_order(const LocalModel& m)
{
    const auto c = fiber_constants(m.kind).congruence;
    const std::string name = to_string(m.kind);
    if (m.d_p < 1) return {false, name + " requires d_p >= 1"};
    if (c.equals_b) {
        if (m.d_p != m.kind.b)
            return {false, name + " requires d_p = " + std::to_string(m.kind.b) + " (pole order)"};
        return {};
    }
    const int r = m.d_p % c.modulus;
    for (int res : c.residues)
        if (r == res) return {};
    std::string want = c.modulus == 2 ? "d_p odd"
                                      : "d_p ≡ " + std::to_string(c.residues.front()) + " mod " +
                                            std::to_string(c.modulus);
    return {false, name + " requires " + want};
}

} // namespace klab
