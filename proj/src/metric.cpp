#include "klab/metric.hpp"
#include "klab/errors.hpp"

#include <cmath>
#include <numbers>

namespace klab {

namespace {

void require_upper(const SiegelPoint& pt)
{
    if (!(pt.zeta.imag() > 0)) throw DomainError("Im zeta must be positive");
}

// Real coordinates (u, v, x, y).
using Vec4 = std::array<double, 4>;

Vec4 coords(const SiegelPoint& pt) { return {pt.zeta.real(), pt.zeta.imag(), pt.z.real(), pt.z.imag()}; }
SiegelPoint point(const Vec4& c) { return {{c[0], c[1]}, {c[2], c[3]}}; }

template <class F>
double shifted(const F& f, Vec4 c, int i, double di, int j = 0, double dj = 0.0)
{
    c[i] += di;
    c[j] += dj;
    return f(c);
}

// Second-order central second derivatives d_i d_j f.
template <class F>
double d2_order2(const F& f, const Vec4& c, int i, int j, double h)
{
    if (i == j)
        return (shifted(f, c, i, h) - 2.0 * f(c) + shifted(f, c, i, -h)) / (h * h);
    return (shifted(f, c, i, h, j, h) - shifted(f, c, i, h, j, -h) - shifted(f, c, i, -h, j, h) +
            shifted(f, c, i, -h, j, -h)) /
           (4.0 * h * h);
}

// Fourth-order stencils: 5-point for pure, nested 4-point first differences for mixed.
template <class F>
double d2_order4(const F& f, const Vec4& c, int i, int j, double h)
{
    if (i == j)
        return (-shifted(f, c, i, 2 * h) + 16.0 * shifted(f, c, i, h) - 30.0 * f(c) +
                16.0 * shifted(f, c, i, -h) - shifted(f, c, i, -2 * h)) /
               (12.0 * h * h);
    static constexpr double w[4] = {1.0, -8.0, 8.0, -1.0};
    static constexpr double o[4] = {-2.0, -1.0, 1.0, 2.0};
    double acc = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) acc += w[a] * w[b] * shifted(f, c, i, o[a] * h, j, o[b] * h);
    return acc / (144.0 * h * h);
}

// Components of 2 d d-bar f in the (zeta, z) frame.
struct Hessian {
    double h11;
    cd h12;
    double h22;
};

template <class D2>
Hessian complex_hessian(const D2& d2)
{
    return {0.5 * (d2(0, 0) + d2(1, 1)),
            0.5 * cd(d2(0, 2) + d2(1, 3), d2(0, 3) - d2(1, 2)),
            0.5 * (d2(2, 2) + d2(3, 3))};
}

double raw_curvature(const MetricParams& p, const SiegelPoint& pt, double h)
{
    require_upper(pt);
    if (pt.zeta.imag() <= 2 * h) throw DomainError("Im zeta must exceed twice the step");
    auto logdet = [&](const Vec4& c) { return std::log(metric_components(p, point(c)).det()); };
    const Vec4 c = coords(pt);
    const Hessian H = complex_hessian([&](int i, int j) { return d2_order4(logdet, c, i, j, h); });
    const MetricComponents m = metric_components(p, pt);
    // tr(M^{-1} H) for the Hermitian pair M = [[A, B], [conj B, C]], H likewise.
    const double tr = m.C * H.h11 + m.A * H.h22 - 2.0 * std::real(std::conj(m.B) * H.h12);
    return tr / m.det();
}

} // namespace

double potential(const MetricParams& p, const SiegelPoint& pt)
{
    require_upper(pt);
    const double v = pt.zeta.imag(), y = pt.z.imag();
    return -p.delta * std::log(v * v) + p.eps * y * y / v;
}

MetricComponents metric_components(const MetricParams& p, const SiegelPoint& pt)
{
    require_upper(pt);
    const double v = pt.zeta.imag(), y = pt.z.imag();
    return {p.delta / (v * v) + p.eps * y * y / (v * v * v), cd(-p.eps * y / (v * v), 0.0), p.eps / v};
}

MetricComponents metric_components_fd(const MetricParams& p, const SiegelPoint& pt, double h,
                                      bool richardson)
{
    require_upper(pt);
    if (pt.zeta.imag() <= 2 * h) throw DomainError("Im zeta must exceed twice the step");
    auto psi = [&](const Vec4& c) { return potential(p, point(c)); };
    const Vec4 c = coords(pt);
    auto at = [&](double step) {
        const Hessian H = complex_hessian([&](int i, int j) { return d2_order2(psi, c, i, j, step); });
        return MetricComponents{H.h11, H.h12, H.h22};
    };
    if (!richardson) return at(h);
    const MetricComponents a = at(h), b = at(h / 2);
    return {(4.0 * b.A - a.A) / 3.0, (4.0 * b.B - a.B) / 3.0, (4.0 * b.C - a.C) / 3.0};
}

double curvature_normalization()
{
    static const double kappa = -3.0 / raw_curvature({1.0, 1.0}, {{0.0, 1.0}, {0.0, 0.0}}, 1e-3);
    return kappa;
}

double scalar_curvature(const MetricParams& p, const SiegelPoint& pt, double h)
{
    return curvature_normalization() * raw_curvature(p, pt, h);
}

double fiber_volume(const MetricParams& p, cd zeta, int n)
{
    if (!(zeta.imag() > 0)) throw DomainError("Im zeta must be positive");
    if (n < 16) throw DomainError("grid must have n >= 16");
    // z = s + t*zeta, dx^dy = Im(zeta) ds^dt.
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double s = (i + 0.5) / n, t = (j + 0.5) / n;
            sum += metric_components(p, {zeta, s + t * zeta}).C;
        }
    return sum * zeta.imag() / (double(n) * n);
}

GroupElement compose(const GroupElement& g, const GroupElement& h)
{
    const SL2Z& b = h.A;
    return {g.A * h.A, g.n1 * b.a + g.n2 * b.c + h.n1, g.n1 * b.b + g.n2 * b.d + h.n2};
}

SiegelPoint group_action(const GroupElement& g, const SiegelPoint& pt)
{
    const cd j = double(g.A.c) * pt.zeta + double(g.A.d);
    return {mobius(g.A, pt.zeta), (pt.z + double(g.n1) * pt.zeta + double(g.n2)) / j};
}

double invariance_residual(const GroupElement& g, const MetricParams& p,
                           const std::vector<SiegelPoint>& samples, double beta)
{
    if (samples.empty()) throw DomainError("no samples");
    using M2 = std::array<std::array<cd, 2>, 2>;
    auto matrix = [&](const SiegelPoint& q) {
        const MetricComponents m = metric_components(p, q);
        const cd b = m.B + beta;
        return M2{{{cd(m.A), b}, {std::conj(b), cd(m.C)}}};
    };
    double worst = 0.0;
    for (const SiegelPoint& pt : samples) {
        const cd j = double(g.A.c) * pt.zeta + double(g.A.d);
        const M2 J{{{1.0 / (j * j),
                     double(g.n1) / j - double(g.A.c) * (pt.z + double(g.n1) * pt.zeta + double(g.n2)) / (j * j)},
                    {0.0, 1.0 / j}}};
        const M2 mg = matrix(group_action(g, pt));
        const M2 m = matrix(pt);
        double fro = 0.0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                cd acc = 0.0;
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) acc += J[r][k] * mg[k][l] * std::conj(J[c][l]);
                fro += std::norm(acc - m[r][c]);
            }
        worst = std::max(worst, std::sqrt(fro));
    }
    return worst;
}

double hyperbolic_density(cd xi)
{
    if (!(xi.imag() > 0)) throw DomainError("Im xi must be positive");
    return 1.0 / (xi.imag() * xi.imag());
}

double pullback_density(const std::function<cd(cd)>& period, cd xi, double h)
{
    const cd w = period(xi);
    if (!(w.imag() > 0)) throw DomainError("period left H+");
    const cd dw = (period(xi - 2.0 * h) - 8.0 * period(xi - h) + 8.0 * period(xi + h) -
                   period(xi + 2.0 * h)) /
                  (12.0 * h);
    return std::norm(dw) / (w.imag() * w.imag());
}

double ricci_density(const std::function<double(cd)>& rho, cd zeta, double h)
{
    if (zeta.imag() <= 2 * h) throw DomainError("Im zeta must exceed twice the step");
    auto f = [&](const Vec4& c) { return std::log(rho({c[0], c[1]})); };
    const Vec4 c{zeta.real(), zeta.imag(), 0.0, 0.0};
    return -0.5 * (d2_order4(f, c, 0, 0, h) + d2_order4(f, c, 1, 1, h));
}

// ---- local potential constants --------------------------------------------

double local_potential_limit(FiberKind kind, int index, std::optional<double> v0)
{
    if (kind == FiberKind::IStar(0)) {
        if (!v0 || !(*v0 > 0)) throw DomainError("I*_0 constants need v0 > 0");
        if (index < 1 || index > 4) throw BadIndex("I*_0 fixed points are numbered 1..4");
        const double base = -2.0 * std::log(*v0);
        return (index % 2 == 0) ? base + 3.0 / (16.0 * *v0) : base;
    }
    if (kind == FiberKind::IVStar()) {
        if (index < 0 || index > 2) throw BadIndex("IV* fixed points are numbered 0..2");
        const double s3 = std::sqrt(3.0);
        const double base = -std::log(0.75);
        const double extra[3] = {0.0, s3 / 18.0, 2.0 * s3 / 9.0};
        return base + extra[index];
    }
    throw BadIndex("local potential constants exist for I*_0 and IV* only");
}

namespace {

double base_potential(cd omega, cd z)
{
    const double v = omega.imag(), y = z.imag();
    return -2.0 * std::log(v) + y * y / v;
}

} // namespace

double orbit_average(FiberKind kind, int index, double v0, double r, cd a, cd b)
{
    const cd tau = r * a, w = r * b;
    if (kind == FiberKind::IStar(0)) {
        if (index < 1 || index > 4) throw BadIndex("I*_0 fixed points are numbered 1..4");
        const LocalModel m{kind, 1, {0.0, v0}};
        auto centre = [&](cd t) {
            const cd om = local_period(m, t);
            switch (index) {
            case 1: return cd(0.0);
            case 2: return om / 2.0;
            case 3: return cd(0.5);
            default: return (om + 1.0) / 2.0;
            }
        };
        double acc = 0.0;
        for (int k = 0; k < 2; ++k) {
            const double sg = k == 0 ? 1.0 : -1.0;
            const cd t = sg * tau, zi = sg * w;
            acc += base_potential(local_period(m, t), zi + centre(t));
        }
        return acc / 2.0;
    }
    if (kind == FiberKind::IVStar()) {
        if (index < 0 || index > 2) throw BadIndex("IV* fixed points are numbered 0..2");
        const LocalModel m{kind, 1, {0.0, 1.0}};
        const cd e3 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        double acc = 0.0;
        cd t = tau, zi = w;
        for (int k = 0; k < 3; ++k) {
            const cd om = local_period(m, t);
            const cd centre = index == 0 ? cd(0.0)
                              : index == 1 ? om / 3.0 + 2.0 / 3.0
                                           : 2.0 * om / 3.0 + 1.0 / 3.0;
            acc += base_potential(om, zi / (1.0 - t) + centre);
            t *= e3;
            zi /= e3;
        }
        return acc / 3.0;
    }
    throw BadIndex("orbit averages are defined for I*_0 and IV* only");
}

double orbit_average_limit(FiberKind kind, int index, double v0, cd a, cd b)
{
    // Neville table in r with ratio 10, extrapolated to r = 0.
    std::vector<std::vector<double>> T;
    for (int k = 2; k <= 5; ++k) {
        std::vector<double> row{orbit_average(kind, index, v0, std::pow(10.0, -k), a, b)};
        for (std::size_t j = 1; j <= T.size(); ++j) {
            const double f = std::pow(10.0, double(j));
            row.push_back(row[j - 1] + (row[j - 1] - T.back()[j - 1]) / (f - 1.0));
        }
        T.push_back(row);
    }
    return T.back().back();
}

} // namespace klab
