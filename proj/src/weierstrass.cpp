#include "klab/weierstrass.hpp"
#include "klab/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace klab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kahan-compensated complex accumulator.
struct KahanSum {
    cd sum{0.0}, comp{0.0};
    void add(cd x)
    {
        const cd y = x - comp;
        const cd t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void require_terms(int N)
{
    if (N < 8) throw DomainError("series need at least 8 terms");
}

void guard_nome(cd tau)
{
    if (!(std::abs(tau) < 0.9)) throw ConvergenceGuard("|tau| must be < 0.9");
}

// Geometric-ratio bound for sum_{n>N} c(n) r^n / (1 - r^n), with c(n+1)/c(n) decreasing.
template <class C>
double lambert_tail(const C& c, double r, int N)
{
    if (r == 0.0) return 0.0;
    const double first = c(N + 1) * std::pow(r, N + 1) / (1.0 - std::pow(r, N + 1));
    const double rho = c(N + 2) / c(N + 1) * r;
    return rho < 1.0 ? first / (1.0 - rho) : kInf;
}

} // namespace

cd j_normalized(cd tau, int N)
{
    require_terms(N);
    if (!(tau.imag() > 0.05)) throw ConvergenceGuard("Im tau must exceed 0.05");
    const cd q = std::exp(cd(0.0, 2.0 * std::numbers::pi) * tau);
    KahanSum e4;
    e4.add(1.0);
    cd delta = q, qn = 1.0;
    for (int n = 1; n <= N; ++n) {
        qn *= q;
        e4.add(240.0 * double(n) * n * n * qn / (1.0 - qn));
        delta *= std::pow(1.0 - qn, 24);
    }
    return std::pow(e4.sum, 3) / delta / 1728.0;
}

EisensteinG eisenstein_g(cd tau, int N)
{
    require_terms(N);
    guard_nome(tau);
    KahanSum g2, g3;
    cd tn = 1.0;
    for (int n = 1; n <= N; ++n) {
        tn *= tau;
        const double n3 = double(n) * n * n;
        const cd lam = tn / (1.0 - tn);
        g2.add(20.0 * n3 * lam);
        g3.add((7.0 * n3 * n * n + 5.0 * n3) * lam / 3.0);
    }
    const double r = std::abs(tau);
    auto c2 = [](int n) { return 20.0 * double(n) * n * n; };
    auto c3 = [](int n) {
        const double n3 = double(n) * n * n;
        return (7.0 * n3 * n * n + 5.0 * n3) / 3.0;
    };
    return {{g2.sum, lambert_tail(c2, r, N)}, {g3.sum, lambert_tail(c3, r, N)}};
}

KodairaXY kodaira_xy(cd tau, cd w, int N)
{
    require_terms(N);
    guard_nome(tau);
    if (w == 0.0) throw DomainError("w must be nonzero");
    auto pole_check = [](cd one_minus) {
        if (std::abs(one_minus) < 1e-12) throw PoleHit("w meets tau^Z");
    };
    KahanSum x, y;
    auto add_u = [&](cd u) { // u = w tau^n
        pole_check(1.0 - u);
        const cd d = 1.0 - u;
        x.add(u / (d * d));
        y.add(u * (1.0 + u) / (d * d * d));
    };
    auto add_v = [&](cd v) { // v = 1/u, used for n < 0
        pole_check(1.0 - v);
        const cd d = 1.0 - v;
        x.add(v / (d * d));
        y.add(-v * (1.0 + v) / (d * d * d));
    };
    add_u(w);
    if (tau == 0.0) return {{x.sum, 0.0}, {y.sum, 0.0}};

    KahanSum shift;
    cd tn = 1.0;
    for (int n = 1; n <= N; ++n) {
        tn *= tau;
        add_u(w * tn);
        add_v(tn / w);
        const cd d = 1.0 - tn;
        shift.add(-2.0 * tn / (d * d));
    }
    x.add(shift.sum);

    const double r = std::abs(tau), rN = std::pow(r, N + 1);
    double tx = 2.0 * rN / ((1.0 - r) * (1.0 - rN) * (1.0 - rN)), ty = 0.0;
    for (double m : {std::abs(w) * rN, rN / std::abs(w)}) {
        if (m >= 1.0) return {{x.sum, kInf}, {y.sum, kInf}};
        tx += m / ((1.0 - r) * (1.0 - m) * (1.0 - m));
        ty += m * (1.0 + m) / ((1.0 - r) * std::pow(1.0 - m, 3));
    }
    return {{x.sum, tx}, {y.sum, ty}};
}

std::string CubicVariant::label() const
{
    return std::string("y^2 - 4x^3 - x^2 ") + (s2 > 0 ? "+" : "-") + " g2*x " + (s3 > 0 ? "+" : "-") +
           " g3";
}

double cubic_residual(cd tau, cd w, int N, CubicVariant v)
{
    const auto xy = kodaira_xy(tau, w, N);
    const auto g = eisenstein_g(tau, N);
    const cd x = xy.x.value, y = xy.y.value;
    return std::abs(y * y - 4.0 * x * x * x - x * x + double(v.s2) * g.g2.value * x +
                    double(v.s3) * g.g3.value);
}

const Calibration& cubic_calibration()
{
    static const Calibration cal = [] {
        std::vector<std::pair<cd, cd>> samples;
        for (int k = 0; k < 20; ++k) {
            const cd tau = std::polar(0.1 * (k + 1) / 20.0, 2.3 * k);
            const cd w = std::polar(0.35 + 0.02 * k, 0.7 + 1.1 * k);
            samples.emplace_back(tau, w);
        }
        Calibration c;
        const CubicVariant order[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        bool chosen = false;
        for (const auto& v : order) {
            double worst = 0.0;
            for (const auto& [tau, w] : samples) worst = std::max(worst, cubic_residual(tau, w, 60, v));
            c.sweep.emplace_back(v, worst);
            if (!chosen && worst < 1e-8) {
                c.chosen = v;
                chosen = true;
            }
        }
        if (!chosen) throw ConvergenceGuard("no cubic sign variant passed calibration");
        c.printed_form_valid = c.chosen.s2 == 1 && c.chosen.s3 == 1;
        return c;
    }();
    return cal;
}

double weierstrass_residual(cd tau, cd w, int N)
{
    return cubic_residual(tau, w, N, cubic_calibration().chosen);
}

double nodal_fiber_check(cd w)
{
    const auto xy = kodaira_xy(0.0, w, 8);
    const cd x = xy.x.value, y = xy.y.value;
    return std::abs(y * y - 4.0 * x * x * x - x * x);
}

double double_log_potential(int b, cd tau, cd w)
{
    if (b < 1) throw DomainError("b must be >= 1");
    const double r = std::abs(tau);
    if (!(r > 0.0 && r < 1.0)) throw DomainError("need 0 < |tau| < 1");
    if (w == 0.0) throw DomainError("w must be nonzero");
    const double L = std::log(r), lw = std::log(std::abs(w));
    return -std::log(L * L) - lw * lw / (2.0 * std::numbers::pi * b * L);
}

} // namespace klab
