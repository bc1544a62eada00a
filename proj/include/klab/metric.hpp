#pragma once

#include "klab/fiber.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace klab {

struct SiegelPoint {
    cd zeta; // u + iv, v > 0
    cd z;    // x + iy
};

struct MetricParams {
    double delta = 1.0;
    double eps = 1.0;
};

/// (sqrt(-1)/2)(A dzeta^dzeta_bar + B dzeta^dz_bar + conj(B) dz^dzeta_bar + C dz^dz_bar).
struct MetricComponents {
    double A = 0;
    cd B;
    double C = 0;
    double det() const { return A * C - std::norm(B); }
};

double potential(const MetricParams& p, const SiegelPoint& pt);
MetricComponents metric_components(const MetricParams& p, const SiegelPoint& pt);
/// Second differences of the potential; `richardson` combines steps h and h/2.
MetricComponents metric_components_fd(const MetricParams& p, const SiegelPoint& pt, double h = 1e-4,
                                       bool richardson = false);

/// Normalization constant of the curvature operator, fixed on the base metric.
double curvature_normalization();
double scalar_curvature(const MetricParams& p, const SiegelPoint& pt, double h = 1e-3);
/// Midpoint quadrature of the fiber form over the cell spanned by 1 and zeta.
double fiber_volume(const MetricParams& p, cd zeta, int n = 64);

struct GroupElement {
    SL2Z A;
    long long n1 = 0, n2 = 0;
};

/// g(A,n) g(B,m) = g(AB, nB + m).
GroupElement compose(const GroupElement& g, const GroupElement& h);
SiegelPoint group_action(const GroupElement& g, const SiegelPoint& pt);
/// max over samples of |J_g (M o g) conj(J_g)^T - M|_F; `beta` perturbs B by a constant.
double invariance_residual(const GroupElement& g, const MetricParams& p,
                           const std::vector<SiegelPoint>& samples, double beta = 0.0);

double hyperbolic_density(cd xi);
double pullback_density(const std::function<cd(cd)>& period, cd xi, double h = 1e-4);
/// Coefficient of Ric for the metric (sqrt(-1)/2) rho dzeta^dzeta_bar: -(1/2) Laplacian log rho.
double ricci_density(const std::function<double(cd)>& rho, cd zeta, double h = 1e-3);

/// Constants C_i of the orbit-averaged potential at the fixed points (I*_0: i = 1..4, IV*: i = 0..2).
double local_potential_limit(FiberKind kind, int index, std::optional<double> v0 = std::nullopt);

/// Orbit average of the potential at the point at distance r from fixed point `index`,
/// along direction (a, b) in the (tau, z_i) chart.
double orbit_average(FiberKind kind, int index, double v0, double r, cd a, cd b);
/// Richardson-extrapolated r -> 0 limit of orbit_average over r = 10^-k, k = 2..5.
double orbit_average_limit(FiberKind kind, int index, double v0, cd a, cd b);

} // namespace klab
