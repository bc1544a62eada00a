#pragma once

#include "klab/exact.hpp"
#include "klab/fiber.hpp"

#include <optional>

namespace klab {

struct SurfaceScalars {
    int g = 1;
    int chi = 1;
    int d = 1;
};

/// Open interval (0, upper).
struct TInterval {
    Rat upper;
    bool contains(const PiRatio& t) const;
};

TInterval t_interval(const SurfaceScalars& s);
/// (2g-2+chi) / (pi d/3 + chi), kept as a ratio.
PiRatio t_zero(const SurfaceScalars& s);

/// q if x == q exactly for some rational q.
std::optional<Rat> as_rational(const PiRatio& x);

struct CurvatureReport {
    PiRatio printed; // -2 pi d / (2g-2+chi(1-t))
    PiRatio derived; // -pi d / (2g-2+chi(1-t)), from curvature -3/delta and fiber volume eps
    Rat ratio;       // printed / derived
};

CurvatureReport scalar_curvature_eta_t(const PiRatio& t, const SurfaceScalars& s);
inline CurvatureReport scalar_curvature_eta_t(const Rat& t, const SurfaceScalars& s)
{
    return scalar_curvature_eta_t(PiRatio{PiPoly(t)}, s);
}

struct FlowState {
    double delta;
    double eps;
};

FlowState krf_step(double delta0, double eps0, double t);
/// t may be +infinity.
double krf_a(double t, double delta0, double eps0, const SurfaceScalars& s);
/// |a(t) [eta_X(delta(t), eps(t))] - K_X - a(t) eps(t) D_X| on the [F] coefficient.
double krf_plug_through_residual(double t, double delta0, double eps0, const SurfaceScalars& s);

/// d_p/mu_p - 1 + delta_p, with d_p/infinity = 0.
Rat twisted_coefficient(FiberKind k, int d_p);

struct LimitMetrics {
    Rat omega_inf;
    Rat omega_wp;
};

LimitMetrics limit_metrics(int d);

} // namespace klab
