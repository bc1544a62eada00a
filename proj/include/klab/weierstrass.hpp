#pragma once

#include <complex>
#include <string>
#include <vector>

namespace klab {

using cd = std::complex<double>;

/// Classical j(tau)/1728 from E4^3/Delta, N terms of each q-series.
cd j_normalized(cd tau, int N = 60);

struct SeriesValue {
    cd value;
    double tail_bound = 0; // rigorous bound on the dropped terms
};

struct EisensteinG {
    SeriesValue g2, g3;
};

/// Kodaira's g2, g3 in the multiplicative variable tau, |tau| < 0.9.
EisensteinG eisenstein_g(cd tau, int N = 60);

struct KodairaXY {
    SeriesValue x, y;
};

/// Bilateral sums truncated at |n| <= N.
KodairaXY kodaira_xy(cd tau, cd w, int N = 60);

/// Sign pattern of F = y^2 - 4x^3 - x^2 + s2*g2*x + s3*g3.
struct CubicVariant {
    int s2 = 1;
    int s3 = 1;
    std::string label() const;
};

double cubic_residual(cd tau, cd w, int N, CubicVariant v);

struct Calibration {
    CubicVariant chosen;
    std::vector<std::pair<CubicVariant, double>> sweep; // worst residual per variant
    bool printed_form_valid = false;
};

/// Runs the four sign variants over a fixed sample set and pins the first one below 1e-8.
const Calibration& cubic_calibration();

double weierstrass_residual(cd tau, cd w, int N = 60);
double nodal_fiber_check(cd w);
double double_log_potential(int b, cd tau, cd w);

} // namespace klab
