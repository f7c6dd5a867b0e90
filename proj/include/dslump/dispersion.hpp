#ifndef DSLUMP_DISPERSION_HPP
#define DSLUMP_DISPERSION_HPP

#include <array>

namespace dslump {

/// f(s) = s coth s together with its first two derivatives.
struct KernelF {
    double f;
    double fp;
    double fpp;
};

/// Linear dispersion data for Bond number beta in (0, 1/3):
/// omega minimises c^2(s) = (1 + beta s^2)/f(s), lambda_crit is the minimum.
struct DispersionParams {
    double beta = 0.0;
    double omega = 0.0;
    double lambda_crit = 0.0;
};

/// Coefficients of the Davey-Stewartson functional T0 = Q - S.
struct DSCoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double A_omega = 0.0;
    double B_omega = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double g_2omega = 0.0;
    DispersionParams params;
};

// Total function of s; uses a power series below |s| = 0.5 to avoid the
// cancellation in coth near 0, and the asymptote f ~ |s| for large |s|.
KernelF kernel_f(double s);

// Finds the unique positive root of d/ds[(1+beta s^2)/f(s)] = 0 by a scan
// over a log-spaced grid followed by bisection and Newton polishing.
// Throws DomainError for beta outside (0, 1/3), ConvergenceError if the
// bracket scan fails.
DispersionParams solve_dispersion(double beta);

// g(s) = 1 + beta s^2 - lambda f(s); nonnegative, zero exactly at s = +-omega.
double symbol_g(double s, const DispersionParams& p);
double symbol_g_deriv(double s, const DispersionParams& p);

// gtilde(k) = 1 + beta|k|^2 - lambda (k1^2/|k|^2) f(|k|); the direction factor
// k1^2/|k|^2 is taken as 0 at k = 0 so the zero mode is annihilated.
double symbol_gtilde(double k1, double k2, const DispersionParams& p);

// Second-order Taylor polynomial of gtilde at (omega, 0), extended evenly in
// k1 so that it is invariant under k -> -k.
double symbol_gtilde2(double k1, double k2, const DispersionParams& p);

// Analytic second partials of gtilde at (omega, 0).
double d2k1_gtilde(const DispersionParams& p);
double d2k2_gtilde(const DispersionParams& p);

// Assembles all DS coefficients. a2 comes from Richardson-extrapolated
// central differences of gtilde in k2. Throws ValidationError if C1 or C2
// fails to be positive.
DSCoefficients ds_coefficients(const DispersionParams& p);

}  // namespace dslump

#endif
