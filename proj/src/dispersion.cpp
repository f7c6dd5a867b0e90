#include "dslump/dispersion.hpp"

#include <cmath>
#include <limits>

#include "dslump/errors.hpp"

namespace dslump {

namespace {

// Laurent coefficients of s coth s = sum c_n s^{2n} (2^{2n} B_{2n}/(2n)!).
constexpr std::array<double, 12> kCothSeries = {
    1.0,
    3.333333333333333333e-01,
    -2.222222222222222222e-02,
    2.116402116402116402e-03,
    -2.116402116402116402e-04,
    2.137779915557693335e-05,
    -2.164404280806397209e-06,
    2.192594785187377780e-07,
    -2.221460878997967908e-08,
    2.250784651680899285e-09,
    -2.280515120459218287e-10,
    2.310643259900262410e-11,
};

}  // namespace

KernelF kernel_f(double s) {
    const double a = std::abs(s);
    if (a < 0.5) {
        // even series in s; f' is odd, f'' even
        const double s2 = s * s;
        double f = 0.0, fp = 0.0, fpp = 0.0;
        double pw = 1.0;  // s^{2n-2}
        for (std::size_t n = 0; n < kCothSeries.size(); ++n) {
            const double c = kCothSeries[n];
            const double m = 2.0 * static_cast<double>(n);
            if (n == 0) {
                f += c;
            } else {
                f += c * pw * s2;
                fp += c * m * pw * s;
                fpp += c * m * (m - 1.0) * pw;
                pw *= s2;
            }
        }
        return {f, fp, fpp};
    }
    if (a > 36.0) {
        // coth(a) - 1 < 6e-32: below double resolution
        return {a, s > 0 ? 1.0 : -1.0, 0.0};
    }
    const double sh = std::sinh(s);
    const double ct = std::cosh(s) / sh;
    const double f = s * ct;
    const double fp = ct - s / (sh * sh);
    const double fpp = 2.0 * (f - 1.0) / (sh * sh);
    return {f, fp, fpp};
}

namespace {

// First-order condition for the minimum of c^2(s): 2 b s f = (1 + b s^2) f'.
double foc(double s, double beta) {
    const KernelF k = kernel_f(s);
    return 2.0 * beta * s * k.f - (1.0 + beta * s * s) * k.fp;
}

double foc_deriv(double s, double beta) {
    const KernelF k = kernel_f(s);
    return 2.0 * beta * k.f - (1.0 + beta * s * s) * k.fpp;
}

}  // namespace

DispersionParams solve_dispersion(double beta) {
    if (!(beta > 0.0 && beta < 1.0 / 3.0)) {
        throw DomainError("beta must lie in (0, 1/3), got " + std::to_string(beta));
    }
    // bracket by scanning a log-spaced grid on [1e-4, 50]
    const int nscan = 2000;
    const double slo = 1e-4, shi = 50.0;
    double a = slo, fa = foc(a, beta);
    double b = 0.0, fb = 0.0;
    bool found = false;
    for (int i = 1; i <= nscan; ++i) {
        b = slo * std::pow(shi / slo, static_cast<double>(i) / nscan);
        fb = foc(b, beta);
        if (fa == 0.0) {
            b = a;
            found = true;
            break;
        }
        if ((fa < 0.0) != (fb < 0.0)) {
            found = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (!found) {
        throw ConvergenceError("failed to bracket the dispersion minimum (coding bug)");
    }
    // bisection to narrow the bracket, then Newton inside it
    for (int i = 0; i < 40; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = foc(m, beta);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    double w = 0.5 * (a + b);
    for (int i = 0; i < 60; ++i) {
        const double r = foc(w, beta);
        if (std::abs(r) < 1e-12) break;
        double next = w - r / foc_deriv(w, beta);
        if (!std::isfinite(next) || !(next > a && next < b)) {
            next = 0.5 * (a + b);  // safeguard: fall back to bisection
        }
        const double fn = foc(next, beta);
        if ((fn < 0.0) == (fa < 0.0)) {
            a = next;
            fa = fn;
        } else {
            b = next;
        }
        w = next;
    }
    if (std::abs(foc(w, beta)) >= 1e-12) {
        throw ConvergenceError("dispersion Newton polish stalled (coding bug)");
    }
    DispersionParams p;
    p.beta = beta;
    p.omega = w;
    p.lambda_crit = (1.0 + beta * w * w) / kernel_f(w).f;
    return p;
}

double symbol_g(double s, const DispersionParams& p) {
    return 1.0 + p.beta * s * s - p.lambda_crit * kernel_f(s).f;
}

double symbol_g_deriv(double s, const DispersionParams& p) {
    return 2.0 * p.beta * s - p.lambda_crit * kernel_f(s).fp;
}

double symbol_gtilde(double k1, double k2, const DispersionParams& p) {
    const double r2 = k1 * k1 + k2 * k2;
    if (r2 == 0.0) return 1.0;
    const double r = std::sqrt(r2);
    return 1.0 + p.beta * r2 - p.lambda_crit * (k1 * k1 / r2) * kernel_f(r).f;
}

double d2k1_gtilde(const DispersionParams& p) {
    // along k2 = 0 (k1 > 0) gtilde reduces to g(k1)
    return 2.0 * p.beta - p.lambda_crit * kernel_f(p.omega).fpp;
}

double d2k2_gtilde(const DispersionParams& p) {
    // expansion of gtilde(omega, k2) in k2 about 0
    const KernelF k = kernel_f(p.omega);
    const double w = p.omega;
    return 2.0 * (p.beta + p.lambda_crit * k.f / (w * w) -
                  p.lambda_crit * k.fp / (2.0 * w));
}

double symbol_gtilde2(double k1, double k2, const DispersionParams& p) {
    const double dx = std::abs(k1) - p.omega;
    return 0.5 * d2k1_gtilde(p) * dx * dx + 0.5 * d2k2_gtilde(p) * k2 * k2;
}

DSCoefficients ds_coefficients(const DispersionParams& p) {
    const double w = p.omega;
    const double lam = p.lambda_crit;
    const double fw = kernel_f(w).f;
    const double f2w = kernel_f(2.0 * w).f;

    DSCoefficients c;
    c.params = p;
    c.a1 = d2k1_gtilde(p) / 8.0;
    c.a3 = lam * fw / 4.0;

    // a2 by central differences with one Richardson step (h, h/2)
    const double h = 1e-2 * std::max(1.0, w);
    const double g0 = symbol_gtilde(w, 0.0, p);
    auto d2 = [&](double hh) {
        return (symbol_gtilde(w, hh, p) - 2.0 * g0 + symbol_gtilde(w, -hh, p)) / (hh * hh);
    };
    const double dh = d2(h), dh2 = d2(0.5 * h);
    c.a2 = (4.0 * dh2 - dh) / 3.0 / 8.0;

    c.A_omega = (3.0 * w * w - fw * fw - 2.0 * fw * f2w) / 2.0;
    c.B_omega = w * w - fw * fw;
    c.g_2omega = 1.0 + 4.0 * p.beta * w * w - lam * f2w;
    const double lb2f = lam * c.B_omega - 2.0 * fw;
    c.C1 = lam / 32.0 * lb2f * lb2f;
    c.C2 = lam * lam * c.A_omega * c.A_omega / (16.0 * c.g_2omega) +
           lam * lam * c.B_omega * c.B_omega / 32.0 +
           3.0 * p.beta * w * w * w * w / 64.0 +
           lam * fw / 16.0 * (fw * f2w - 3.0 * w * w);
    if (!(c.C1 > 0.0) || !(c.C2 > 0.0)) {
        throw ValidationError("C1/C2 positivity violated (coding bug)");
    }
    return c;
}

}  // namespace dslump
