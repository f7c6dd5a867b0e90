#ifndef DSLUMP_DS_CORE_HPP
#define DSLUMP_DS_CORE_HPP

#include <array>

#include "dslump/dispersion.hpp"
#include "dslump/field.hpp"
#include "dslump/fft.hpp"

namespace dslump {

struct EnergyBreakdown {
    double Q = 0.0;
    double S_nonlocal = 0.0;
    double S_local = 0.0;
    double S = 0.0;
    double T0 = 0.0;
    double nehari = 0.0;  // 2Q - 4S
};

struct NehariProjection {
    double lambda0 = 0.0;
    ComplexField2D projected;
    EnergyBreakdown breakdown;  // at the projected point
};

/// Coefficients of Q(z(tau)) and S(z(tau)) along the ray z - tau*dir:
/// Q(tau) = q[0] + q[1] tau + q[2] tau^2, S(tau) = sum s[i] tau^i.
/// T0 at the Nehari projection of z - tau*dir is Q(tau)^2/(4 S(tau)).
struct RayPolynomials {
    std::array<double, 3> q{};
    std::array<double, 5> s{};
    double Q(double tau) const { return q[0] + tau * (q[1] + tau * q[2]); }
    double S(double tau) const {
        return s[0] + tau * (s[1] + tau * (s[2] + tau * (s[3] + tau * s[4])));
    }
    double projected_T0(double tau) const {
        const double qq = Q(tau);
        return qq * qq / (4.0 * S(tau));
    }
};

/// The Davey-Stewartson functional T0 = Q - S on a fixed grid,
///   Q = int a1|z_x|^2 + a2|z_z|^2 + a3|z|^2,
///   S = C1 int m_DS |F[|z|^2]|^2 dk + C2 int |z|^4,
/// with all products dealiased on the doubled grid. The L2 gradient is exact
/// for the discrete functional, so descent and finite-difference checks are
/// consistent to rounding.
class DsCore {
  public:
    DsCore(const SpectralGrid& grid, const DSCoefficients& coeffs);

    const SpectralGrid& grid() const { return grid_; }
    const DSCoefficients& coeffs() const { return coeffs_; }

    EnergyBreakdown energy(const ComplexField2D& zeta) const;
    ComplexField2D gradient(const ComplexField2D& zeta) const;

    // lambda0 = sqrt(Q/(2S)); throws DegenerateRayError when S is at the
    // quadrature floor (the ray never meets the constraint set).
    NehariProjection nehari_project(const ComplexField2D& zeta) const;

    RayPolynomials ray_polynomials(const ComplexField2D& zeta,
                                   const ComplexField2D& dir) const;

  private:
    void check(const ComplexField2D& f) const;

    SpectralGrid grid_;
    SpectralGrid fine_;
    DSCoefficients coeffs_;
    std::vector<double> quad_form_;  // a1 k1^2 + a2 k2^2 + a3 per coarse mode
    std::vector<double> mds_fine_;
};

}  // namespace dslump

#endif
