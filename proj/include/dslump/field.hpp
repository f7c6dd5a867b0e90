#ifndef DSLUMP_FIELD_HPP
#define DSLUMP_FIELD_HPP

#include <complex>
#include <vector>

#include "dslump/grid.hpp"

namespace dslump {

using cplx = std::complex<double>;

struct ComplexField2D {
    SpectralGrid grid;
    std::vector<cplx> v;

    ComplexField2D() = default;
    explicit ComplexField2D(const SpectralGrid& g) : grid(g), v(g.size()) {}
    ComplexField2D(const SpectralGrid& g, std::vector<cplx> data);

    cplx& operator()(int ix, int iz) { return v[grid.index(ix, iz)]; }
    const cplx& operator()(int ix, int iz) const { return v[grid.index(ix, iz)]; }
};

struct RealField2D {
    SpectralGrid grid;
    std::vector<double> v;

    RealField2D() = default;
    explicit RealField2D(const SpectralGrid& g) : grid(g), v(g.size()) {}
    RealField2D(const SpectralGrid& g, std::vector<double> data);

    double& operator()(int ix, int iz) { return v[grid.index(ix, iz)]; }
    const double& operator()(int ix, int iz) const { return v[grid.index(ix, iz)]; }
};

ComplexField2D to_complex(const RealField2D& f);
RealField2D real_part(const ComplexField2D& f);
ComplexField2D conj(const ComplexField2D& f);

// L2 inner product Re sum u conj(v) * cell; the pairing under which all
// gradients in this library are taken.
double inner_real(const ComplexField2D& u, const ComplexField2D& v);
double inner_real(const RealField2D& u, const RealField2D& v);

double l2_norm(const ComplexField2D& f);
double l2_norm(const RealField2D& f);
double sup_norm(const ComplexField2D& f);
double sup_norm(const RealField2D& f);

// Sobolev norm via the spectral weight (1+|k|^2)^s.
double hs_norm(const ComplexField2D& f, double s);
double hs_norm(const RealField2D& f, double s);
inline double h1_norm(const ComplexField2D& f) { return hs_norm(f, 1.0); }
inline double h1_norm(const RealField2D& f) { return hs_norm(f, 1.0); }
inline double h3_norm(const RealField2D& f) { return hs_norm(f, 3.0); }

// Scaled norm with weight 1 + eps^-2((|k1|-omega)^2 + k2^2).
double scaled_norm(const RealField2D& f, double eps, double omega);
double scaled_norm(const ComplexField2D& f, double eps, double omega);

// L1 norm of the continuum Fourier transform (symmetric convention).
double spectral_l1_norm(const RealField2D& f);

// Circular shift by whole cells: result(ix, iz) = f(ix - sx, iz - sz).
ComplexField2D shift(const ComplexField2D& f, int sx, int sz);
RealField2D shift(const RealField2D& f, int sx, int sz);

}  // namespace dslump

#endif
