#ifndef DSLUMP_FFT_HPP
#define DSLUMP_FFT_HPP

#include <vector>

#include "dslump/field.hpp"

namespace dslump {

// Discrete transforms in the unnormalised FFTW convention:
//   fft(u)[m]  = sum_j u_j exp(-i k_m . x_j)
//   ifft(U)[j] = (1/(nx nz)) sum_m U_m exp(+i k_m . x_j)
// so ifft(fft(u)) == u. The continuum transform in the symmetric convention
// used throughout (F[u](k) = (2pi)^-1 \int u e^{-ik.x}) is recovered as
// F[u](k_m) = (cell/2pi) fft(u)[m], and spectral quadrature carries the
// measure dk1 dk2 = (2pi)^2/(lx lz) per mode. Plans are cached per grid
// behind a mutex; execution is reentrant.
std::vector<cplx> fft(const ComplexField2D& f);
std::vector<cplx> fft(const RealField2D& f);
ComplexField2D ifft(const SpectralGrid& g, const std::vector<cplx>& spec);
// inverse transform of a conjugate-symmetric spectrum; imaginary residue
// is discarded (callers may measure it with spectrum_asymmetry)
RealField2D ifft_real(const SpectralGrid& g, const std::vector<cplx>& spec);

// max |spec[m] - conj(spec[-m])| / max |spec|, the conjugate-symmetry defect
double spectrum_asymmetry(const SpectralGrid& g, const std::vector<cplx>& spec);

// Zero-padding to the doubled grid and the inverse truncation. Both zero the
// coarse Nyquist lines, so on Nyquist-free fields they are exact inverses and
// exact adjoints of each other; all product dealiasing relies on this.
std::vector<cplx> pad_spectrum(const SpectralGrid& g, const std::vector<cplx>& spec);
std::vector<cplx> truncate_spectrum(const SpectralGrid& g, const std::vector<cplx>& fine_spec);

// Samples of the band-limited interpolant on the doubled grid.
ComplexField2D to_fine(const ComplexField2D& f);
RealField2D to_fine(const RealField2D& f);
// Adjoint/projection back to the coarse grid (used by gradients of
// dealiased products).
ComplexField2D project_coarse(const SpectralGrid& g, const ComplexField2D& fine);
RealField2D project_coarse(const SpectralGrid& g, const RealField2D& fine);

// Spectral derivative (ik1)^order or (ik2)^order; order 1 or 2. Odd orders
// zero the Nyquist mode to preserve realness.
ComplexField2D derivative(const ComplexField2D& f, int axis, int order);
RealField2D derivative(const RealField2D& f, int axis, int order);

}  // namespace dslump

#endif
