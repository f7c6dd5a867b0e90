#include "dslump/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dslump/errors.hpp"
#include "dslump/fft.hpp"

namespace dslump {

ComplexField2D::ComplexField2D(const SpectralGrid& g, std::vector<cplx> data)
    : grid(g), v(std::move(data)) {
    if (v.size() != g.size()) throw ShapeError("complex field size does not match grid");
}

RealField2D::RealField2D(const SpectralGrid& g, std::vector<double> data)
    : grid(g), v(std::move(data)) {
    if (v.size() != g.size()) throw ShapeError("real field size does not match grid");
}

ComplexField2D to_complex(const RealField2D& f) {
    ComplexField2D out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = f.v[i];
    return out;
}

RealField2D real_part(const ComplexField2D& f) {
    RealField2D out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = f.v[i].real();
    return out;
}

ComplexField2D conj(const ComplexField2D& f) {
    ComplexField2D out(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = std::conj(f.v[i]);
    return out;
}

double inner_real(const ComplexField2D& u, const ComplexField2D& v) {
    if (u.grid != v.grid) throw GridMismatchError("inner_real: different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < u.v.size(); ++i) {
        s += u.v[i].real() * v.v[i].real() + u.v[i].imag() * v.v[i].imag();
    }
    return s * u.grid.cell();
}

double inner_real(const RealField2D& u, const RealField2D& v) {
    if (u.grid != v.grid) throw GridMismatchError("inner_real: different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < u.v.size(); ++i) s += u.v[i] * v.v[i];
    return s * u.grid.cell();
}

double l2_norm(const ComplexField2D& f) {
    double s = 0.0;
    for (const auto& z : f.v) s += std::norm(z);
    return std::sqrt(s * f.grid.cell());
}

double l2_norm(const RealField2D& f) {
    double s = 0.0;
    for (const auto& x : f.v) s += x * x;
    return std::sqrt(s * f.grid.cell());
}

double sup_norm(const ComplexField2D& f) {
    double m = 0.0;
    for (const auto& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

double sup_norm(const RealField2D& f) {
    double m = 0.0;
    for (const auto& x : f.v) m = std::max(m, std::abs(x));
    return m;
}

namespace {

// Parseval: int |u|^2 = (cell/(nx nz)) sum_m |fft(u)_m|^2
template <typename Field>
double weighted_spectral_norm(const Field& f, auto&& weight) {
    const SpectralGrid& g = f.grid;
    const std::vector<cplx> spec = fft(f);
    double s = 0.0;
    for (int iz = 0; iz < g.nz(); ++iz) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            s += weight(g.k1(ix), g.k2(iz)) * std::norm(spec[g.index(ix, iz)]);
        }
    }
    return std::sqrt(s * g.cell() / static_cast<double>(g.size()));
}

}  // namespace

double hs_norm(const ComplexField2D& f, double s) {
    return weighted_spectral_norm(
        f, [s](double k1, double k2) { return std::pow(1.0 + k1 * k1 + k2 * k2, s); });
}

double hs_norm(const RealField2D& f, double s) {
    return weighted_spectral_norm(
        f, [s](double k1, double k2) { return std::pow(1.0 + k1 * k1 + k2 * k2, s); });
}

double scaled_norm(const RealField2D& f, double eps, double omega) {
    const double ie2 = 1.0 / (eps * eps);
    return weighted_spectral_norm(f, [=](double k1, double k2) {
        const double d = std::abs(k1) - omega;
        return 1.0 + ie2 * (d * d + k2 * k2);
    });
}

double scaled_norm(const ComplexField2D& f, double eps, double omega) {
    const double ie2 = 1.0 / (eps * eps);
    return weighted_spectral_norm(f, [=](double k1, double k2) {
        const double d = std::abs(k1) - omega;
        return 1.0 + ie2 * (d * d + k2 * k2);
    });
}

double spectral_l1_norm(const RealField2D& f) {
    // |F[u]|_{L1} with F[u](k_m) = (cell/2pi) fft_m and dk = (2pi)^2/(lx lz)
    const std::vector<cplx> spec = fft(f);
    double s = 0.0;
    for (const auto& z : spec) s += std::abs(z);
    return s * 2.0 * std::numbers::pi / static_cast<double>(f.grid.size());
}

namespace {

template <typename Field>
Field shift_impl(const Field& f, int sx, int sz) {
    const SpectralGrid& g = f.grid;
    Field out(g);
    auto wrap = [](int i, int n) {
        int r = i % n;
        return r < 0 ? r + n : r;
    };
    for (int iz = 0; iz < g.nz(); ++iz) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            out.v[g.index(ix, iz)] =
                f.v[g.index(wrap(ix - sx, g.nx()), wrap(iz - sz, g.nz()))];
        }
    }
    return out;
}

}  // namespace

ComplexField2D shift(const ComplexField2D& f, int sx, int sz) {
    return shift_impl(f, sx, sz);
}

RealField2D shift(const RealField2D& f, int sx, int sz) {
    return shift_impl(f, sx, sz);
}

}  // namespace dslump
