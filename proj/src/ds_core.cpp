#include "dslump/ds_core.hpp"

#include <cmath>
#include <limits>

#include "dslump/errors.hpp"

namespace dslump {

DsCore::DsCore(const SpectralGrid& grid, const DSCoefficients& coeffs)
    : grid_(grid), fine_(grid.refined()), coeffs_(coeffs) {
    quad_form_.resize(grid_.size());
    for (int iz = 0; iz < grid_.nz(); ++iz) {
        const double k2 = grid_.k2(iz);
        for (int ix = 0; ix < grid_.nx(); ++ix) {
            const double k1 = grid_.k1(ix);
            quad_form_[grid_.index(ix, iz)] =
                coeffs_.a1 * k1 * k1 + coeffs_.a2 * k2 * k2 + coeffs_.a3;
        }
    }
    const double lam = coeffs_.params.lambda_crit;
    mds_fine_.resize(fine_.size());
    for (int iz = 0; iz < fine_.nz(); ++iz) {
        const double k2 = fine_.k2(iz);
        for (int ix = 0; ix < fine_.nx(); ++ix) {
            const double k1 = fine_.k1(ix);
            const double den = (1.0 - lam) * k1 * k1 + k2 * k2;
            mds_fine_[fine_.index(ix, iz)] = den > 0.0 ? k1 * k1 / den : 0.0;
        }
    }
}

void DsCore::check(const ComplexField2D& f) const {
    if (f.grid != grid_) throw GridMismatchError("DsCore: field lives on a different grid");
}

EnergyBreakdown DsCore::energy(const ComplexField2D& zeta) const {
    check(zeta);
    const std::vector<cplx> spec = fft(zeta);
    double q = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) q += quad_form_[i] * std::norm(spec[i]);
    q *= grid_.cell() / static_cast<double>(grid_.size());

    const ComplexField2D zf = ifft(fine_, pad_spectrum(grid_, spec));
    RealField2D w(fine_);
    for (std::size_t i = 0; i < zf.v.size(); ++i) w.v[i] = std::norm(zf.v[i]);
    const double cellf = fine_.cell();
    double s_local = 0.0;
    for (const double x : w.v) s_local += x * x;
    s_local *= coeffs_.C2 * cellf;

    const std::vector<cplx> wspec = fft(w);
    double s_nl = 0.0;
    for (std::size_t i = 0; i < wspec.size(); ++i) s_nl += mds_fine_[i] * std::norm(wspec[i]);
    s_nl *= coeffs_.C1 * cellf * cellf / grid_.area();

    EnergyBreakdown e;
    e.Q = q;
    e.S_nonlocal = s_nl;
    e.S_local = s_local;
    e.S = s_nl + s_local;
    e.T0 = e.Q - e.S;
    e.nehari = 2.0 * e.Q - 4.0 * e.S;
    return e;
}

ComplexField2D DsCore::gradient(const ComplexField2D& zeta) const {
    check(zeta);
    std::vector<cplx> spec = fft(zeta);
    const ComplexField2D zf = ifft(fine_, pad_spectrum(grid_, spec));

    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= 2.0 * quad_form_[i];
    const ComplexField2D gq = ifft(grid_, spec);

    RealField2D w(fine_);
    for (std::size_t i = 0; i < zf.v.size(); ++i) w.v[i] = std::norm(zf.v[i]);
    std::vector<cplx> wspec = fft(w);
    for (std::size_t i = 0; i < wspec.size(); ++i) wspec[i] *= mds_fine_[i];
    const RealField2D u = ifft_real(fine_, wspec);

    ComplexField2D gf(fine_);
    const double c1 = 4.0 * coeffs_.C1, c2 = 4.0 * coeffs_.C2;
    for (std::size_t i = 0; i < gf.v.size(); ++i) {
        gf.v[i] = (c1 * u.v[i] + c2 * w.v[i]) * zf.v[i];
    }
    const ComplexField2D gs = ifft(grid_, truncate_spectrum(grid_, fft(gf)));

    ComplexField2D out(grid_);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = gq.v[i] - gs.v[i];
    return out;
}

NehariProjection DsCore::nehari_project(const ComplexField2D& zeta) const {
    const EnergyBreakdown e = energy(zeta);
    if (!(e.S > std::numeric_limits<double>::min()) || !std::isfinite(e.S) ||
        !std::isfinite(e.Q) || !(e.Q > 0.0)) {
        throw DegenerateRayError("S(zeta) at the quadrature floor; ray misses the Nehari set");
    }
    NehariProjection p;
    p.lambda0 = std::sqrt(e.Q / (2.0 * e.S));
    p.projected = zeta;
    for (auto& z : p.projected.v) z *= p.lambda0;
    const double l2 = p.lambda0 * p.lambda0;
    p.breakdown.Q = l2 * e.Q;
    p.breakdown.S_nonlocal = l2 * l2 * e.S_nonlocal;
    p.breakdown.S_local = l2 * l2 * e.S_local;
    p.breakdown.S = l2 * l2 * e.S;
    p.breakdown.T0 = p.breakdown.Q - p.breakdown.S;
    p.breakdown.nehari = 2.0 * p.breakdown.Q - 4.0 * p.breakdown.S;
    return p;
}

RayPolynomials DsCore::ray_polynomials(const ComplexField2D& zeta,
                                       const ComplexField2D& dir) const {
    check(zeta);
    check(dir);
    const std::vector<cplx> zs = fft(zeta);
    const std::vector<cplx> gs = fft(dir);
    const double wq = grid_.cell() / static_cast<double>(grid_.size());
    RayPolynomials r;
    double qzz = 0.0, qzg = 0.0, qgg = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        qzz += quad_form_[i] * std::norm(zs[i]);
        qzg += quad_form_[i] * (zs[i] * std::conj(gs[i])).real();
        qgg += quad_form_[i] * std::norm(gs[i]);
    }
    r.q = {qzz * wq, -2.0 * qzg * wq, qgg * wq};

    const ComplexField2D zf = ifft(fine_, pad_spectrum(grid_, zs));
    const ComplexField2D gf = ifft(fine_, pad_spectrum(grid_, gs));
    // |z - tau g|^2 = w0 + tau w1 + tau^2 w2
    RealField2D w0(fine_), w1(fine_), w2(fine_);
    for (std::size_t i = 0; i < zf.v.size(); ++i) {
        w0.v[i] = std::norm(zf.v[i]);
        w1.v[i] = -2.0 * (zf.v[i] * std::conj(gf.v[i])).real();
        w2.v[i] = std::norm(gf.v[i]);
    }
    const std::array<const RealField2D*, 3> ws = {&w0, &w1, &w2};
    std::array<std::vector<cplx>, 3> wspec;
    for (int i = 0; i < 3; ++i) wspec[i] = fft(*ws[i]);
    const double cellf = fine_.cell();
    const double cnl = coeffs_.C1 * cellf * cellf / grid_.area();
    r.s = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double bl = 0.0, bn = 0.0;
            for (std::size_t m = 0; m < ws[i]->v.size(); ++m) {
                bl += ws[i]->v[m] * ws[j]->v[m];
            }
            for (std::size_t m = 0; m < wspec[i].size(); ++m) {
                bn += mds_fine_[m] * (wspec[i][m] * std::conj(wspec[j][m])).real();
            }
            r.s[i + j] += coeffs_.C2 * cellf * bl + cnl * bn;
        }
    }
    return r;
}

}  // namespace dslump
