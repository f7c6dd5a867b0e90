#include "dslump/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "dslump/errors.hpp"

namespace dslump {

namespace {

struct PlanKey {
    int nx, nz, sign;
    auto operator<=>(const PlanKey&) const = default;
};

// FFTW planning is not thread safe; executing a cached plan on fresh
// buffers via fftw_execute_dft is. Plans are created FFTW_ESTIMATE (always
// deterministic) and FFTW_UNALIGNED so std::vector storage is valid.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int nx, int nz, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const PlanKey key{nx, nz, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> a(static_cast<std::size_t>(nx) * nz);
        std::vector<cplx> b(a.size());
        // row-major with x fastest => FFTW dims are (nz, nx)
        fftw_plan p = fftw_plan_dft_2d(
            nz, nx, reinterpret_cast<fftw_complex*>(a.data()),
            reinterpret_cast<fftw_complex*>(b.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

std::vector<cplx> run(const SpectralGrid& g, const std::vector<cplx>& in, int sign) {
    if (in.size() != g.size()) {
        throw ShapeError("field size " + std::to_string(in.size()) +
                         " does not match grid " + std::to_string(g.size()));
    }
    fftw_plan p = PlanCache::instance().get(g.nx(), g.nz(), sign);
    std::vector<cplx> tmp(in);
    std::vector<cplx> out(in.size());
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

std::vector<cplx> fft(const ComplexField2D& f) {
    return run(f.grid, f.v, FFTW_FORWARD);
}

std::vector<cplx> fft(const RealField2D& f) {
    std::vector<cplx> c(f.v.begin(), f.v.end());
    return run(f.grid, c, FFTW_FORWARD);
}

ComplexField2D ifft(const SpectralGrid& g, const std::vector<cplx>& spec) {
    ComplexField2D out(g);
    out.v = run(g, spec, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& z : out.v) z *= scale;
    return out;
}

RealField2D ifft_real(const SpectralGrid& g, const std::vector<cplx>& spec) {
    const ComplexField2D c = ifft(g, spec);
    RealField2D out(g);
    for (std::size_t i = 0; i < c.v.size(); ++i) out.v[i] = c.v[i].real();
    return out;
}

double spectrum_asymmetry(const SpectralGrid& g, const std::vector<cplx>& spec) {
    double worst = 0.0, scale = 0.0;
    for (int iz = 0; iz < g.nz(); ++iz) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            const int jx = ix == 0 ? 0 : g.nx() - ix;
            const int jz = iz == 0 ? 0 : g.nz() - iz;
            const cplx a = spec[g.index(ix, iz)];
            const cplx b = std::conj(spec[g.index(jx, jz)]);
            worst = std::max(worst, std::abs(a - b));
            scale = std::max(scale, std::abs(a));
        }
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

std::vector<cplx> pad_spectrum(const SpectralGrid& g, const std::vector<cplx>& spec) {
    if (spec.size() != g.size()) throw ShapeError("pad_spectrum: size mismatch");
    const int nx = g.nx(), nz = g.nz();
    const SpectralGrid fine = g.refined();
    std::vector<cplx> out(fine.size(), cplx{0.0, 0.0});
    for (int iz = 0; iz < nz; ++iz) {
        const int mz = g.mode_z(iz);
        if (mz == -nz / 2) continue;  // Nyquist line dropped
        const int fz = mz >= 0 ? mz : 2 * nz + mz;
        for (int ix = 0; ix < nx; ++ix) {
            const int mx = g.mode_x(ix);
            if (mx == -nx / 2) continue;
            const int fx = mx >= 0 ? mx : 2 * nx + mx;
            out[fine.index(fx, fz)] = 4.0 * spec[g.index(ix, iz)];
        }
    }
    return out;
}

std::vector<cplx> truncate_spectrum(const SpectralGrid& g, const std::vector<cplx>& fine_spec) {
    const SpectralGrid fine = g.refined();
    if (fine_spec.size() != fine.size()) throw ShapeError("truncate_spectrum: size mismatch");
    const int nx = g.nx(), nz = g.nz();
    std::vector<cplx> out(g.size(), cplx{0.0, 0.0});
    for (int iz = 0; iz < nz; ++iz) {
        const int mz = g.mode_z(iz);
        if (mz == -nz / 2) continue;
        const int fz = mz >= 0 ? mz : 2 * nz + mz;
        for (int ix = 0; ix < nx; ++ix) {
            const int mx = g.mode_x(ix);
            if (mx == -nx / 2) continue;
            const int fx = mx >= 0 ? mx : 2 * nx + mx;
            out[g.index(ix, iz)] = 0.25 * fine_spec[fine.index(fx, fz)];
        }
    }
    return out;
}

ComplexField2D to_fine(const ComplexField2D& f) {
    return ifft(f.grid.refined(), pad_spectrum(f.grid, fft(f)));
}

RealField2D to_fine(const RealField2D& f) {
    return ifft_real(f.grid.refined(), pad_spectrum(f.grid, fft(f)));
}

ComplexField2D project_coarse(const SpectralGrid& g, const ComplexField2D& fine) {
    return ifft(g, truncate_spectrum(g, fft(fine)));
}

RealField2D project_coarse(const SpectralGrid& g, const RealField2D& fine) {
    return ifft_real(g, truncate_spectrum(g, fft(fine)));
}

namespace {

template <typename Field>
Field derivative_impl(const Field& f, int axis, int order) {
    if (axis != 0 && axis != 1) throw DomainError("derivative: axis must be 0 (x) or 1 (z)");
    if (order != 1 && order != 2) throw DomainError("derivative: order must be 1 or 2");
    const SpectralGrid& g = f.grid;
    std::vector<cplx> spec = fft(f);
    for (int iz = 0; iz < g.nz(); ++iz) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            const double k = axis == 0 ? g.k1(ix) : g.k2(iz);
            cplx m;
            if (order == 1) {
                const bool nyq = axis == 0 ? g.mode_x(ix) == -g.nx() / 2
                                           : g.mode_z(iz) == -g.nz() / 2;
                m = nyq ? cplx{0.0, 0.0} : cplx{0.0, k};
            } else {
                m = cplx{-k * k, 0.0};
            }
            spec[g.index(ix, iz)] *= m;
        }
    }
    if constexpr (std::is_same_v<Field, RealField2D>) {
        return ifft_real(g, spec);
    } else {
        return ifft(g, spec);
    }
}

}  // namespace

ComplexField2D derivative(const ComplexField2D& f, int axis, int order) {
    return derivative_impl(f, axis, order);
}

RealField2D derivative(const RealField2D& f, int axis, int order) {
    return derivative_impl(f, axis, order);
}

}  // namespace dslump
