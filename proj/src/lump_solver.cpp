#include "dslump/lump_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "dslump/errors.hpp"
#include "dslump/reduction.hpp"

namespace dslump {

void SolverConfig::validate() const {
    if (!(tol_residual > 0.0)) throw DomainError("tol_residual must be positive");
    if (max_iters < 1) throw DomainError("max_iters must be >= 1");
    if (recentre_every < 1) throw DomainError("recentre_every must be >= 1");
    if (!(fixed_step > 0.0)) throw DomainError("fixed_step must be positive");
    SpectralGrid probe(nx, nz, lx, lz);  // validates sizes and box
    (void)probe;
}

namespace {

// portable Box-Muller on raw mt19937_64 output (library distributions are
// implementation-defined sequences)
class Gaussian {
  public:
    explicit Gaussian(std::uint64_t seed) : rng_(seed) {}
    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u = 0.0;
        do {
            u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        } while (u <= 0.0);
        const double v = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 2.0 * std::numbers::pi * v;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_ = false;
};

void zero_nyquist(const SpectralGrid& g, std::vector<cplx>& spec) {
    for (int iz = 0; iz < g.nz(); ++iz) spec[g.index(g.nx() / 2, iz)] = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix) spec[g.index(ix, g.nz() / 2)] = 0.0;
}

ComplexField2D initial_guess(const SpectralGrid& g, const DSCoefficients& c,
                             const InitialGuess& spec) {
    const double sx = 2.0 * spec.width_scale * std::sqrt(c.a1 / c.a3);
    const double sz = 2.0 * spec.width_scale * std::sqrt(c.a2 / c.a3);
    ComplexField2D z(g);
    for (int iz = 0; iz < g.nz(); ++iz) {
        const double zz = g.z(iz) / sz;
        for (int ix = 0; ix < g.nx(); ++ix) {
            const double xx = g.x(ix) / sx;
            z(ix, iz) = spec.amplitude * std::exp(-0.5 * (xx * xx + zz * zz));
        }
    }
    if (spec.noise_amp > 0.0) {
        // band-limited perturbation: modes inside half the Nyquist band
        Gaussian gauss(spec.seed);
        ComplexField2D noise(g);
        std::vector<cplx> nspec(g.size(), cplx{0.0, 0.0});
        for (int iz = 0; iz < g.nz(); ++iz) {
            for (int ix = 0; ix < g.nx(); ++ix) {
                const bool inband = std::abs(g.mode_x(ix)) < g.nx() / 4 &&
                                    std::abs(g.mode_z(iz)) < g.nz() / 4;
                const double re = gauss();  // fixed draw order, seed-determined
                const double im = gauss();
                if (inband) nspec[g.index(ix, iz)] = cplx{re, im};
            }
        }
        noise = ifft(g, nspec);
        const double scale = spec.noise_amp * spec.amplitude / sup_norm(noise);
        for (std::size_t i = 0; i < z.v.size(); ++i) z.v[i] += scale * noise.v[i];
    }
    std::vector<cplx> zs = fft(z);
    zero_nyquist(g, zs);
    return ifft(g, zs);
}

ComplexField2D recentre(const ComplexField2D& z) {
    const SpectralGrid& g = z.grid;
    std::size_t best = 0;
    double mx = -1.0;
    for (std::size_t i = 0; i < z.v.size(); ++i) {
        const double a = std::abs(z.v[i]);
        if (a > mx) {
            mx = a;
            best = i;
        }
    }
    const int iz = static_cast<int>(best) / g.nx();
    const int ix = static_cast<int>(best) % g.nx();
    if (ix == 0 && iz == 0) return z;
    return shift(z, -ix, -iz);
}

double rel_residual(const ComplexField2D& g, const ComplexField2D& z) {
    return l2_norm(g) / l2_norm(z);
}

}  // namespace

SolveReport solve_ground_state(const SolverConfig& config, const DSCoefficients& coeffs) {
    config.validate();
    const SpectralGrid grid(config.nx, config.nz, config.lx, config.lz);
    const DsCore core(grid, coeffs);

    NehariProjection p = core.nehari_project(initial_guess(grid, coeffs, config.init));
    ComplexField2D z = std::move(p.projected);
    EnergyBreakdown e = p.breakdown;

    SolveReport rep;
    rep.trace.reserve(config.max_iters);
    double tau = config.fixed_step;
    ComplexField2D zprev, gprev;
    bool have_prev = false;

    int it = 0;
    for (; it < config.max_iters; ++it) {
        const ComplexField2D grad = core.gradient(z);
        const double res = rel_residual(grad, z);
        rep.trace.push_back({e.T0, res});
        if (res < config.tol_residual) {
            rep.converged = true;
            break;
        }
        if (config.step_rule == StepRule::AdaptiveBB && have_prev) {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < z.v.size(); ++i) {
                const cplx s = z.v[i] - zprev.v[i];
                const cplx y = grad.v[i] - gprev.v[i];
                num += (s * std::conj(y)).real();
                den += std::norm(y);
            }
            if (den > 0.0 && num > 0.0) tau = num / den;
            tau = std::clamp(tau, 1e-8, 1e3);
        }
        zprev = z;
        gprev = grad;
        have_prev = true;

        ComplexField2D trial(grid);
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < z.v.size(); ++i) {
                trial.v[i] = z.v[i] - tau * grad.v[i];
            }
            NehariProjection np = core.nehari_project(trial);
            if (np.breakdown.T0 <= e.T0 + 1e-13 * std::abs(e.T0)) {
                z = std::move(np.projected);
                e = np.breakdown;
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) break;  // stalled at rounding level: report non-converged

        if ((it + 1) % config.recentre_every == 0) z = recentre(z);
        const double h1 = h1_norm(z);
        if (h1 < 1e-10) {
            throw CollapseError("iterate collapsed towards zero; retry with a larger "
                                "initial amplitude");
        }
        if (h1 > config.h1_diagnostic_bound) rep.h1_bound_exceeded = true;
    }

    z = recentre(z);
    rep.zeta = std::move(z);
    rep.breakdown = core.energy(rep.zeta);
    rep.residual = rel_residual(core.gradient(rep.zeta), rep.zeta);
    rep.iterations = it;
    return rep;
}

SolveReport solve_ground_state_rayscan(const SolverConfig& config,
                                       const DSCoefficients& coeffs) {
    config.validate();
    const SpectralGrid grid(config.nx, config.nz, config.lx, config.lz);
    const DsCore core(grid, coeffs);

    InitialGuess init = config.init;
    init.width_scale *= 1.5;  // distinct start from the BB path
    NehariProjection p = core.nehari_project(initial_guess(grid, coeffs, init));
    ComplexField2D z = std::move(p.projected);
    EnergyBreakdown e = p.breakdown;

    SolveReport rep;
    rep.trace.reserve(config.max_iters);
    int it = 0;
    for (; it < config.max_iters; ++it) {
        const ComplexField2D grad = core.gradient(z);
        const double res = rel_residual(grad, z);
        rep.trace.push_back({e.T0, res});
        if (res < config.tol_residual) {
            rep.converged = true;
            break;
        }
        const RayPolynomials poly = core.ray_polynomials(z, grad);
        double best_tau = 0.0, best_val = e.T0;
        const int nscan = 240;
        for (int i = 0; i < nscan; ++i) {
            const double tau =
                1e-6 * std::pow(50.0 / 1e-6, static_cast<double>(i) / (nscan - 1));
            const double s = poly.S(tau);
            if (!(s > 0.0)) continue;
            const double val = poly.projected_T0(tau);
            if (val < best_val) {
                best_val = val;
                best_tau = tau;
            }
        }
        if (best_tau == 0.0) break;  // scan found no decrease
        ComplexField2D trial(grid);
        for (std::size_t i = 0; i < z.v.size(); ++i) {
            trial.v[i] = z.v[i] - best_tau * grad.v[i];
        }
        NehariProjection np = core.nehari_project(trial);
        z = std::move(np.projected);
        e = np.breakdown;
        if ((it + 1) % config.recentre_every == 0) z = recentre(z);
        if (h1_norm(z) < 1e-10) {
            throw CollapseError("rayscan iterate collapsed towards zero");
        }
    }
    z = recentre(z);
    rep.zeta = std::move(z);
    rep.breakdown = core.energy(rep.zeta);
    rep.residual = rel_residual(core.gradient(rep.zeta), rep.zeta);
    rep.iterations = it;
    return rep;
}

WavepacketResult wavepacket(const ComplexField2D& zeta, double eps,
                            const DispersionParams& params, const MultiplierBank& bank) {
    if (!(eps > 0.0)) throw DomainError("wavepacket requires eps > 0");
    const SpectralGrid& phys = bank.grid();
    const SpectralGrid& ds = zeta.grid;
    if (phys.nx() != ds.nx() || phys.nz() != ds.nz() ||
        std::abs(phys.lx() * eps - ds.lx()) > 1e-9 * ds.lx() ||
        std::abs(phys.lz() * eps - ds.lz()) > 1e-9 * ds.lz()) {
        throw GridMismatchError(
            "wavepacket: bank grid is not the eps-scaled partner of the zeta grid");
    }
    if (bank.modes_in_plus_ball() < 8 || bank.modes_in_minus_ball() < 8) {
        throw ResolutionError("delta-balls unresolved on the physical grid");
    }
    const long carrier = std::lround(params.omega * phys.lx() / (2.0 * std::numbers::pi));
    if (carrier < 1 || carrier >= phys.nx() / 2) {
        throw ResolutionError("carrier wavenumber not representable on the physical grid");
    }
    const double omega_c = 2.0 * std::numbers::pi * carrier / phys.lx();

    WavepacketResult out;
    out.carrier_wavenumber = omega_c;
    out.eta1_tilde = RealField2D(phys);
    for (int iz = 0; iz < phys.nz(); ++iz) {
        for (int ix = 0; ix < phys.nx(); ++ix) {
            // e^{i omega_c x} sampled exactly on the periodic grid
            const double phase = 2.0 * std::numbers::pi * carrier * phys.mode_x(ix) /
                                 static_cast<double>(phys.nx());
            const cplx plus = 0.5 * eps * zeta(ix, iz) *
                              cplx{std::cos(phase), std::sin(phase)};
            out.eta1_tilde(ix, iz) = 2.0 * plus.real();
        }
    }
    std::vector<cplx> spec = fft(out.eta1_tilde);
    const auto& chi = bank.table(Symbol::Chi);
    double inside = 0.0, total = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double m = std::norm(spec[i]);
        total += m;
        inside += chi[i] > 0.0 ? m : 0.0;
    }
    out.truncated_mass = total > 0.0 ? 1.0 - inside / total : 0.0;
    if (out.truncated_mass > 0.01) {
        throw TruncationError("wavepacket spectrum loses " +
                              std::to_string(100.0 * out.truncated_mass) +
                              "% of its mass outside the chi balls");
    }
    bank.apply_inplace(phys, spec, Symbol::Cov);
    out.eta1 = ifft_real(phys, spec);
    return out;
}

ReconstructionResult reconstruct_surface(const ComplexField2D& zeta, double eps,
                                         const DispersionParams& params,
                                         const MultiplierBank& bank) {
    ReconstructionResult out;
    out.epsilon = eps;
    out.wave_speed = std::sqrt((1.0 - eps * eps) * params.lambda_crit);
    if (eps == 0.0) {
        out.eta1 = RealField2D(bank.grid());
        out.eta2_approx = RealField2D(bank.grid());
        out.eta = RealField2D(bank.grid());
        return out;
    }
    WavepacketResult wp = wavepacket(zeta, eps, params, bank);
    out.truncated_mass = wp.truncated_mass;
    out.eta1 = std::move(wp.eta1);
    out.eta2_approx = reduction_F(out.eta1, eps, bank);
    out.eta = RealField2D(bank.grid());
    for (std::size_t i = 0; i < out.eta.v.size(); ++i) {
        out.eta.v[i] = out.eta1.v[i] + out.eta2_approx.v[i];
    }
    return out;
}

SpectralGrid reconstruction_grid(const SpectralGrid& ds_grid, const DispersionParams& params,
                                 double delta, double eps) {
    if (!(eps > 0.0)) throw DomainError("reconstruction_grid requires eps > 0");
    const double lx = ds_grid.lx() / eps;
    const double lz = ds_grid.lz() / eps;
    const double kx_need = 2.0 * (params.omega + delta) + 0.6;
    const double kz_need = 2.0 * delta + 0.6;
    auto next_pow2 = [](double n) {
        int p = 16;
        while (p < n) p *= 2;
        return p;
    };
    const int nx = next_pow2(kx_need * lx / std::numbers::pi);
    const int nz = next_pow2(kz_need * lz / std::numbers::pi);
    return {nx, nz, lx, lz};
}

ComplexField2D resample(const ComplexField2D& f, const SpectralGrid& target) {
    const SpectralGrid& g = f.grid;
    if (std::abs(g.lx() - target.lx()) > 1e-12 * g.lx() ||
        std::abs(g.lz() - target.lz()) > 1e-12 * g.lz()) {
        throw GridMismatchError("resample: target grid has a different box");
    }
    std::vector<cplx> spec = fft(f);
    std::vector<cplx> out(target.size(), cplx{0.0, 0.0});
    const double scale = static_cast<double>(target.size()) / static_cast<double>(g.size());
    for (int iz = 0; iz < g.nz(); ++iz) {
        const int mz = g.mode_z(iz);
        if (std::abs(mz) >= std::min(g.nz(), target.nz()) / 2) continue;
        const int tz = mz >= 0 ? mz : target.nz() + mz;
        for (int ix = 0; ix < g.nx(); ++ix) {
            const int mx = g.mode_x(ix);
            if (std::abs(mx) >= std::min(g.nx(), target.nx()) / 2) continue;
            const int tx = mx >= 0 ? mx : target.nx() + mx;
            out[target.index(tx, tz)] = scale * spec[g.index(ix, iz)];
        }
    }
    return ifft(target, out);
}

}  // namespace dslump
