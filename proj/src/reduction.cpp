#include "dslump/reduction.hpp"

#include <cmath>
#include <numbers>

#include "dslump/errors.hpp"
#include "dslump/lump_solver.hpp"

namespace dslump {

namespace {

double integral(const RealField2D& f) {
    double s = 0.0;
    for (const double x : f.v) s += x;
    return s * f.grid.cell();
}

// fine-grid samples of a spectral multiplier applied to a coarse field
RealField2D fine_multiplied(const RealField2D& eta, const MultiplierBank& bank, Symbol s) {
    std::vector<cplx> spec = fft(eta);
    bank.apply_inplace(eta.grid, spec, s);
    return ifft_real(eta.grid.refined(), pad_spectrum(eta.grid, spec));
}

RealField2D fine_derivative(const RealField2D& eta, int axis, int order) {
    return to_fine(derivative(eta, axis, order));
}

}  // namespace

double functional_K2(const RealField2D& eta, double beta) {
    const RealField2D ex = derivative(eta, 0, 1);
    const RealField2D ez = derivative(eta, 1, 1);
    double s = 0.0;
    for (std::size_t i = 0; i < eta.v.size(); ++i) {
        s += eta.v[i] * eta.v[i] + beta * (ex.v[i] * ex.v[i] + ez.v[i] * ez.v[i]);
    }
    return 0.5 * s * eta.grid.cell();
}

double functional_K4(const RealField2D& eta, double beta) {
    const RealField2D ex = fine_derivative(eta, 0, 1);
    const RealField2D ez = fine_derivative(eta, 1, 1);
    RealField2D q(ex.grid);
    for (std::size_t i = 0; i < q.v.size(); ++i) {
        const double g2 = ex.v[i] * ex.v[i] + ez.v[i] * ez.v[i];
        q.v[i] = g2 * g2;
    }
    return -beta / 8.0 * integral(q);
}

double functional_L2(const RealField2D& eta, const MultiplierBank& bank) {
    const RealField2D k0e = bank.apply(eta, Symbol::K0);
    return 0.5 * inner_real(eta, k0e);
}

double functional_L3(const RealField2D& eta, const MultiplierBank& bank) {
    const RealField2D ef = to_fine(eta);
    const RealField2D ex = fine_derivative(eta, 0, 1);
    const RealField2D k0e = fine_multiplied(eta, bank, Symbol::K0);
    const RealField2D l0e = fine_multiplied(eta, bank, Symbol::L0);
    RealField2D q(ef.grid);
    for (std::size_t i = 0; i < q.v.size(); ++i) {
        q.v[i] = ef.v[i] * (ex.v[i] * ex.v[i] - k0e.v[i] * k0e.v[i] - l0e.v[i] * l0e.v[i]);
    }
    return 0.5 * integral(q);
}

double functional_L4(const RealField2D& eta, const MultiplierBank& bank) {
    const SpectralGrid fine = eta.grid.refined();
    const RealField2D ef = to_fine(eta);
    const RealField2D k0e = fine_multiplied(eta, bank, Symbol::K0);
    const RealField2D l0e = fine_multiplied(eta, bank, Symbol::L0);
    const RealField2D exx = fine_derivative(eta, 0, 2);
    RealField2D exz = derivative(derivative(eta, 0, 1), 1, 1);
    const RealField2D exzf = to_fine(exz);

    RealField2D ek(fine), el(fine);
    for (std::size_t i = 0; i < ef.v.size(); ++i) {
        ek.v[i] = ef.v[i] * k0e.v[i];
        el.v[i] = ef.v[i] * l0e.v[i];
    }
    const RealField2D k0ek = bank.apply(ek, Symbol::K0);
    const RealField2D l0el = bank.apply(el, Symbol::L0);
    const RealField2D h0el = bank.apply(el, Symbol::H0);

    RealField2D q(fine);
    for (std::size_t i = 0; i < q.v.size(); ++i) {
        q.v[i] = k0ek.v[i] * ek.v[i] + 2.0 * l0el.v[i] * ek.v[i] + el.v[i] * h0el.v[i] +
                 ef.v[i] * ef.v[i] * (k0e.v[i] * exx.v[i] + l0e.v[i] * exzf.v[i]);
    }
    return 0.5 * integral(q);
}

double functional_H(const RealField2D& eta, const MultiplierBank& bank) {
    if (eta.grid != bank.grid() && eta.grid != bank.fine_grid()) {
        throw GridMismatchError("functional_H: field grid not covered by the bank");
    }
    const bool coarse = eta.grid == bank.grid();
    const auto& gt = coarse ? bank.table(Symbol::Gtilde) : bank.fine_table(Symbol::Gtilde);
    const std::vector<cplx> spec = fft(eta);
    double s = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) s += gt[i] * std::norm(spec[i]);
    const SpectralGrid& g = eta.grid;
    return 0.5 * s * g.cell() * g.cell() / g.area();
}

RealField2D gradient_K2(const RealField2D& eta, double beta) {
    const RealField2D exx = derivative(eta, 0, 2);
    const RealField2D ezz = derivative(eta, 1, 2);
    RealField2D out(eta.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        out.v[i] = eta.v[i] - beta * (exx.v[i] + ezz.v[i]);
    }
    return out;
}

RealField2D gradient_K4(const RealField2D& eta, double beta) {
    const SpectralGrid fine = eta.grid.refined();
    const RealField2D ex = fine_derivative(eta, 0, 1);
    const RealField2D ez = fine_derivative(eta, 1, 1);
    RealField2D gx(fine), gz(fine);
    for (std::size_t i = 0; i < gx.v.size(); ++i) {
        const double g2 = ex.v[i] * ex.v[i] + ez.v[i] * ez.v[i];
        gx.v[i] = g2 * ex.v[i];
        gz.v[i] = g2 * ez.v[i];
    }
    // (beta/2)[((grad)^2 eta_x)_x + ((grad)^2 eta_z)_z], projected coarse
    const RealField2D dgx = derivative(project_coarse(eta.grid, gx), 0, 1);
    const RealField2D dgz = derivative(project_coarse(eta.grid, gz), 1, 1);
    RealField2D out(eta.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        out.v[i] = 0.5 * beta * (dgx.v[i] + dgz.v[i]);
    }
    return out;
}

RealField2D gradient_L2(const RealField2D& eta, const MultiplierBank& bank) {
    return bank.apply(eta, Symbol::K0);
}

RealField2D gradient_L3(const RealField2D& eta, const MultiplierBank& bank) {
    const SpectralGrid fine = eta.grid.refined();
    const RealField2D ef = to_fine(eta);
    const RealField2D ex = fine_derivative(eta, 0, 1);
    const RealField2D k0e = fine_multiplied(eta, bank, Symbol::K0);
    const RealField2D l0e = fine_multiplied(eta, bank, Symbol::L0);

    RealField2D quad(fine), exe(fine), ek(fine), el(fine);
    for (std::size_t i = 0; i < quad.v.size(); ++i) {
        quad.v[i] = ex.v[i] * ex.v[i] - k0e.v[i] * k0e.v[i] - l0e.v[i] * l0e.v[i];
        exe.v[i] = ex.v[i] * ef.v[i];
        ek.v[i] = ef.v[i] * k0e.v[i];
        el.v[i] = ef.v[i] * l0e.v[i];
    }
    const RealField2D dxexe = derivative(exe, 0, 1);
    const RealField2D k0ek = bank.apply(ek, Symbol::K0);
    const RealField2D l0el = bank.apply(el, Symbol::L0);
    RealField2D tot(fine);
    for (std::size_t i = 0; i < tot.v.size(); ++i) {
        tot.v[i] = 0.5 * (quad.v[i] - 2.0 * dxexe.v[i] - 2.0 * k0ek.v[i] - 2.0 * l0el.v[i]);
    }
    return project_coarse(eta.grid, tot);
}

RealField2D reduction_F(const RealField2D& eta1, double eps, const MultiplierBank& bank) {
    const RealField2D l3p = gradient_L3(eta1, bank);
    std::vector<cplx> spec = fft(l3p);
    bank.apply_inplace(eta1.grid, spec, Symbol::RedF);
    const double scale = bank.params().lambda_crit * (1.0 - eps * eps);
    for (auto& z : spec) z *= scale;
    return ifft_real(eta1.grid, spec);
}

EnvelopeFn gaussian_envelope(double sigma_x, double sigma_z) {
    return [=](double X, double Z) {
        const double qx = X / sigma_x, qz = Z / sigma_z;
        return cplx{std::exp(-0.5 * (qx * qx + qz * qz)), 0.0};
    };
}

namespace {

// everything the verifiers evaluate per epsilon
struct VerifierContext {
    SpectralGrid phys;
    MultiplierBank bank;
    RealField2D eta1;
    ComplexField2D eta1_plus;
    RealField2D F;
    double I4 = 0.0;   // int |eta1+|^4
    double Ik = 0.0;   // int k1^2/|k|^2 |F[|eta1+|^2]|^2 dk
    double Im = 0.0;   // int m_DS |F[|eta1+|^2]|^2 dk
    double HF = 0.0;   // H(F(eta1))
    double triple_norm = 0.0;
};

SpectralGrid commensurate_grid(const VerifierGridSpec& spec, double omega, double eps) {
    // pick the box so that omega is exactly a grid wavenumber
    const double target = spec.ds_box / eps;
    const long m = std::max(1L, std::lround(omega * target / (2.0 * std::numbers::pi)));
    const double lx = 2.0 * std::numbers::pi * m / omega;
    const double lz = lx * spec.nz / spec.nx;  // equal spacing in both axes
    return {spec.nx, spec.nz, lx, lz};
}

VerifierContext make_context(const EnvelopeFn& zeta, const VerifierGridSpec& spec,
                             const DSCoefficients& coeffs, double eps) {
    const DispersionParams& p = coeffs.params;
    const SpectralGrid phys = commensurate_grid(spec, p.omega, eps);
    VerifierContext ctx{phys,
                        MultiplierBank(phys, p, spec.delta_fraction * p.omega),
                        RealField2D{},
                        ComplexField2D{},
                        RealField2D{}};
    const SpectralGrid slow(phys.nx(), phys.nz(), eps * phys.lx(), eps * phys.lz());
    ComplexField2D env(slow);
    for (int iz = 0; iz < slow.nz(); ++iz) {
        for (int ix = 0; ix < slow.nx(); ++ix) {
            env(ix, iz) = zeta(slow.x(ix), slow.z(iz));
        }
    }
    WavepacketResult wp = wavepacket(env, eps, p, ctx.bank);
    ctx.eta1 = std::move(wp.eta1);
    ctx.triple_norm = scaled_norm(ctx.eta1, eps, p.omega);
    std::vector<cplx> spec1 = fft(ctx.eta1);
    ctx.bank.apply_inplace(phys, spec1, Symbol::ChiPlus);
    ctx.eta1_plus = ifft(phys, spec1);
    ctx.F = reduction_F(ctx.eta1, eps, ctx.bank);
    ctx.HF = functional_H(ctx.F, ctx.bank);

    // quartic integrals of w = |eta1+|^2 on the fine grid
    const ComplexField2D e1pf = to_fine(ctx.eta1_plus);
    const SpectralGrid fine = phys.refined();
    RealField2D w(fine);
    for (std::size_t i = 0; i < w.v.size(); ++i) w.v[i] = std::norm(e1pf.v[i]);
    double i4 = 0.0;
    for (const double x : w.v) i4 += x * x;
    ctx.I4 = i4 * fine.cell();
    const std::vector<cplx> wspec = fft(w);
    const auto& mds = ctx.bank.fine_table(Symbol::MDs);
    double ik = 0.0, im = 0.0;
    for (int iz = 0; iz < fine.nz(); ++iz) {
        const double k2 = fine.k2(iz);
        for (int ix = 0; ix < fine.nx(); ++ix) {
            const double k1 = fine.k1(ix);
            const double r2 = k1 * k1 + k2 * k2;
            const std::size_t i = fine.index(ix, iz);
            const double m = std::norm(wspec[i]);
            ik += (r2 > 0.0 ? k1 * k1 / r2 : 0.0) * m;
            im += mds[i] * m;
        }
    }
    const double quad = fine.cell() * fine.cell() / fine.area();
    ctx.Ik = ik * quad;
    ctx.Im = im * quad;
    return ctx;
}

double fitted_slope(const std::vector<double>& eps, const std::vector<double>& err) {
    // least-squares slope of log(err) against log(eps)
    const std::size_t n = eps.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(eps[i]);
        const double y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void validate_eps_list(const std::vector<double>& eps_list) {
    if (eps_list.size() < 2) throw DomainError("eps list needs at least two entries");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i) {
        if (!(eps_list[i] > eps_list[i + 1])) {
            throw DomainError("eps list must be strictly decreasing");
        }
    }
}

ConvergenceReport finalize(std::string name, const std::vector<double>& eps_list,
                           std::vector<double> lhs, std::vector<double> rhs) {
    ConvergenceReport r;
    r.name = std::move(name);
    r.epsilons = eps_list;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.rel_errors.resize(r.lhs.size());
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
        r.rel_errors[i] = std::abs(r.lhs[i] - r.rhs[i]) / std::abs(r.rhs[i]);
    }
    r.fitted_order = fitted_slope(r.epsilons, r.rel_errors);
    return r;
}

}  // namespace

ConvergenceReport verify_HF_corollary(const EnvelopeFn& zeta, const VerifierGridSpec& spec,
                                      const DSCoefficients& coeffs,
                                      const std::vector<double>& eps_list) {
    validate_eps_list(eps_list);
    const double lam = coeffs.params.lambda_crit;
    const double fw = kernel_f(coeffs.params.omega).f;
    std::vector<double> lhs, rhs;
    for (const double eps : eps_list) {
        const VerifierContext ctx = make_context(zeta, spec, coeffs, eps);
        lhs.push_back(ctx.HF);
        const double c4 = lam * lam / coeffs.g_2omega * coeffs.A_omega * coeffs.A_omega +
                          lam * lam * coeffs.B_omega * coeffs.B_omega / 2.0;
        const double cm = lam * std::pow(lam * coeffs.B_omega - 2.0 * fw, 2) / 2.0;
        rhs.push_back(c4 * ctx.I4 - 2.0 * lam * fw * fw * ctx.Ik + cm * ctx.Im);
    }
    return finalize("hf_corollary", eps_list, std::move(lhs), std::move(rhs));
}

std::vector<ConvergenceReport> verify_K4_L4_L3_lemmas(const EnvelopeFn& zeta,
                                                      const VerifierGridSpec& spec,
                                                      const DSCoefficients& coeffs,
                                                      const std::vector<double>& eps_list) {
    validate_eps_list(eps_list);
    const DispersionParams& p = coeffs.params;
    const double lam = p.lambda_crit;
    const double w = p.omega;
    const double fw = kernel_f(w).f;
    const double f2w = kernel_f(2.0 * w).f;
    std::vector<double> lk4, rk4, ll4, rl4, ll3, rl3;
    for (const double eps : eps_list) {
        const VerifierContext ctx = make_context(zeta, spec, coeffs, eps);
        RealField2D eta(ctx.phys);
        for (std::size_t i = 0; i < eta.v.size(); ++i) {
            eta.v[i] = ctx.eta1.v[i] + ctx.F.v[i];
        }
        lk4.push_back(functional_K4(eta, p.beta));
        rk4.push_back(-0.75 * p.beta * w * w * w * w * ctx.I4);
        ll4.push_back(functional_L4(eta, ctx.bank));
        rl4.push_back(fw * (fw * f2w - 3.0 * w * w) * ctx.I4 + 2.0 * fw * fw * ctx.Ik);
        ll3.push_back(functional_L3(eta, ctx.bank));
        rl3.push_back(2.0 / (lam * (1.0 - eps * eps)) * ctx.HF);
    }
    std::vector<ConvergenceReport> out;
    out.push_back(finalize("k4_lemma", eps_list, std::move(lk4), std::move(rk4)));
    out.push_back(finalize("l4_lemma", eps_list, std::move(ll4), std::move(rl4)));
    out.push_back(finalize("l3_lemma", eps_list, std::move(ll3), std::move(rl3)));
    return out;
}

std::vector<ConvergenceReport> verify_approx_identities(const EnvelopeFn& zeta,
                                                        const VerifierGridSpec& spec,
                                                        const DSCoefficients& coeffs,
                                                        const std::vector<double>& eps_list) {
    validate_eps_list(eps_list);
    const DispersionParams& p = coeffs.params;
    const double w = p.omega;
    const double fw = kernel_f(w).f;
    const double f2w = kernel_f(2.0 * w).f;
    const std::array<std::string, 7> names = {"dx",   "dxx",  "dz",   "k0",
                                              "l0",   "k0_sq", "l0_sq"};
    std::array<std::vector<double>, 7> errs;

    for (const double eps : eps_list) {
        const VerifierContext ctx = make_context(zeta, spec, coeffs, eps);
        const ComplexField2D& ep = ctx.eta1_plus;
        const double tn = ctx.triple_norm;

        auto diff_norm = [&](const ComplexField2D& a, const ComplexField2D& b) {
            ComplexField2D d(a.grid);
            for (std::size_t i = 0; i < d.v.size(); ++i) d.v[i] = a.v[i] - b.v[i];
            return l2_norm(d);
        };
        auto scaled = [&](const ComplexField2D& f, cplx c) {
            ComplexField2D out(f.grid);
            for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = c * f.v[i];
            return out;
        };

        errs[0].push_back(diff_norm(derivative(ep, 0, 1), scaled(ep, cplx{0.0, w})) / tn);
        errs[1].push_back(diff_norm(derivative(ep, 0, 2), scaled(ep, -w * w)) / tn);
        errs[2].push_back(l2_norm(derivative(ep, 1, 1)) / tn);
        errs[3].push_back(diff_norm(ctx.bank.apply(ep, Symbol::K0), scaled(ep, fw)) / tn);
        errs[4].push_back(l2_norm(ctx.bank.apply(ep, Symbol::L0)) / tn);

        // quadratic identities on the fine grid, relative to ||(eta1+)^2||
        const ComplexField2D epf = to_fine(ep);
        ComplexField2D sq(epf.grid);
        for (std::size_t i = 0; i < sq.v.size(); ++i) sq.v[i] = epf.v[i] * epf.v[i];
        const double nsq = l2_norm(sq);
        errs[5].push_back(
            diff_norm(ctx.bank.apply(sq, Symbol::K0), scaled(sq, f2w)) / nsq);
        errs[6].push_back(l2_norm(ctx.bank.apply(sq, Symbol::L0)) / nsq);
    }

    std::vector<ConvergenceReport> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        ConvergenceReport r;
        r.name = "approx_" + names[i];
        r.epsilons = eps_list;
        r.rel_errors = errs[i];
        r.lhs = errs[i];
        r.rhs.assign(errs[i].size(), 0.0);
        r.fitted_order = fitted_slope(eps_list, errs[i]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dslump
