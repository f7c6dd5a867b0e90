#include "dslump/multipliers.hpp"

#include <cmath>
#include <string>

#include "dslump/errors.hpp"

namespace dslump {

namespace {

constexpr std::size_t kNumSymbols = 11;

std::size_t idx(Symbol s) {
    return static_cast<std::size_t>(s);
}

}  // namespace

MultiplierBank::MultiplierBank(const SpectralGrid& grid, const DispersionParams& params,
                               double delta)
    : grid_(grid), fine_(grid.refined()), params_(params), delta_(delta) {
    if (!(delta > 0.0) || !(delta < params.omega / 3.0)) {
        throw DomainError("cutoff radius delta must lie in (0, omega/3)");
    }
    coarse_.resize(kNumSymbols);
    fine_tables_.resize(kNumSymbols);
    build(grid_, coarse_);
    build(fine_, fine_tables_);
    const auto& chp = coarse_[idx(Symbol::ChiPlus)];
    const auto& chm = coarse_[idx(Symbol::ChiMinus)];
    for (std::size_t i = 0; i < chp.size(); ++i) {
        modes_plus_ += chp[i] > 0.5;
        modes_minus_ += chm[i] > 0.5;
    }
}

void MultiplierBank::build(const SpectralGrid& g, std::vector<std::vector<double>>& t) const {
    for (auto& v : t) v.assign(g.size(), 0.0);
    const double w = params_.omega;
    const double lam = params_.lambda_crit;
    for (int iz = 0; iz < g.nz(); ++iz) {
        const double k2 = g.k2(iz);
        for (int ix = 0; ix < g.nx(); ++ix) {
            const double k1 = g.k1(ix);
            const std::size_t m = g.index(ix, iz);
            const double r2 = k1 * k1 + k2 * k2;
            if (r2 > 0.0) {
                const double f = kernel_f(std::sqrt(r2)).f;
                t[idx(Symbol::K0)][m] = k1 * k1 / r2 * f;
                t[idx(Symbol::L0)][m] = k1 * k2 / r2 * f;
                t[idx(Symbol::H0)][m] = k2 * k2 / r2 * f;
                const double den = (1.0 - lam) * k1 * k1 + k2 * k2;
                t[idx(Symbol::MDs)][m] = den > 0.0 ? k1 * k1 / den : 0.0;
            }
            const double dp = (k1 - w) * (k1 - w) + k2 * k2;
            const double dm = (k1 + w) * (k1 + w) + k2 * k2;
            const double chip = dp < delta_ * delta_ ? 1.0 : 0.0;
            const double chim = dm < delta_ * delta_ ? 1.0 : 0.0;
            t[idx(Symbol::ChiPlus)][m] = chip;
            t[idx(Symbol::ChiMinus)][m] = chim;
            const double chi = chip + chim;
            t[idx(Symbol::Chi)][m] = chi;
            const double gt = symbol_gtilde(k1, k2, params_);
            const double gt2 = symbol_gtilde2(k1, k2, params_);
            t[idx(Symbol::Gtilde)][m] = gt;
            t[idx(Symbol::Gtilde2)][m] = gt2;
            // gtilde vanishes quadratically at +-(omega,0) with the same
            // Hessian as gtilde2: the ratio has limit 1 there
            const bool at_center = gt < 1e-12;
            t[idx(Symbol::RedF)][m] = (chi > 0.0 || at_center) ? 0.0 : (1.0 - chi) / gt;
            t[idx(Symbol::Cov)][m] = chi > 0.0 ? (at_center ? 1.0 : std::sqrt(gt2 / gt)) : 0.0;
        }
    }
}

const std::vector<double>& MultiplierBank::table(Symbol s) const {
    return coarse_[idx(s)];
}

const std::vector<double>& MultiplierBank::fine_table(Symbol s) const {
    return fine_tables_[idx(s)];
}

void MultiplierBank::apply_inplace(const SpectralGrid& g, std::vector<cplx>& spec,
                                   Symbol s) const {
    const std::vector<double>* t = nullptr;
    if (g == grid_) {
        t = &coarse_[idx(s)];
    } else if (g == fine_) {
        t = &fine_tables_[idx(s)];
    } else {
        throw GridMismatchError("apply_inplace: grid not covered by this bank");
    }
    if (spec.size() != t->size()) throw ShapeError("apply_inplace: spectrum size mismatch");
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= (*t)[i];
}

RealField2D MultiplierBank::apply(const RealField2D& f, Symbol s) const {
    if (f.grid != grid_ && f.grid != fine_) {
        throw GridMismatchError("apply: field grid not covered by this bank");
    }
    std::vector<cplx> spec = fft(f);
    apply_inplace(f.grid, spec, s);
    return ifft_real(f.grid, spec);
}

ComplexField2D MultiplierBank::apply(const ComplexField2D& f, Symbol s) const {
    if (f.grid != grid_ && f.grid != fine_) {
        throw GridMismatchError("apply: field grid not covered by this bank");
    }
    std::vector<cplx> spec = fft(f);
    apply_inplace(f.grid, spec, s);
    return ifft(f.grid, spec);
}

SpectrumSplit split_spectrum(const RealField2D& eta, const MultiplierBank& bank) {
    if (eta.grid != bank.grid()) throw GridMismatchError("split_spectrum: wrong grid");
    if (bank.modes_in_plus_ball() < 8 || bank.modes_in_minus_ball() < 8) {
        throw ResolutionError("fewer than 8 modes in a delta-ball; grid too coarse (" +
                              std::to_string(bank.modes_in_plus_ball()) + "/" +
                              std::to_string(bank.modes_in_minus_ball()) + ")");
    }
    std::vector<cplx> spec = fft(eta);
    std::vector<cplx> plus(spec);
    bank.apply_inplace(eta.grid, plus, Symbol::ChiPlus);
    SpectrumSplit out;
    out.eta1_plus = ifft(eta.grid, plus);
    out.eta1_minus = conj(out.eta1_plus);
    std::vector<cplx> rest(spec);
    bank.apply_inplace(eta.grid, rest, Symbol::Chi);
    for (std::size_t i = 0; i < spec.size(); ++i) rest[i] = spec[i] - rest[i];
    out.eta2 = ifft_real(eta.grid, rest);
    return out;
}

}  // namespace dslump
