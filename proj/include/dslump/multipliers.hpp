#ifndef DSLUMP_MULTIPLIERS_HPP
#define DSLUMP_MULTIPLIERS_HPP

#include <vector>

#include "dslump/dispersion.hpp"
#include "dslump/field.hpp"
#include "dslump/fft.hpp"

namespace dslump {

enum class Symbol {
    K0,        // (k1^2/|k|^2) f(|k|)
    L0,        // (k1 k2/|k|^2) f(|k|)
    H0,        // (k2^2/|k|^2) f(|k|)
    ChiPlus,   // indicator of B_delta(omega, 0)
    ChiMinus,  // indicator of B_delta(-omega, 0)
    Chi,       // ChiPlus + ChiMinus
    MDs,       // k1^2/((1-lambda)k1^2 + k2^2)
    RedF,      // (1 - chi)/gtilde
    Cov,       // chi * sqrt(gtilde2/gtilde), limit value 1 at +-(omega,0)
    Gtilde,    // 1 + beta|k|^2 - lambda (k1^2/|k|^2) f(|k|)
    Gtilde2,   // second-order Taylor polynomial of gtilde at +-(omega,0)
};

/// Precomputed per-mode symbol arrays on a grid and on its 2x dealiasing
/// partner. All symbols are real and even under k -> -k; the direction
/// factors are assigned 0 at k = (0,0).
class MultiplierBank {
  public:
    MultiplierBank(const SpectralGrid& grid, const DispersionParams& params,
                   double delta);

    const SpectralGrid& grid() const { return grid_; }
    const SpectralGrid& fine_grid() const { return fine_; }
    const DispersionParams& params() const { return params_; }
    double delta() const { return delta_; }

    const std::vector<double>& table(Symbol s) const;
    const std::vector<double>& fine_table(Symbol s) const;

    // pointwise spectral multiplication; ShapeError on grid mismatch
    RealField2D apply(const RealField2D& f, Symbol s) const;
    ComplexField2D apply(const ComplexField2D& f, Symbol s) const;
    void apply_inplace(const SpectralGrid& g, std::vector<cplx>& spec, Symbol s) const;

    int modes_in_plus_ball() const { return modes_plus_; }
    int modes_in_minus_ball() const { return modes_minus_; }

  private:
    void build(const SpectralGrid& g, std::vector<std::vector<double>>& tables) const;

    SpectralGrid grid_;
    SpectralGrid fine_;
    DispersionParams params_;
    double delta_;
    std::vector<std::vector<double>> coarse_;
    std::vector<std::vector<double>> fine_tables_;
    int modes_plus_ = 0;
    int modes_minus_ = 0;
};

/// Splits a real field into the carrier parts eta1+ (spectrum in the
/// +omega ball), eta1- = conj(eta1+), and the remainder eta2.
struct SpectrumSplit {
    ComplexField2D eta1_plus;
    ComplexField2D eta1_minus;
    RealField2D eta2;
};

// Throws ResolutionError if either delta-ball holds fewer than 8 modes.
SpectrumSplit split_spectrum(const RealField2D& eta, const MultiplierBank& bank);

}  // namespace dslump

#endif
