#ifndef DSLUMP_LUMP_SOLVER_HPP
#define DSLUMP_LUMP_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "dslump/ds_core.hpp"
#include "dslump/multipliers.hpp"

namespace dslump {

struct InitialGuess {
    double amplitude = 1.0;    // pre-projection amplitude
    double width_scale = 2.0;  // multiplies sqrt(a1/a3), sqrt(a2/a3)
    double noise_amp = 1e-3;   // relative band-limited perturbation
    std::uint64_t seed = 1;
};

enum class StepRule { Fixed, AdaptiveBB };

struct SolverConfig {
    int nx = 256, nz = 256;
    double lx = 40.0 * 3.14159265358979323846;
    double lz = 40.0 * 3.14159265358979323846;
    InitialGuess init;
    StepRule step_rule = StepRule::AdaptiveBB;
    double fixed_step = 0.1;
    int max_iters = 2000;
    double tol_residual = 1e-7;
    int recentre_every = 10;
    double h1_diagnostic_bound = 1e4;  // flags runaway H1 growth only

    void validate() const;  // DomainError on bad entries
};

struct TracePoint {
    double T0;
    double residual;
};

struct SolveReport {
    ComplexField2D zeta;
    EnergyBreakdown breakdown;
    double residual = 0.0;
    int iterations = 0;
    std::vector<TracePoint> trace;
    bool converged = false;
    bool h1_bound_exceeded = false;
};

// Projected gradient descent on the Nehari set: Barzilai-Borwein steps with
// backtracking, closed-form ray projection after every step, periodic
// recentring of the peak. Returns converged=false after max_iters.
// Throws CollapseError if the iterate degenerates to zero.
SolveReport solve_ground_state(const SolverConfig& config, const DSCoefficients& coeffs);

// Independent cross-check optimiser: steepest descent with a dense step-size
// scan over the exact ray polynomials. Shares only the energy/gradient
// definitions with solve_ground_state.
SolveReport solve_ground_state_rayscan(const SolverConfig& config,
                                       const DSCoefficients& coeffs);

struct WavepacketResult {
    RealField2D eta1_tilde;  // 2 Re(eps/2 zeta(eps x) e^{i omega_c x}), untruncated
    RealField2D eta1;        // after the (gtilde2/gtilde)^(1/2) change of variables
    double truncated_mass = 0.0;    // relative spectral mass outside the chi balls
    double carrier_wavenumber = 0;  // omega rounded to the nearest grid mode
};

// Builds the wavepacket on the bank's physical grid; zeta lives on the
// matching grid in slow variables (same point counts, box scaled by eps).
// Throws ResolutionError if the carrier or the delta-balls are unresolved,
// TruncationError if more than 1% of the spectral mass falls outside chi.
WavepacketResult wavepacket(const ComplexField2D& zeta, double eps,
                            const DispersionParams& params, const MultiplierBank& bank);

struct ReconstructionResult {
    double epsilon = 0.0;
    double wave_speed = 0.0;
    RealField2D eta1;
    RealField2D eta2_approx;  // F(eta1)
    RealField2D eta;          // eta1 + F(eta1)
    double truncated_mass = 0.0;
};

ReconstructionResult reconstruct_surface(const ComplexField2D& zeta, double eps,
                                         const DispersionParams& params,
                                         const MultiplierBank& bank);

// Smallest power-of-two physical grid resolving the carrier, the chi balls
// and the second-harmonic band for a wavepacket at this eps.
SpectralGrid reconstruction_grid(const SpectralGrid& ds_grid, const DispersionParams& params,
                                 double delta, double eps);

// Spectral resampling onto a different resolution of the same box.
ComplexField2D resample(const ComplexField2D& f, const SpectralGrid& target);

}  // namespace dslump

#endif
