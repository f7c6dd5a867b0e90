#ifndef DSLUMP_PROFILE_DECOMP_HPP
#define DSLUMP_PROFILE_DECOMP_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dslump {

/// Lattice site in Z^2.
struct Site {
    int j1 = 0;
    int j2 = 0;
    auto operator<=>(const Site&) const = default;
};

/// Finitely supported map Z^2 -> R^d (one member of an l2(Z^2, H) sequence).
using LatticeEntry = std::map<Site, std::vector<double>>;

struct LatticeSequence {
    int d = 1;  // fiber dimension of H = R^d
    std::vector<LatticeEntry> entries;

    int length() const { return static_cast<int>(entries.size()); }
};

LatticeEntry translate(const LatticeEntry& e, Site w);
LatticeSequence translate_all(const LatticeSequence& s, Site w);

double entry_l2(const LatticeEntry& e);
double entry_linf(const LatticeEntry& e);  // sup over sites of the H-norm

struct DecompositionResult {
    int d = 1;
    std::vector<LatticeEntry> profiles;
    std::vector<std::vector<Site>> tracks;  // tracks[l][n]
    double residual_sup = 0.0;              // tail sup of the final residual
    double norm_gap = 0.0;                  // defect in the Pythagorean splitting
    double min_track_separation = 0.0;      // pairwise, at the last index
    bool tail_convergent = true;
    bool cap_hit = false;
    std::string diagnostic;
};

// Greedy translation-and-extract decomposition: recentre at the sup-norm
// site, average the recentred tail with a per-site stability check, subtract,
// repeat until the tail sup-norm drops to eps_cc or the profile-count cap
// 1 + eps_cc^-2 max_n |x_n|^2 is hit. A failed stability check at the
// recentring site marks the tail non-convergent (reported, not fatal).
DecompositionResult decompose(const LatticeSequence& seq, double eps_cc,
                              double tail_fraction = 0.25);

/// Straight-line translation track: w_n = start + (n-1) * velocity.
struct TrackSpec {
    Site start;
    Site velocity;
};

// x_n = sum_l T_{w_nl} profile_l + noise, deterministic per seed; noise is
// i.i.d. Gaussian of amplitude noise_amp on every occupied site.
LatticeSequence synthesize(const std::vector<LatticeEntry>& profiles,
                           const std::vector<TrackSpec>& tracks, double noise_amp,
                           std::uint64_t seed, int n_entries, int d);

}  // namespace dslump

#endif
