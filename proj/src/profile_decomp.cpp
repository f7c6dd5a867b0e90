#include "dslump/profile_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "dslump/errors.hpp"

namespace dslump {

namespace {

double vec_norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x * x;
    return s;
}

}  // namespace

LatticeEntry translate(const LatticeEntry& e, Site w) {
    LatticeEntry out;
    for (const auto& [site, vec] : e) {
        out.emplace(Site{site.j1 + w.j1, site.j2 + w.j2}, vec);
    }
    return out;
}

LatticeSequence translate_all(const LatticeSequence& s, Site w) {
    LatticeSequence out;
    out.d = s.d;
    out.entries.reserve(s.entries.size());
    for (const auto& e : s.entries) out.entries.push_back(translate(e, w));
    return out;
}

double entry_l2(const LatticeEntry& e) {
    double s = 0.0;
    for (const auto& [site, vec] : e) s += vec_norm2(vec);
    return std::sqrt(s);
}

double entry_linf(const LatticeEntry& e) {
    double m = 0.0;
    for (const auto& [site, vec] : e) m = std::max(m, vec_norm2(vec));
    return std::sqrt(m);
}

namespace {

// argmax site of the H-norm; ties resolved to the lexicographically
// smallest site (std::map iterates in that order)
Site argmax_site(const LatticeEntry& e) {
    Site best{0, 0};
    double mx = -1.0;
    for (const auto& [site, vec] : e) {
        const double n = vec_norm2(vec);
        if (n > mx) {
            mx = n;
            best = site;
        }
    }
    return best;
}

void subtract_translated(LatticeEntry& x, const LatticeEntry& profile, Site w) {
    for (const auto& [site, vec] : profile) {
        const Site target{site.j1 + w.j1, site.j2 + w.j2};
        auto it = x.find(target);
        if (it == x.end()) {
            std::vector<double> neg(vec.size());
            for (std::size_t c = 0; c < vec.size(); ++c) neg[c] = -vec[c];
            x.emplace(target, std::move(neg));
        } else {
            bool all_zero = true;
            for (std::size_t c = 0; c < vec.size(); ++c) {
                it->second[c] -= vec[c];
                all_zero = all_zero && it->second[c] == 0.0;
            }
            if (all_zero) x.erase(it);
        }
    }
}

}  // namespace

DecompositionResult decompose(const LatticeSequence& seq, double eps_cc,
                              double tail_fraction) {
    if (seq.entries.empty()) throw DomainError("decompose: empty sequence");
    if (!(eps_cc > 0.0)) throw DomainError("decompose: eps_cc must be positive");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
        throw DomainError("decompose: tail_fraction must lie in (0, 1]");
    }
    const int n_total = seq.length();
    const int tail_len = std::min(
        n_total, std::max(2, static_cast<int>(std::ceil(tail_fraction * n_total))));
    const int tail_begin = n_total - tail_len;
    const double site_tol = eps_cc / 10.0;

    DecompositionResult res;
    res.d = seq.d;
    std::vector<LatticeEntry> residual = seq.entries;

    double max_l2_sq = 0.0;
    for (const auto& e : residual) {
        max_l2_sq = std::max(max_l2_sq, entry_l2(e) * entry_l2(e));
    }
    const double cap = 1.0 + max_l2_sq / (eps_cc * eps_cc);

    while (true) {
        double sup_tail = 0.0;
        for (int n = tail_begin; n < n_total; ++n) {
            sup_tail = std::max(sup_tail, entry_linf(residual[n]));
        }
        if (sup_tail <= eps_cc) break;
        if (static_cast<double>(res.profiles.size()) + 1.0 > cap) {
            res.cap_hit = true;
            res.diagnostic = "profile-count cap reached";
            break;
        }

        std::vector<Site> track(n_total);
        for (int n = 0; n < n_total; ++n) track[n] = argmax_site(residual[n]);

        // tail average of the recentred residual with a per-site stability check
        std::vector<LatticeEntry> recentred(tail_len);
        std::set<Site> support;
        for (int t = 0; t < tail_len; ++t) {
            const Site w = track[tail_begin + t];
            recentred[t] = translate(residual[tail_begin + t], Site{-w.j1, -w.j2});
            for (const auto& [site, vec] : recentred[t]) support.insert(site);
        }
        LatticeEntry profile;
        bool centre_stable = false;
        const std::vector<double> zero(seq.d, 0.0);
        for (const Site& site : support) {
            std::vector<double> mean(seq.d, 0.0);
            bool identical = true;
            const std::vector<double>* first = nullptr;
            for (int t = 0; t < tail_len; ++t) {
                auto it = recentred[t].find(site);
                const std::vector<double>& v = it == recentred[t].end() ? zero : it->second;
                if (first == nullptr) {
                    first = &v;
                } else if (identical) {
                    identical = v == *first;
                }
                for (int c = 0; c < seq.d; ++c) mean[c] += v[c];
            }
            for (int c = 0; c < seq.d; ++c) mean[c] /= tail_len;
            double dev = 0.0;
            for (int t = 0; t < tail_len; ++t) {
                auto it = recentred[t].find(site);
                const std::vector<double>& v = it == recentred[t].end() ? zero : it->second;
                double d2 = 0.0;
                for (int c = 0; c < seq.d; ++c) {
                    d2 += (v[c] - mean[c]) * (v[c] - mean[c]);
                }
                dev = std::max(dev, std::sqrt(d2));
            }
            const bool stable = dev <= site_tol;
            if (site == Site{0, 0}) centre_stable = stable;
            if (stable && std::sqrt(vec_norm2(mean)) > 0.0) {
                if (identical && first != nullptr) {
                    profile.emplace(site, *first);  // exact value, no averaging noise
                } else {
                    profile.emplace(site, mean);
                }
            }
        }
        if (!centre_stable || profile.empty()) {
            res.tail_convergent = false;
            res.diagnostic = "recentred tail is not Cauchy at the extraction site";
            break;
        }
        for (int n = 0; n < n_total; ++n) {
            subtract_translated(residual[n], profile, track[n]);
        }
        res.profiles.push_back(std::move(profile));
        res.tracks.push_back(std::move(track));
    }

    for (int n = tail_begin; n < n_total; ++n) {
        res.residual_sup = std::max(res.residual_sup, entry_linf(residual[n]));
    }
    // CC3 defect over the tail: |x_n|^2 vs sum of profile norms + residual
    double mean_x2 = 0.0, mean_r2 = 0.0;
    for (int n = tail_begin; n < n_total; ++n) {
        const double x2 = entry_l2(seq.entries[n]);
        const double r2 = entry_l2(residual[n]);
        mean_x2 += x2 * x2;
        mean_r2 += r2 * r2;
    }
    mean_x2 /= tail_len;
    mean_r2 /= tail_len;
    double profiles_sq = 0.0;
    for (const auto& pr : res.profiles) {
        const double n2 = entry_l2(pr);
        profiles_sq += n2 * n2;
    }
    res.norm_gap = std::abs(mean_x2 - profiles_sq - mean_r2);

    if (res.tracks.size() >= 2) {
        double sep = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < res.tracks.size(); ++a) {
            for (std::size_t b = a + 1; b < res.tracks.size(); ++b) {
                const Site wa = res.tracks[a].back();
                const Site wb = res.tracks[b].back();
                const double dx = wa.j1 - wb.j1, dz = wa.j2 - wb.j2;
                sep = std::min(sep, std::sqrt(dx * dx + dz * dz));
            }
        }
        res.min_track_separation = sep;
    }
    return res;
}

LatticeSequence synthesize(const std::vector<LatticeEntry>& profiles,
                           const std::vector<TrackSpec>& tracks, double noise_amp,
                           std::uint64_t seed, int n_entries, int d) {
    if (profiles.size() != tracks.size()) {
        throw DomainError("synthesize: one track spec per profile required");
    }
    if (n_entries < 1) throw DomainError("synthesize: n_entries must be >= 1");
    LatticeSequence out;
    out.d = d;
    out.entries.resize(n_entries);
    std::mt19937_64 rng(seed);
    auto gauss = [&rng]() {
        double u = 0.0;
        do {
            u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        } while (u <= 0.0);
        const double v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
    };
    for (int n = 0; n < n_entries; ++n) {
        LatticeEntry& x = out.entries[n];
        for (std::size_t l = 0; l < profiles.size(); ++l) {
            const Site w{tracks[l].start.j1 + n * tracks[l].velocity.j1,
                         tracks[l].start.j2 + n * tracks[l].velocity.j2};
            for (const auto& [site, vec] : profiles[l]) {
                if (static_cast<int>(vec.size()) != d) {
                    throw DomainError("synthesize: profile fiber dimension mismatch");
                }
                const Site target{site.j1 + w.j1, site.j2 + w.j2};
                auto it = x.find(target);
                if (it == x.end()) {
                    x.emplace(target, vec);
                } else {
                    for (int c = 0; c < d; ++c) it->second[c] += vec[c];
                }
            }
        }
        if (noise_amp > 0.0) {
            for (auto& [site, vec] : x) {
                for (int c = 0; c < d; ++c) vec[c] += noise_amp * gauss();
            }
        }
    }
    return out;
}

}  // namespace dslump
