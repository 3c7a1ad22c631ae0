// Independent references the unit and acceptance suites check the library
// against. Everything here works straight from definitions (exhaustive pair
// scans, quadrature) and never calls the code paths it verifies.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "macpsk/constellation.hpp"
#include "macpsk/rng.hpp"

namespace oracle {

using macpsk::cplx;

/// Minimum distance of S + r*S by scanning all M^2*(M^2-1)/2 point pairs.
inline double brute_force_dmin(const macpsk::Constellation& c, const macpsk::FadeState& fs) {
    const auto pts = eff_constellation(c, fs);
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            best = std::min(best, std::abs(pts[i] - pts[j]));
        }
    }
    return best;
}

/// As above, also reporting which (1-based) label pair attains the minimum.
inline std::pair<double, std::pair<int, int>> brute_force_argmin(
    const macpsk::Constellation& c, const macpsk::FadeState& fs) {
    const auto pts = eff_constellation(c, fs);
    double best = std::numeric_limits<double>::infinity();
    std::pair<int, int> arg{0, 0};
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            const double d = std::abs(pts[i] - pts[j]);
            if (d < best) {
                best = d;
                arg = {static_cast<int>(i) + 1, static_cast<int>(j) + 1};
            }
        }
    }
    return {best, arg};
}

/// Group all pairs by empirical function equality at random fade states.
/// Pairs land in one group iff their distances agree at every sample.
inline std::vector<std::vector<std::pair<int, int>>> brute_force_classes(
    const macpsk::Constellation& c, int samples, std::uint64_t seed) {
    macpsk::SplitMix64 rng(macpsk::substream_key(seed, 0, 0));
    std::vector<macpsk::FadeState> states;
    states.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        states.push_back({1.0 + 5.0 * rng.uniform01(),
                          2.0 * std::numbers::pi * rng.uniform01()});
    }

    const int n_eff = c.order * c.order;
    struct Entry {
        std::pair<int, int> pair;
        std::vector<double> profile;
    };
    std::vector<Entry> entries;
    for (int q1 = 1; q1 <= n_eff; ++q1) {
        for (int q2 = q1 + 1; q2 <= n_eff; ++q2) {
            const auto [m1, n1] = macpsk::eff_unpack(q1, c.order);
            const auto [m2, n2] = macpsk::eff_unpack(q2, c.order);
            Entry e;
            e.pair = {q1, q2};
            for (const auto& fs : states) {
                e.profile.push_back(std::abs(eff_point(c, m1, n1, fs) - eff_point(c, m2, n2, fs)));
            }
            entries.push_back(std::move(e));
        }
    }

    std::vector<std::vector<std::pair<int, int>>> groups;
    std::vector<std::vector<double>> profiles;
    for (const auto& e : entries) {
        bool placed = false;
        for (size_t g = 0; g < groups.size(); ++g) {
            bool same = true;
            for (size_t s = 0; s < e.profile.size(); ++s) {
                if (std::abs(e.profile[s] - profiles[g][s]) > 1e-9) {
                    same = false;
                    break;
                }
            }
            if (same) {
                groups[g].push_back(e.pair);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({e.pair});
            profiles.push_back(e.profile);
        }
    }
    return groups;
}

/// Exact symbol error probability of M-PSK over AWGN at the given Es/N0,
/// via the single-integral form evaluated with Simpson's rule.
inline double mpsk_awgn_ser(int order, double es_over_n0) {
    const double upper = std::numbers::pi * (order - 1) / order;
    const double s = std::sin(std::numbers::pi / order);
    const auto integrand = [&](double phi) {
        const double sp = std::sin(phi);
        return std::exp(-es_over_n0 * s * s / (sp * sp));
    };
    const int n = 2000;  // even
    const double h = upper / n;
    double sum = 0.0;
    for (int i = 1; i < n; ++i) sum += integrand(i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    // integrand vanishes at phi = 0 and is finite at the upper limit
    sum += integrand(upper);
    return sum * h / (3.0 * std::numbers::pi);
}

}  // namespace oracle
