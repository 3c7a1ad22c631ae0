#include "macpsk/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace macpsk {

namespace {

constexpr double kCoeffTol = 1e-9;   // coefficient / probe-point agreement
constexpr double kDedupTol = 1e-9;   // singular-state deduplication
constexpr double kClampTol = 1e-12;  // roundoff allowance at collapse points

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

}  // namespace

cplx CanonicalFadeState::canonicalized_input() const {
    const double period = 2.0 * std::numbers::pi / order;
    double theta = reflected ? period - fade.theta : fade.theta;
    return std::polar(fade.gamma, theta + wedge * period);
}

CanonicalFadeState canonicalize(cplx h1, cplx h2, int order) {
    if (!(std::abs(h1) > 0.0) || !(std::abs(h2) > 0.0)) {
        throw degenerate_channel_error("zero channel gain");
    }
    return canonicalize_ratio(h2 / h1, order);
}

CanonicalFadeState canonicalize_ratio(cplx ratio, int order) {
    const double mag = std::abs(ratio);
    if (!(mag > 0.0) || !std::isfinite(mag)) {
        throw degenerate_channel_error("fade ratio is zero or non-finite");
    }
    CanonicalFadeState cs;
    cs.order = order;
    cplx v = ratio;
    if (mag < 1.0) {
        cs.swapped = true;
        v = 1.0 / v;
    }
    cs.fade.gamma = std::abs(v);

    const double period = 2.0 * std::numbers::pi / order;
    const double phase = wrap_angle(std::arg(v));
    int k = static_cast<int>(std::floor(phase / period));
    if (k >= order) k = order - 1;
    double residue = phase - k * period;
    residue = std::clamp(residue, 0.0, period);
    cs.wedge = k;

    const double half = std::numbers::pi / order;
    if (residue > half) {
        cs.reflected = true;
        cs.fade.theta = period - residue;
    } else {
        cs.fade.theta = residue;
    }
    return cs;
}

double DistanceClass::sq_distance(const FadeState& fs) const {
    return a + fs.gamma * fs.gamma * b + r * fs.gamma * std::cos(fs.theta + psi);
}

double DistanceClass::distance(const FadeState& fs) const {
    double sq = sq_distance(fs);
    if (sq < 0.0) {
        if (sq < -kClampTol) {
            throw std::logic_error("class distance radicand below roundoff floor: " +
                                   std::to_string(sq));
        }
        sq = 0.0;
    }
    return std::sqrt(sq);
}

bool DistanceClass::vanishes_nonzero() const { return a > kCoeffTol && b > kCoeffTol; }

cplx DistanceClass::collapse_point() const {
    return std::polar(std::sqrt(a / b), std::numbers::pi - psi);
}

std::vector<DistanceClass> enumerate_classes(const Constellation& c) {
    const int order = c.order;
    const int n_eff = order * order;
    const double half = std::numbers::pi / order;

    // Probe grid used to confirm that a candidate member really shares the
    // class function, not just the coefficient tuple.
    const std::array<double, 4> gamma_probe{1.0, 1.3, 2.1, 3.7};
    const std::array<double, 4> theta_probe{0.0, half / 3.0, half / 2.0, half};

    std::vector<DistanceClass> classes;
    for (int q1 = 1; q1 <= n_eff; ++q1) {
        const auto [m1, n1] = eff_unpack(q1, order);
        for (int q2 = q1 + 1; q2 <= n_eff; ++q2) {
            const auto [m2, n2] = eff_unpack(q2, order);
            const cplx d1 = c.point(m1) - c.point(m2);
            const cplx d2 = c.point(n1) - c.point(n2);
            const double a = std::norm(d1);
            const double b = std::norm(d2);
            const double r = 2.0 * std::sqrt(a * b);
            const double psi = r > kCoeffTol ? std::arg(d2) - std::arg(d1) : 0.0;
            const cplx psi_dir = std::polar(1.0, psi);

            DistanceClass* home = nullptr;
            for (auto& cl : classes) {
                if (std::abs(cl.a - a) > kCoeffTol || std::abs(cl.b - b) > kCoeffTol ||
                    std::abs(cl.r - r) > kCoeffTol) {
                    continue;
                }
                if (r > kCoeffTol && std::abs(std::polar(1.0, cl.psi) - psi_dir) > kCoeffTol) {
                    continue;
                }
                // Functional agreement at the probe grid settles membership.
                bool agree = true;
                for (double g : gamma_probe) {
                    for (double t : theta_probe) {
                        const double direct = std::norm(d1 + std::polar(g, t) * d2);
                        if (std::abs(cl.sq_distance({g, t}) - direct) > kCoeffTol) {
                            agree = false;
                            break;
                        }
                    }
                    if (!agree) break;
                }
                if (agree) {
                    home = &cl;
                    break;
                }
            }
            if (home == nullptr) {
                DistanceClass cl;
                cl.a = a;
                cl.b = b;
                cl.r = r;
                cl.psi = psi;
                cl.representative = {q1, q2};
                classes.push_back(std::move(cl));
                home = &classes.back();
            }
            home->members.emplace_back(q1, q2);
            const auto& rep = home->representative;
            if (q1 + q2 < rep.first + rep.second ||
                (q1 + q2 == rep.first + rep.second && q1 < rep.first)) {
                home->representative = {q1, q2};
            }
        }
    }

    std::sort(classes.begin(), classes.end(), [](const DistanceClass& x, const DistanceClass& y) {
        const int sx = x.representative.first + x.representative.second;
        const int sy = y.representative.first + y.representative.second;
        if (sx != sy) return sx < sy;
        return x.representative.first < y.representative.first;
    });
    for (auto& cl : classes) std::sort(cl.members.begin(), cl.members.end());
    return classes;
}

SingularSet enumerate_singular(const Constellation& c,
                               const std::vector<DistanceClass>& classes) {
    SingularSet out;
    std::vector<int> zero_classes;

    for (size_t i = 0; i < classes.size(); ++i) {
        const auto& cl = classes[i];
        const int id = static_cast<int>(i) + 1;
        if (cl.b <= kCoeffTol) continue;  // constant in gamma, never collapses
        if (cl.a <= kCoeffTol) {          // collapses only at the origin
            zero_classes.push_back(id);
            continue;
        }
        const cplx z = cl.collapse_point();
        SingularFadeState* home = nullptr;
        for (auto& s : out.nonzero) {
            if (std::abs(s.value - z) < kDedupTol) {
                home = &s;
                break;
            }
        }
        if (home == nullptr) {
            SingularFadeState s;
            s.value = z;
            s.location.gamma = std::abs(z);
            double theta = wrap_angle(std::arg(z));
            if (theta >= 2.0 * std::numbers::pi - kDedupTol) theta = 0.0;
            s.location.theta = theta;
            out.nonzero.push_back(std::move(s));
            home = &out.nonzero.back();
        }
        home->vanishing_classes.push_back(id);
    }

    auto fill_minimal = [&](SingularFadeState& s) {
        std::sort(s.vanishing_classes.begin(), s.vanishing_classes.end());
        double best_b = std::numeric_limits<double>::infinity();
        for (int id : s.vanishing_classes) {
            const double bb = classes[static_cast<size_t>(id) - 1].b;
            if (bb < best_b) {
                best_b = bb;
                s.minimal_class = id;
            }
        }
        s.delta_s2 = std::sqrt(best_b);
    };
    for (auto& s : out.nonzero) fill_minimal(s);

    if (!zero_classes.empty()) {
        SingularFadeState z;
        z.value = 0.0;
        z.location = {0.0, 0.0};
        z.vanishing_classes = zero_classes;
        double best_b = std::numeric_limits<double>::infinity();
        for (int id : z.vanishing_classes) {
            const double bb = classes[static_cast<size_t>(id) - 1].b;
            if (bb < best_b) {
                best_b = bb;
                z.minimal_class = id;
            }
        }
        z.delta_s2 = std::sqrt(best_b);
        out.zero = std::move(z);
    }

    std::sort(out.nonzero.begin(), out.nonzero.end(),
              [](const SingularFadeState& x, const SingularFadeState& y) {
                  if (std::abs(x.location.theta - y.location.theta) > kDedupTol) {
                      return x.location.theta < y.location.theta;
                  }
                  return x.location.gamma < y.location.gamma;
              });

    const double half = std::numbers::pi / c.order;
    std::vector<int> on_axis;
    std::vector<int> on_bisector;
    for (size_t i = 0; i < out.nonzero.size(); ++i) {
        const auto& loc = out.nonzero[i].location;
        if (loc.gamma < 1.0 - kDedupTol) continue;
        if (loc.theta <= kDedupTol) {
            on_axis.push_back(static_cast<int>(i));
        } else if (std::abs(loc.theta - half) <= kDedupTol) {
            on_bisector.push_back(static_cast<int>(i));
        }
    }
    auto by_gamma = [&](int x, int y) {
        return out.nonzero[static_cast<size_t>(x)].location.gamma <
               out.nonzero[static_cast<size_t>(y)].location.gamma;
    };
    std::sort(on_axis.begin(), on_axis.end(), by_gamma);
    std::sort(on_bisector.begin(), on_bisector.end(), by_gamma);
    out.wedge = std::move(on_axis);
    out.wedge.insert(out.wedge.end(), on_bisector.begin(), on_bisector.end());
    return out;
}

MpskModel build_model(int order) {
    MpskModel m;
    m.constellation = mpsk(order);
    m.classes = enumerate_classes(m.constellation);
    m.singular = enumerate_singular(m.constellation, m.classes);

    const double cap_sq = m.constellation.dmin() * m.constellation.dmin();
    for (size_t i = 0; i < m.classes.size(); ++i) {
        const auto& cl = m.classes[i];
        if (cl.b <= kCoeffTol && cl.r <= kCoeffTol && std::abs(cl.a - cap_sq) <= kCoeffTol) {
            m.cap_class = static_cast<int>(i) + 1;
            break;
        }
    }
    return m;
}

MinDistance min_distance(const MpskModel& m, const FadeState& fs) {
    double best_sq = std::numeric_limits<double>::infinity();
    int best_id = 0;
    for (size_t i = 0; i < m.classes.size(); ++i) {
        const double sq = m.classes[i].sq_distance(fs);
        if (sq < best_sq) {
            best_sq = sq;
            best_id = static_cast<int>(i) + 1;
        }
    }
    if (best_sq < 0.0) {
        if (best_sq < -kClampTol) {
            throw std::logic_error("minimum distance radicand below roundoff floor");
        }
        best_sq = 0.0;
    }
    return {std::sqrt(best_sq), best_id};
}

const DistanceClass& min_vanishing_class(const MpskModel& m, const SingularFadeState& s) {
    return m.cls(s.minimal_class);
}

}  // namespace macpsk
