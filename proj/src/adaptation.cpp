#include "macpsk/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace macpsk {

const char* to_string(RotationDirection d) {
    return d == RotationDirection::clockwise ? "clockwise" : "anticlockwise";
}

namespace {

constexpr double kThetaTol = 1e-10;  // golden-section stopping width

// Maximize f on [a, b]; f is unimodal near the bracketed grid maximum.
double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > kThetaTol) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

CircleRotation optimal_rotation(const MpskModel& m, int circle_index) {
    if (circle_index < 1 || circle_index > m.n_wedge()) {
        throw std::invalid_argument("circle index out of range: " + std::to_string(circle_index));
    }
    const auto& s = m.wedge_state(circle_index);
    const double gi = s.location.gamma;
    const double half = std::numbers::pi / m.constellation.order;

    const std::function<double(double)> f = [&](double theta) {
        return min_distance(m, {gi, theta}).value;
    };

    const int grid = 2000;
    const double step = half / (grid - 1);
    int best_k = 0;
    double best_f = -1.0;
    for (int k = 0; k < grid; ++k) {
        const double v = f(k * step);
        if (v > best_f) {
            best_f = v;
            best_k = k;
        }
    }
    const double lo = std::max(0.0, (best_k - 1) * step);
    const double hi = std::min(half, (best_k + 1) * step);
    const double theta_opt = golden_max(f, lo, hi);

    CircleRotation cr;
    cr.index = circle_index;
    cr.theta_opt = theta_opt;
    cr.achieved_dmin = f(theta_opt);
    if (s.location.theta < half / 2.0) {  // circle centered on the theta = 0 line
        cr.direction = RotationDirection::anticlockwise;
        cr.alpha_opt = theta_opt;
    } else {  // centered on the wedge bisector theta = pi/M
        cr.direction = RotationDirection::clockwise;
        cr.alpha_opt = half - theta_opt;
    }
    return cr;
}

RotationPolicy compute_policy(const MpskModel& m) {
    RotationPolicy policy;
    policy.circles.reserve(static_cast<size_t>(m.n_wedge()));
    for (int i = 1; i <= m.n_wedge(); ++i) {
        policy.circles.push_back(optimal_rotation(m, i));
    }

    // Largest delta for which no shifted circle can touch any violation
    // circle. Every radius is linear in delta, so each (shifted circle,
    // singular state) pair yields the bound distance/(1/ds2_i + 1/ds2_z);
    // states with gamma < 1 never occur after canonicalization and are
    // excluded.
    std::vector<DeltaMaxTerm> terms;
    for (int i = 1; i <= m.n_wedge(); ++i) {
        const auto& s = m.wedge_state(i);
        const cplx shifted = std::polar(s.location.gamma, policy.circles[static_cast<size_t>(i) - 1].theta_opt);
        const double inv_i = 1.0 / s.delta_s2;
        for (size_t zi = 0; zi < m.singular.nonzero.size(); ++zi) {
            const auto& z = m.singular.nonzero[zi];
            if (z.location.gamma < 1.0 - 1e-9) continue;
            DeltaMaxTerm term;
            term.circle = i;
            term.singular = static_cast<int>(zi) + 1;
            term.distance = std::abs(shifted - z.value);
            term.bound = term.distance / (inv_i + 1.0 / z.delta_s2);
            terms.push_back(term);
        }
    }
    double delta_max = std::numeric_limits<double>::infinity();
    for (const auto& t : terms) delta_max = std::min(delta_max, t.bound);
    policy.delta_max = delta_max;
    for (const auto& t : terms) {
        if (t.bound <= delta_max + 1e-9) policy.binding.push_back(t);
    }
    return policy;
}

RotationInstruction apply_rotation(const FeedbackMessage& msg, const RotationPolicy& policy) {
    RotationInstruction ri;
    if (!msg.circle) return ri;
    const int i = *msg.circle;
    if (i < 1 || i > static_cast<int>(policy.circles.size())) {
        throw std::out_of_range("feedback circle index " + std::to_string(i) +
                                " outside the rotation policy");
    }
    const auto& cr = policy.circles[static_cast<size_t>(i) - 1];
    ri.user = msg.swapped ? 1 : 2;
    ri.alpha = cr.alpha_opt;
    ri.direction = cr.direction;
    ri.factor = std::polar(1.0, cr.signed_alpha());
    return ri;
}

}  // namespace macpsk
