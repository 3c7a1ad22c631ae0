#include "macpsk/quantizer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace macpsk {

std::vector<ViolationCircle> violation_circles(const MpskModel& m, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("distance guarantee must be positive");
    }
    std::vector<ViolationCircle> circles;
    circles.reserve(m.singular.wedge.size());
    for (int i = 1; i <= m.n_wedge(); ++i) {
        const auto& s = m.wedge_state(i);
        ViolationCircle vc;
        vc.index = i;
        vc.center = s.location;
        vc.delta = delta;
        vc.delta_s2 = s.delta_s2;
        vc.radius = delta / s.delta_s2;
        vc.minimal_class = s.minimal_class;
        circles.push_back(vc);
    }
    return circles;
}

std::optional<int> classify(const CanonicalFadeState& cs,
                            const std::vector<ViolationCircle>& circles) {
    const cplx p = cs.value();
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& vc : circles) {
        const double d = std::abs(p - vc.center.value());
        if (d < vc.radius && d < best_dist) {
            best = vc.index;
            best_dist = d;
        }
    }
    if (best == 0) return std::nullopt;
    return best;
}

namespace {

int index_bits(int n_wedge) {
    int bits = 0;
    while ((1 << bits) < n_wedge + 1) ++bits;
    return bits;
}

}  // namespace

int feedback_bits(int n_wedge) {
    if (n_wedge < 1) throw std::invalid_argument("need at least one violation circle");
    return index_bits(n_wedge) + 1;
}

std::string encode_feedback(const FeedbackMessage& msg, int n_wedge) {
    const int value = msg.circle.value_or(0);
    if (value < 0 || value > n_wedge) {
        throw std::invalid_argument("circle index outside [1, N_W]: " + std::to_string(value));
    }
    const int bits = index_bits(n_wedge);
    std::string out;
    out.reserve(static_cast<size_t>(bits) + 1);
    out.push_back(msg.swapped ? '1' : '0');
    for (int i = bits - 1; i >= 0; --i) {
        out.push_back((value >> i) & 1 ? '1' : '0');
    }
    return out;
}

FeedbackMessage decode_feedback(const std::string& bits, int n_wedge) {
    const int expected = feedback_bits(n_wedge);
    if (static_cast<int>(bits.size()) != expected) {
        throw std::invalid_argument("feedback message must be " + std::to_string(expected) +
                                    " bits, got " + std::to_string(bits.size()));
    }
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("feedback message must be binary");
        }
    }
    FeedbackMessage msg;
    msg.swapped = bits[0] == '1';
    int value = 0;
    for (size_t i = 1; i < bits.size(); ++i) value = (value << 1) | (bits[i] == '1');
    if (value > n_wedge) {
        throw std::invalid_argument("decoded circle index " + std::to_string(value) +
                                    " exceeds N_W = " + std::to_string(n_wedge));
    }
    if (value > 0) msg.circle = value;
    return msg;
}

double QuantizationMap::gamma_at(int ig) const {
    return gamma_min + (ig + 0.5) * (gamma_max - gamma_min) / gamma_cells;
}

double QuantizationMap::theta_at(int it) const {
    return theta_min + (it + 0.5) * (theta_max - theta_min) / theta_cells;
}

QuantizationMap quantization_map(const MpskModel& m, const RasterSpec& spec) {
    if (spec.gamma_cells < 1 || spec.theta_cells < 1) {
        throw std::invalid_argument("raster must have at least one cell per axis");
    }
    if (!(spec.gamma_max > 1.0)) {
        throw std::invalid_argument("raster gamma_max must exceed 1");
    }
    QuantizationMap map;
    map.gamma_cells = spec.gamma_cells;
    map.theta_cells = spec.theta_cells;
    map.gamma_min = 1.0;
    map.gamma_max = spec.gamma_max;
    map.theta_min = 0.0;
    map.theta_max = std::numbers::pi / m.constellation.order;
    map.argmin_class.resize(static_cast<size_t>(spec.gamma_cells) * spec.theta_cells);
    map.dmin.resize(map.argmin_class.size());

    for (int ig = 0; ig < spec.gamma_cells; ++ig) {
        const double g = map.gamma_at(ig);
        for (int it = 0; it < spec.theta_cells; ++it) {
            const auto md = min_distance(m, {g, map.theta_at(it)});
            const size_t idx = static_cast<size_t>(ig) * spec.theta_cells + it;
            map.argmin_class[idx] = md.class_id;
            map.dmin[idx] = md.value;
        }
    }
    return map;
}

QuantizationMap extend_full_plane(const QuantizationMap& wedge_map, int order) {
    const int t = wedge_map.theta_cells;
    QuantizationMap full;
    full.gamma_cells = wedge_map.gamma_cells;
    full.theta_cells = 2 * order * t;
    full.gamma_min = wedge_map.gamma_min;
    full.gamma_max = wedge_map.gamma_max;
    full.theta_min = 0.0;
    full.theta_max = 2.0 * std::numbers::pi;
    full.argmin_class.resize(static_cast<size_t>(full.gamma_cells) * full.theta_cells);
    full.dmin.resize(full.argmin_class.size());

    for (int ig = 0; ig < full.gamma_cells; ++ig) {
        for (int jt = 0; jt < full.theta_cells; ++jt) {
            const int in_wedge_pair = jt % (2 * t);
            const int src = in_wedge_pair < t ? in_wedge_pair : 2 * t - 1 - in_wedge_pair;
            const size_t from = static_cast<size_t>(ig) * t + src;
            const size_t to = static_cast<size_t>(ig) * full.theta_cells + jt;
            full.argmin_class[to] = wedge_map.argmin_class[from];
            full.dmin[to] = wedge_map.dmin[from];
        }
    }
    return full;
}

}  // namespace macpsk
