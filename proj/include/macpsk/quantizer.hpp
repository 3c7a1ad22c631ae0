#pragma once

#include <optional>
#include <string>
#include <vector>

#include "macpsk/geometry.hpp"

namespace macpsk {

/// Disk around a wedge singular fade state inside which the minimum distance
/// of the effective constellation drops below the guarantee delta.
struct ViolationCircle {
    int index = 0;  // 1..N_W
    FadeState center;
    double radius = 0.0;  // delta / delta_s2
    double delta = 0.0;
    double delta_s2 = 0.0;
    int minimal_class = 0;  // 1-based class id
};

/// One circle per wedge singular state. delta above the rotation bound is
/// allowed (experimental overrides); delta <= 0 is not.
std::vector<ViolationCircle> violation_circles(const MpskModel& m, double delta);

/// Index of the circle strictly containing the canonical fade state, if any.
/// A state inside several circles (possible only past the delta bound) maps
/// to the nearest center, lower index on ties.
std::optional<int> classify(const CanonicalFadeState& cs,
                            const std::vector<ViolationCircle>& circles);

struct FeedbackMessage {
    bool swapped = false;
    std::optional<int> circle;  // 1..N_W, absent = outside every circle
};

/// ceil(log2(N_W + 1)) + 1
int feedback_bits(int n_wedge);
std::string encode_feedback(const FeedbackMessage& msg, int n_wedge);
FeedbackMessage decode_feedback(const std::string& bits, int n_wedge);

struct RasterSpec {
    int gamma_cells = 600;
    int theta_cells = 600;
    double gamma_max = 4.0;
};

/// Cell-centered raster of the fade-state plane. Wedge rasters span
/// gamma in [1, gamma_max], theta in [0, pi/M].
struct QuantizationMap {
    int gamma_cells = 0;
    int theta_cells = 0;
    double gamma_min = 1.0;
    double gamma_max = 0.0;
    double theta_min = 0.0;
    double theta_max = 0.0;

    std::vector<int> argmin_class;  // 1-based class ids, row-major [ig][it]
    std::vector<double> dmin;

    double gamma_at(int ig) const;
    double theta_at(int it) const;
    int at(int ig, int it) const { return argmin_class[static_cast<size_t>(ig) * theta_cells + it]; }
    double dmin_at(int ig, int it) const { return dmin[static_cast<size_t>(ig) * theta_cells + it]; }
};

QuantizationMap quantization_map(const MpskModel& m, const RasterSpec& spec);

/// Extend a wedge raster to theta in [0, 2*pi) by mirroring about the wedge
/// bisector and repeating the doubled wedge M times.
QuantizationMap extend_full_plane(const QuantizationMap& wedge_map, int order);

}  // namespace macpsk
