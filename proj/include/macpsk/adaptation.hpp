#pragma once

#include <vector>

#include "macpsk/quantizer.hpp"

namespace macpsk {

enum class RotationDirection { clockwise, anticlockwise };

const char* to_string(RotationDirection d);

/// Optimal constellation rotation for one violation circle: the phase
/// theta_opt maximizing the minimum distance along the arc gamma = gamma_i,
/// and the rotation magnitude/direction that moves the circle there.
struct CircleRotation {
    int index = 0;        // circle index, 1..N_W
    double theta_opt = 0.0;  // radians, in [0, pi/M]
    double alpha_opt = 0.0;  // rotation magnitude, radians
    RotationDirection direction = RotationDirection::anticlockwise;
    double achieved_dmin = 0.0;  // min distance at (gamma_i, theta_opt)

    double signed_alpha() const {
        return direction == RotationDirection::anticlockwise ? alpha_opt : -alpha_opt;
    }
};

/// One term of the non-overlap bound: a shifted circle against a singular
/// state anywhere in the gamma >= 1 plane.
struct DeltaMaxTerm {
    int circle = 0;     // 1..N_W
    int singular = 0;   // 1-based index into SingularSet::nonzero
    double distance = 0.0;  // plane distance between shifted center and state
    double bound = 0.0;     // distance / (1/ds2_circle + 1/ds2_state)
};

struct RotationPolicy {
    std::vector<CircleRotation> circles;  // one per wedge circle, in order
    double delta_max = 0.0;
    std::vector<DeltaMaxTerm> binding;  // every term attaining delta_max
};

CircleRotation optimal_rotation(const MpskModel& m, int circle_index);
RotationPolicy compute_policy(const MpskModel& m);

/// What the transmitters do with a decoded feedback message. user == 0 means
/// nobody rotates; the factor multiplies the rotating user's signal set.
struct RotationInstruction {
    int user = 0;  // 0 (none), 1 or 2
    double alpha = 0.0;
    RotationDirection direction = RotationDirection::anticlockwise;
    cplx factor{1.0, 0.0};
};

RotationInstruction apply_rotation(const FeedbackMessage& msg, const RotationPolicy& policy);

}  // namespace macpsk
