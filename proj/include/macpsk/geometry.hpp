#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "macpsk/constellation.hpp"

namespace macpsk {

struct degenerate_channel_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A fade state reduced to the canonical wedge: gamma >= 1 and
/// theta in [0, pi/M], together with the transform that got it there.
struct CanonicalFadeState {
    FadeState fade;        // gamma >= 1, theta in [0, pi/M]
    int order = 0;         // constellation order used for the reduction
    bool swapped = false;  // true: the reciprocal ratio h1/h2 was canonicalized
    int wedge = 0;         // k in [0, M-1]: which 2*pi/M wedge the phase fell in
    bool reflected = false;  // phase was mirrored about the wedge bisector

    cplx value() const { return fade.value(); }
    /// The ratio that was reduced (h2/h1, or h1/h2 when swapped).
    cplx canonicalized_input() const;
};

CanonicalFadeState canonicalize(cplx h1, cplx h2, int order);
CanonicalFadeState canonicalize_ratio(cplx ratio, int order);

/// Cell of the pair partition of the effective constellation: all point pairs
/// whose separation is the same function of the fade state,
///   d^2(gamma, theta) = a + gamma^2*b + r*gamma*cos(theta + psi),
/// with a = |ds1|^2, b = |ds2|^2, r = 2*|ds1|*|ds2| and psi the angle between
/// the two difference vectors.
struct DistanceClass {
    std::vector<std::pair<int, int>> members;  // (q, q') with q < q'
    std::pair<int, int> representative;        // smallest i+j, ties by smallest i
    double a = 0.0;
    double b = 0.0;
    double r = 0.0;
    double psi = 0.0;

    double sq_distance(const FadeState& fs) const;
    /// Clamped square root of sq_distance; radicands below -1e-12 are treated
    /// as an internal inconsistency.
    double distance(const FadeState& fs) const;

    /// True when the class collapses at some nonzero fade state.
    bool vanishes_nonzero() const;
    /// The fade value where the class collapses (requires vanishes_nonzero()).
    cplx collapse_point() const;
};

std::vector<DistanceClass> enumerate_classes(const Constellation& c);

/// A fade state at which at least one distance class collapses to zero,
/// shrinking the effective constellation below M^2 points.
struct SingularFadeState {
    FadeState location;                   // theta normalized to [0, 2*pi)
    cplx value;
    std::vector<int> vanishing_classes;   // 1-based class ids, ascending
    int minimal_class = 0;                // vanishing class with the smallest |ds2|^2
    double delta_s2 = 0.0;                // |ds2| of that class
};

struct SingularSet {
    /// Distinct nonzero collapse points over the whole complex plane
    /// (reciprocal states with gamma < 1 included).
    std::vector<SingularFadeState> nonzero;
    /// Indices (0-based, into nonzero) of the states in the wedge
    /// gamma >= 1, theta in [0, pi/M]; the theta = 0 states come first,
    /// each group ordered by ascending gamma.
    std::vector<int> wedge;
    /// The gamma = 0 state, kept out of all wedge/region logic.
    std::optional<SingularFadeState> zero;
};

SingularSet enumerate_singular(const Constellation& c,
                               const std::vector<DistanceClass>& classes);

/// Constellation plus everything derived from it.
struct MpskModel {
    Constellation constellation;
    std::vector<DistanceClass> classes;
    SingularSet singular;
    int cap_class = 0;  // 1-based id of the constant class equal to dmin(S)

    const DistanceClass& cls(int id) const { return classes.at(static_cast<size_t>(id) - 1); }
    const SingularFadeState& wedge_state(int i) const {  // 1-based
        return singular.nonzero.at(static_cast<size_t>(singular.wedge.at(static_cast<size_t>(i) - 1)));
    }
    int n_wedge() const { return static_cast<int>(singular.wedge.size()); }
};

MpskModel build_model(int order);

struct MinDistance {
    double value = 0.0;
    int class_id = 0;  // 1-based; ties resolved to the lowest id
};

MinDistance min_distance(const MpskModel& m, const FadeState& fs);

const DistanceClass& min_vanishing_class(const MpskModel& m, const SingularFadeState& s);

}  // namespace macpsk
