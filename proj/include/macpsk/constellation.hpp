#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace macpsk {

using cplx = std::complex<double>;

/// Fade state (gamma, theta), standing for the complex ratio gamma*e^{j*theta}
/// of the two channel gains.
struct FadeState {
    double gamma = 0.0;
    double theta = 0.0;  // radians

    cplx value() const { return std::polar(gamma, theta); }
};

/// Symmetric M-PSK signal set, M a power of two. Point k (1-based) sits at
/// angle (k-1)*2*pi/M, so the set has unit average energy.
struct Constellation {
    int order = 0;
    std::vector<cplx> points;

    const cplx& point(int k) const;  // 1-based, throws on out-of-range
    double dmin() const;             // sqrt(2*(1 - cos(2*pi/M)))
};

Constellation mpsk(int order);

// Label of the sum-constellation point built from user-1 point m and user-2
// point n: q = m + M*(n-1). Everything 1-based.
int eff_index(int m, int n, int order);
std::pair<int, int> eff_unpack(int q, int order);

/// One point of the effective constellation S + gamma*e^{j*theta}*S.
cplx eff_point(const Constellation& c, int m, int n, const FadeState& fs);

/// All M^2 effective-constellation points, element q-1 holding label q.
std::vector<cplx> eff_constellation(const Constellation& c, const FadeState& fs);

}  // namespace macpsk
