#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "macpsk/adaptation.hpp"

namespace macpsk {

enum class ErrorMetric { joint, per_user };

const char* to_string(ErrorMetric m);

struct SimConfig {
    int order = 4;
    double delta = 0.0;  // 0 disables adaptation
    std::vector<double> snr_db;  // per-user SNR = P / sigma^2 with P = 1
    std::int64_t trials_per_snr = 0;
    std::uint64_t seed = 0;
    ErrorMetric metric = ErrorMetric::joint;
    int workers = 0;          // 0: hardware concurrency (MACPSK_MAX_THREADS caps)
    bool force_delta = false;  // allow delta above the rotation bound
};

struct SerPoint {
    double snr_db = 0.0;
    double ser = 0.0;
    std::int64_t trials = 0;  // decisions behind the estimate (2x per per_user point)
    double ci95 = 0.0;        // 1.96 * sqrt(p*(1-p)/trials)
};

using SerCurve = std::vector<SerPoint>;

struct SweepResult {
    SerCurve adaptive;
    SerCurve baseline;  // same draws, rotation disabled
};

/// Everything the per-trial path needs, precomputed once per sweep.
struct LinkContext {
    const MpskModel* model = nullptr;
    RotationPolicy policy;
    std::vector<ViolationCircle> circles;  // empty when delta == 0
    std::vector<cplx> factors;             // rotation factor per circle
};

LinkContext make_context(const MpskModel& m, double delta);

/// Joint ML decision over all M^2 symbol pairs for y = g1*s_m + g2*s_n + z.
/// Ties resolve to the lowest label q = m + M*(n-1).
std::pair<int, int> ml_detect(const Constellation& c, cplx y, cplx g1, cplx g2);

struct TrialOutcome {
    bool adaptive_joint = false;
    bool adaptive_user1 = false;
    bool adaptive_user2 = false;
    bool baseline_joint = false;
    bool baseline_user1 = false;
    bool baseline_user2 = false;
};

/// One fading-block trial: channel and noise draws, destination-side
/// quantization and feedback, rotation, joint ML detection. The baseline arm
/// reuses the same draws with rotation off.
TrialOutcome run_trial(const LinkContext& ctx, double sigma2, std::uint64_t seed,
                       std::uint64_t snr_index, std::uint64_t trial_index);

SweepResult run_sweep(const MpskModel& m, const SimConfig& cfg);

struct insufficient_range_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// SNR (dB) at which the curve crosses the target error rate, by log-linear
/// interpolation between the first bracketing samples.
double snr_at_ser(const SerCurve& curve, double target_ser);

/// baseline crossing minus adaptive crossing, in dB.
double interpolate_gain(const SerCurve& adaptive, const SerCurve& baseline, double target_ser);

}  // namespace macpsk
