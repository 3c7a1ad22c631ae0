#include "macpsk/linksim.hpp"

#include <algorithm>

#include "macpsk/rng.hpp"
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace macpsk {

const char* to_string(ErrorMetric m) {
    return m == ErrorMetric::joint ? "joint" : "per_user";
}

LinkContext make_context(const MpskModel& m, double delta) {
    LinkContext ctx;
    ctx.model = &m;
    ctx.policy = compute_policy(m);
    if (delta > 0.0) {
        ctx.circles = violation_circles(m, delta);
        ctx.factors.reserve(ctx.circles.size());
        for (const auto& cr : ctx.policy.circles) {
            ctx.factors.push_back(std::polar(1.0, cr.signed_alpha()));
        }
    }
    return ctx;
}

std::pair<int, int> ml_detect(const Constellation& c, cplx y, cplx g1, cplx g2) {
    const int order = c.order;
    double best = std::numeric_limits<double>::infinity();
    int best_m = 1;
    int best_n = 1;
    // Scanned in label order q = m + M*(n-1); strict comparison keeps the
    // lowest label on ties.
    for (int n = 1; n <= order; ++n) {
        const cplx gn = g2 * c.points[static_cast<size_t>(n) - 1];
        for (int m = 1; m <= order; ++m) {
            const double d = std::norm(y - g1 * c.points[static_cast<size_t>(m) - 1] - gn);
            if (d < best) {
                best = d;
                best_m = m;
                best_n = n;
            }
        }
    }
    return {best_m, best_n};
}

TrialOutcome run_trial(const LinkContext& ctx, double sigma2, std::uint64_t seed,
                       std::uint64_t snr_index, std::uint64_t trial_index) {
    const Constellation& c = ctx.model->constellation;
    SplitMix64 rng(substream_key(seed, snr_index, trial_index));
    const cplx h1 = rng.cn(1.0);
    const cplx h2 = rng.cn(1.0);
    const cplx z = rng.cn(sigma2);
    const int m = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(c.order)));
    const int n = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(c.order)));

    cplx r1{1.0, 0.0};
    cplx r2{1.0, 0.0};
    if (!ctx.circles.empty()) {
        const auto cs = canonicalize(h1, h2, c.order);
        if (const auto circle = classify(cs, ctx.circles)) {
            const cplx f = ctx.factors[static_cast<size_t>(*circle) - 1];
            if (cs.swapped) {
                r1 = f;
            } else {
                r2 = f;
            }
        }
    }

    TrialOutcome out;
    {
        const cplx g1 = h1 * r1;
        const cplx g2 = h2 * r2;
        const cplx y = g1 * c.points[static_cast<size_t>(m) - 1] +
                       g2 * c.points[static_cast<size_t>(n) - 1] + z;
        const auto [dm, dn] = ml_detect(c, y, g1, g2);
        out.adaptive_user1 = dm != m;
        out.adaptive_user2 = dn != n;
        out.adaptive_joint = out.adaptive_user1 || out.adaptive_user2;
    }
    {
        const cplx y = h1 * c.points[static_cast<size_t>(m) - 1] +
                       h2 * c.points[static_cast<size_t>(n) - 1] + z;
        const auto [dm, dn] = ml_detect(c, y, h1, h2);
        out.baseline_user1 = dm != m;
        out.baseline_user2 = dn != n;
        out.baseline_joint = out.baseline_user1 || out.baseline_user2;
    }
    return out;
}

namespace {

int resolve_workers(int requested) {
    int workers = requested;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    if (const char* cap = std::getenv("MACPSK_MAX_THREADS")) {
        const int limit = std::atoi(cap);
        if (limit >= 1) workers = std::min(workers, limit);
    }
    return workers;
}

struct ErrorCounts {
    std::int64_t adaptive_joint = 0;
    std::int64_t adaptive_sym = 0;
    std::int64_t baseline_joint = 0;
    std::int64_t baseline_sym = 0;
};

SerPoint make_point(double snr_db, std::int64_t errors, std::int64_t decisions) {
    SerPoint pt;
    pt.snr_db = snr_db;
    pt.trials = decisions;
    pt.ser = static_cast<double>(errors) / static_cast<double>(decisions);
    pt.ci95 = 1.96 * std::sqrt(pt.ser * (1.0 - pt.ser) / static_cast<double>(decisions));
    return pt;
}

}  // namespace

SweepResult run_sweep(const MpskModel& m, const SimConfig& cfg) {
    if (cfg.order != m.constellation.order) {
        throw std::invalid_argument("config order does not match the model");
    }
    if (cfg.trials_per_snr < 1) {
        throw std::invalid_argument("trials_per_snr must be at least 1");
    }
    if (cfg.snr_db.empty()) {
        throw std::invalid_argument("empty SNR list");
    }
    if (cfg.delta < 0.0) {
        throw std::invalid_argument("delta must be nonnegative");
    }

    LinkContext ctx = make_context(m, cfg.delta);
    if (cfg.delta > ctx.policy.delta_max + 1e-12 && !cfg.force_delta) {
        throw std::invalid_argument("delta " + std::to_string(cfg.delta) +
                                    " exceeds the rotation bound " +
                                    std::to_string(ctx.policy.delta_max) +
                                    " (set the force flag to override)");
    }

    const int workers = resolve_workers(cfg.workers);
    SweepResult result;
    result.adaptive.reserve(cfg.snr_db.size());
    result.baseline.reserve(cfg.snr_db.size());

    for (size_t s = 0; s < cfg.snr_db.size(); ++s) {
        const double sigma2 = std::pow(10.0, -cfg.snr_db[s] / 10.0);
        const std::int64_t total = cfg.trials_per_snr;

        std::vector<ErrorCounts> counts(static_cast<size_t>(workers));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        const std::int64_t chunk = (total + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi, w, s, sigma2] {
                ErrorCounts local;
                for (std::int64_t t = lo; t < hi; ++t) {
                    const TrialOutcome o = run_trial(ctx, sigma2, cfg.seed,
                                                     static_cast<std::uint64_t>(s),
                                                     static_cast<std::uint64_t>(t));
                    local.adaptive_joint += o.adaptive_joint;
                    local.adaptive_sym += o.adaptive_user1 + o.adaptive_user2;
                    local.baseline_joint += o.baseline_joint;
                    local.baseline_sym += o.baseline_user1 + o.baseline_user2;
                }
                counts[static_cast<size_t>(w)] = local;
            });
        }
        for (auto& th : pool) th.join();

        ErrorCounts sum;
        for (const auto& cnt : counts) {
            sum.adaptive_joint += cnt.adaptive_joint;
            sum.adaptive_sym += cnt.adaptive_sym;
            sum.baseline_joint += cnt.baseline_joint;
            sum.baseline_sym += cnt.baseline_sym;
        }
        if (cfg.metric == ErrorMetric::joint) {
            result.adaptive.push_back(make_point(cfg.snr_db[s], sum.adaptive_joint, total));
            result.baseline.push_back(make_point(cfg.snr_db[s], sum.baseline_joint, total));
        } else {
            result.adaptive.push_back(make_point(cfg.snr_db[s], sum.adaptive_sym, 2 * total));
            result.baseline.push_back(make_point(cfg.snr_db[s], sum.baseline_sym, 2 * total));
        }
    }
    return result;
}

double snr_at_ser(const SerCurve& curve, double target_ser) {
    if (!(target_ser > 0.0)) {
        throw std::invalid_argument("target error rate must be positive");
    }
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
        const double p0 = curve[i].ser;
        const double p1 = curve[i + 1].ser;
        if (p0 <= 0.0 || p1 <= 0.0) continue;
        if ((p0 - target_ser) * (p1 - target_ser) > 0.0) continue;
        const double l0 = std::log10(p0);
        const double l1 = std::log10(p1);
        if (l0 == l1) return curve[i].snr_db;
        const double frac = (l0 - std::log10(target_ser)) / (l0 - l1);
        return curve[i].snr_db + frac * (curve[i + 1].snr_db - curve[i].snr_db);
    }
    throw insufficient_range_error("target error rate " + std::to_string(target_ser) +
                                   " is not bracketed by the curve");
}

double interpolate_gain(const SerCurve& adaptive, const SerCurve& baseline, double target_ser) {
    return snr_at_ser(baseline, target_ser) - snr_at_ser(adaptive, target_ser);
}

}  // namespace macpsk
