#include "macpsk/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "macpsk/version.hpp"

namespace macpsk {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

nlohmann::json fade_to_json(const FadeState& fs) {
    return {{"gamma", fs.gamma},
            {"theta_rad", fs.theta},
            {"theta_deg", fs.theta * kRadToDeg},
            {"re", fs.value().real()},
            {"im", fs.value().imag()}};
}

nlohmann::json state_to_json(const SingularFadeState& s) {
    nlohmann::json j = fade_to_json(s.location);
    j["vanishing_classes"] = s.vanishing_classes;
    j["minimal_class"] = s.minimal_class;
    j["delta_s2"] = s.delta_s2;
    return j;
}

}  // namespace

nlohmann::json singular_to_json(const MpskModel& m) {
    nlohmann::json nonzero = nlohmann::json::array();
    for (const auto& s : m.singular.nonzero) nonzero.push_back(state_to_json(s));
    nlohmann::json wedge = nlohmann::json::array();
    for (int i = 1; i <= m.n_wedge(); ++i) {
        nlohmann::json j = state_to_json(m.wedge_state(i));
        j["index"] = i;
        wedge.push_back(std::move(j));
    }
    nlohmann::json out{{"m", m.constellation.order},
                       {"dmin_signal_set", m.constellation.dmin()},
                       {"nonzero_count", m.singular.nonzero.size()},
                       {"wedge_count", m.singular.wedge.size()},
                       {"nonzero", std::move(nonzero)},
                       {"wedge", std::move(wedge)}};
    out["zero_fade_state"] = m.singular.zero ? state_to_json(*m.singular.zero) : nlohmann::json();
    return out;
}

nlohmann::json classes_to_json(const MpskModel& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < m.classes.size(); ++i) {
        const auto& cl = m.classes[i];
        nlohmann::json members = nlohmann::json::array();
        for (const auto& [q1, q2] : cl.members) members.push_back({q1, q2});
        arr.push_back({{"index", i + 1},
                       {"representative", {cl.representative.first, cl.representative.second}},
                       {"size", cl.members.size()},
                       {"coeffs", {{"a", cl.a}, {"b", cl.b}, {"r", cl.r}, {"psi", cl.psi}}},
                       {"members", std::move(members)}});
    }
    return {{"m", m.constellation.order},
            {"pair_count", m.constellation.order * m.constellation.order *
                               (m.constellation.order * m.constellation.order - 1) / 2},
            {"class_count", m.classes.size()},
            {"cap_class", m.cap_class},
            {"classes", std::move(arr)}};
}

nlohmann::json circles_to_json(const MpskModel& m, double delta) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 1; i <= m.n_wedge(); ++i) {
        const auto& s = m.wedge_state(i);
        arr.push_back({{"index", i},
                       {"center", fade_to_json(s.location)},
                       {"delta_s2", s.delta_s2},
                       {"radius", delta > 0.0 ? delta / s.delta_s2 : 0.0},
                       {"delta", delta}});
    }
    return {{"m", m.constellation.order}, {"delta", delta}, {"circles", std::move(arr)}};
}

nlohmann::json policy_to_json(const MpskModel& m, const RotationPolicy& policy) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cr : policy.circles) {
        const auto& s = m.wedge_state(cr.index);
        arr.push_back({{"index", cr.index},
                       {"center", fade_to_json(s.location)},
                       {"radius_coefficient", 1.0 / s.delta_s2},
                       {"theta_opt_deg", cr.theta_opt * kRadToDeg},
                       {"alpha_opt_deg", cr.alpha_opt * kRadToDeg},
                       {"direction", to_string(cr.direction)},
                       {"achieved_dmin", cr.achieved_dmin}});
    }
    nlohmann::json binding = nlohmann::json::array();
    for (const auto& t : policy.binding) {
        const auto& z = m.singular.nonzero[static_cast<size_t>(t.singular) - 1];
        binding.push_back({{"circle", t.circle},
                           {"state", fade_to_json(z.location)},
                           {"distance", t.distance},
                           {"bound", t.bound}});
    }
    return {{"m", m.constellation.order},
            {"delta_max", policy.delta_max},
            {"circles", std::move(arr)},
            {"delta_max_binding", std::move(binding)}};
}

nlohmann::json manifest_to_json(const SimConfig& cfg, const RotationPolicy& policy) {
    return {{"version", kVersion},
            {"m", cfg.order},
            {"delta", cfg.delta},
            {"snr_db", cfg.snr_db},
            {"trials_per_snr", cfg.trials_per_snr},
            {"seed", cfg.seed},
            {"metric", to_string(cfg.metric)},
            {"workers", cfg.workers},
            {"force_delta", cfg.force_delta},
            {"snr_definition", "per-user SNR = P/sigma^2 in dB with P = 1"},
            {"delta_max", policy.delta_max}};
}

void write_raster_csv(std::ostream& os, const QuantizationMap& map) {
    os << "gamma,theta,argmin_class,d_min\n";
    char line[128];
    for (int ig = 0; ig < map.gamma_cells; ++ig) {
        for (int it = 0; it < map.theta_cells; ++it) {
            std::snprintf(line, sizeof(line), "%.9g,%.9g,%d,%.9g\n", map.gamma_at(ig),
                          map.theta_at(it), map.at(ig, it), map.dmin_at(ig, it));
            os << line;
        }
    }
}

void write_curve_csv(std::ostream& os, const SerCurve& curve) {
    os << "snr_db,ser,trials,ci95\n";
    char line[128];
    for (const auto& pt : curve) {
        std::snprintf(line, sizeof(line), "%.6g,%.9e,%lld,%.9e\n", pt.snr_db, pt.ser,
                      static_cast<long long>(pt.trials), pt.ci95);
        os << line;
    }
}

void write_classes_csv(std::ostream& os, const MpskModel& m) {
    os << "index,rep_i,rep_j,size,a,b,r,psi\n";
    char line[160];
    for (size_t i = 0; i < m.classes.size(); ++i) {
        const auto& cl = m.classes[i];
        std::snprintf(line, sizeof(line), "%zu,%d,%d,%zu,%.9g,%.9g,%.9g,%.9g\n", i + 1,
                      cl.representative.first, cl.representative.second, cl.members.size(),
                      cl.a, cl.b, cl.r, cl.psi);
        os << line;
    }
}

std::string policy_hash(const MpskModel& m, const RotationPolicy& policy) {
    const std::string text = policy_to_json(m, policy).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace macpsk
