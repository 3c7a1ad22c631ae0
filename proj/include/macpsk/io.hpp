#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "macpsk/adaptation.hpp"
#include "macpsk/linksim.hpp"
#include "macpsk/quantizer.hpp"

namespace macpsk {

nlohmann::json singular_to_json(const MpskModel& m);
nlohmann::json classes_to_json(const MpskModel& m);
nlohmann::json circles_to_json(const MpskModel& m, double delta);
nlohmann::json policy_to_json(const MpskModel& m, const RotationPolicy& policy);
nlohmann::json manifest_to_json(const SimConfig& cfg, const RotationPolicy& policy);

/// `gamma,theta,argmin_class,d_min`, one row per cell, gamma-major order.
void write_raster_csv(std::ostream& os, const QuantizationMap& map);

/// `snr_db,ser,trials,ci95`.
void write_curve_csv(std::ostream& os, const SerCurve& curve);

void write_classes_csv(std::ostream& os, const MpskModel& m);

/// FNV-1a over a serialized policy; pins the policy a simulation ran with.
std::string policy_hash(const MpskModel& m, const RotationPolicy& policy);

}  // namespace macpsk
