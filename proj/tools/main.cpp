// macpsk command line: geometry dumps, wedge quantization rasters, rotation
// policies and Monte Carlo link sweeps for the two-user fading MAC with
// M-PSK inputs. Everything is emitted as CSV/JSON for external plotting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "macpsk/io.hpp"
#include "macpsk/version.hpp"

namespace {

using nlohmann::json;

std::vector<double> parse_snr_spec(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double start = 0.0;
        double step = 0.0;
        double stop = 0.0;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 || step <= 0.0) {
            throw CLI::ValidationError("--snr", "expected start:step:stop with positive step");
        }
        for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(std::stod(item));
        }
    }
    if (out.empty()) throw CLI::ValidationError("--snr", "empty SNR list");
    return out;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    os << j.dump(2) << "\n";
}

std::string sidecar_path(const std::string& raster_path) {
    std::filesystem::path p(raster_path);
    p.replace_extension(".circles.json");
    return p.string();
}

std::string format_delta(double delta) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", delta);
    return buf;
}

int run_simulate(const macpsk::SimConfig& cfg, const std::string& out_dir,
                 const std::vector<double>& targets) {
    const macpsk::MpskModel model = macpsk::build_model(cfg.order);
    const macpsk::SweepResult result = macpsk::run_sweep(model, cfg);
    const macpsk::RotationPolicy policy = macpsk::compute_policy(model);

    std::filesystem::create_directories(out_dir);
    const std::string stem = "ser_m" + std::to_string(cfg.order) + "_delta" +
                             format_delta(cfg.delta) + "_" + macpsk::to_string(cfg.metric);
    const std::string adaptive_path = out_dir + "/" + stem + "_adaptive.csv";
    const std::string baseline_path = out_dir + "/" + stem + "_baseline.csv";
    const std::string manifest_path = out_dir + "/manifest_" + stem + ".json";

    {
        std::ofstream os(adaptive_path);
        if (!os) throw std::runtime_error("cannot write " + adaptive_path);
        macpsk::write_curve_csv(os, result.adaptive);
    }
    {
        std::ofstream os(baseline_path);
        if (!os) throw std::runtime_error("cannot write " + baseline_path);
        macpsk::write_curve_csv(os, result.baseline);
    }

    json manifest = macpsk::manifest_to_json(cfg, policy);
    manifest["policy_hash"] = macpsk::policy_hash(model, policy);
    manifest["files"] = {{"adaptive", adaptive_path}, {"baseline", baseline_path}};
    json gains = json::array();
    for (double target : targets) {
        json g{{"target_ser", target}};
        try {
            g["snr_adaptive_db"] = macpsk::snr_at_ser(result.adaptive, target);
            g["snr_baseline_db"] = macpsk::snr_at_ser(result.baseline, target);
            g["gain_db"] = macpsk::interpolate_gain(result.adaptive, result.baseline, target);
        } catch (const macpsk::insufficient_range_error& e) {
            g["gain_db"] = nullptr;
            g["note"] = e.what();
            std::cerr << "warning: " << e.what() << "\n";
        }
        gains.push_back(std::move(g));
    }
    manifest["gains"] = std::move(gains);
    {
        std::ofstream os(manifest_path);
        if (!os) throw std::runtime_error("cannot write " + manifest_path);
        os << manifest.dump(2) << "\n";
    }

    std::cout << "wrote " << adaptive_path << "\n"
              << "wrote " << baseline_path << "\n"
              << "wrote " << manifest_path << "\n";
    for (const auto& g : manifest["gains"]) {
        if (g.contains("gain_db") && !g["gain_db"].is_null()) {
            std::printf("gain at ser %.3g: %.3f dB\n", g["target_ser"].get<double>(),
                        g["gain_db"].get<double>());
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive M-PSK modulation toolbox for the two-user fading MAC"};
    app.set_version_flag("--version", macpsk::kVersion);
    app.require_subcommand(1);

    int order = 4;
    std::string out_path;

    auto* singular = app.add_subcommand("singular", "enumerate singular fade states");
    singular->add_option("--m", order, "PSK order (power of two)")->required();
    singular->add_option("--out", out_path, "output JSON path (default: stdout)");

    auto* classes = app.add_subcommand("classes", "enumerate distance classes");
    std::string classes_format = "json";
    classes->add_option("--m", order, "PSK order (power of two)")->required();
    classes->add_option("--format", classes_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    classes->add_option("--out", out_path, "output path (default: stdout)");

    auto* quantize = app.add_subcommand("quantize", "raster the wedge quantization");
    double delta = 0.0;
    double gamma_max = 4.0;
    int cells = 600;
    bool full_plane = false;
    quantize->add_option("--m", order, "PSK order (power of two)")->required();
    quantize->add_option("--delta", delta, "distance guarantee for the circle sidecar");
    quantize->add_option("--gamma-max", gamma_max, "raster upper gamma bound");
    quantize->add_option("--cells", cells, "cells per axis");
    quantize->add_flag("--full-plane", full_plane, "extend raster to theta in [0, 2*pi)");
    quantize->add_option("--out", out_path, "raster CSV path")->required();

    auto* policy_cmd = app.add_subcommand("policy", "compute the rotation policy");
    policy_cmd->add_option("--m", order, "PSK order (power of two)")->required();
    policy_cmd->add_option("--out", out_path, "output JSON path (default: stdout)");

    auto* deltamax = app.add_subcommand("deltamax", "largest supportable distance guarantee");
    deltamax->add_option("--m", order, "PSK order (power of two)")->required();
    deltamax->add_option("--out", out_path, "output JSON path (default: stdout)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo SER sweep");
    std::string snr_spec = "0:2:24";
    std::string out_dir = ".";
    std::string metric = "joint";
    std::vector<double> targets{1e-3};
    macpsk::SimConfig cfg;
    simulate->add_option("--m", cfg.order, "PSK order (power of two)")->required();
    simulate->add_option("--delta", cfg.delta, "distance guarantee (0 = no adaptation)");
    simulate->add_option("--snr", snr_spec, "SNR sweep, start:step:stop dB or comma list");
    simulate->add_option("--trials", cfg.trials_per_snr, "trials per SNR point")->required();
    simulate->add_option("--seed", cfg.seed, "RNG seed");
    simulate->add_option("--metric", metric, "joint|per_user")
        ->check(CLI::IsMember({"joint", "per_user"}));
    simulate->add_option("--workers", cfg.workers, "worker threads (0 = auto)");
    simulate->add_option("--target-ser", targets, "error rates to interpolate the gain at");
    simulate->add_flag("--force", cfg.force_delta, "allow delta above the rotation bound");
    simulate->add_option("--out-dir", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (singular->parsed()) {
            emit(macpsk::singular_to_json(macpsk::build_model(order)), out_path);
        } else if (classes->parsed()) {
            const macpsk::MpskModel model = macpsk::build_model(order);
            if (classes_format == "csv") {
                if (out_path.empty()) {
                    macpsk::write_classes_csv(std::cout, model);
                } else {
                    std::ofstream os(out_path);
                    if (!os) throw std::runtime_error("cannot write " + out_path);
                    macpsk::write_classes_csv(os, model);
                }
            } else {
                emit(macpsk::classes_to_json(model), out_path);
            }
        } else if (quantize->parsed()) {
            const macpsk::MpskModel model = macpsk::build_model(order);
            macpsk::RasterSpec spec;
            spec.gamma_cells = cells;
            spec.theta_cells = cells;
            spec.gamma_max = gamma_max;
            macpsk::QuantizationMap map = macpsk::quantization_map(model, spec);
            if (full_plane) map = macpsk::extend_full_plane(map, order);
            std::ofstream os(out_path);
            if (!os) throw std::runtime_error("cannot write " + out_path);
            macpsk::write_raster_csv(os, map);
            emit(macpsk::circles_to_json(model, delta), sidecar_path(out_path));
            std::cout << "wrote " << out_path << " and " << sidecar_path(out_path) << "\n";
        } else if (policy_cmd->parsed()) {
            const macpsk::MpskModel model = macpsk::build_model(order);
            emit(macpsk::policy_to_json(model, macpsk::compute_policy(model)), out_path);
        } else if (deltamax->parsed()) {
            const macpsk::MpskModel model = macpsk::build_model(order);
            const macpsk::RotationPolicy policy = macpsk::compute_policy(model);
            json j{{"m", order}, {"delta_max", policy.delta_max}};
            emit(j, out_path);
            if (!out_path.empty()) std::printf("delta_max = %.6f\n", policy.delta_max);
        } else if (simulate->parsed()) {
            cfg.snr_db = parse_snr_spec(snr_spec);
            cfg.metric = metric == "joint" ? macpsk::ErrorMetric::joint
                                           : macpsk::ErrorMetric::per_user;
            return run_simulate(cfg, out_dir, targets);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
