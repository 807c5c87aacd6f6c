#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "helispin/constants.hpp"

// Flat key=value run configuration: a [device] section mirroring DeviceParams
// and an [experiment] section selecting the recipe and its numerics. Units sit
// in the key names; nothing is inferred.

namespace helispin {

struct ConfigError {
    int line = 0;  // 0 when the problem is not tied to one line
    std::string message;
};

struct config_parse_error : std::runtime_error {
    std::vector<ConfigError> errors;
    explicit config_parse_error(std::vector<ConfigError> errs);
};

struct ExperimentConfig {
    std::string name = "fig3";   // one of the registered experiment names
    std::string model = "full";  // full | effective | both
    int fock_dim = 6;
    double t_final_s = 0.0;  // 0 selects the experiment's own default window
    int samples = 400;
    int steps_per_period = 64;
    double regime_threshold = 0.2;
    std::optional<double> fig3_omega_rad_per_s;  // drive override, default omega_tilde
    std::optional<double> fig4_omega_rad_per_s;  // drive override, default device omega
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::string sweep_metric = "couplings";
    bool operator==(const ExperimentConfig&) const = default;
};

struct RunConfig {
    DeviceParams device;
    ExperimentConfig experiment;
    bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& registered_experiments();

// full validation, every error collected with its line number; nu_2x defaults
// to nu_1x + delta when the key is absent
RunConfig parse_config(const std::string& text);

// canonical text form; parse_config(serialize_config(c)) == c
std::string serialize_config(const RunConfig& cfg);

RunConfig load_config_file(const std::string& path);

}  // namespace helispin
