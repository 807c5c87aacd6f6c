#include "helispin/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace helispin {

namespace {

std::string join_errors(const std::vector<ConfigError>& errs) {
    std::string s = "configuration invalid:";
    for (const auto& e : errs) {
        s += "\n  ";
        if (e.line > 0) s += "line " + std::to_string(e.line) + ": ";
        s += e.message;
    }
    return s;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct RawEntry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, RawEntry>;

const std::vector<std::string> kDeviceKeys = {
    "wire_height_m", "current_A",       "static_field_T",   "distance_m",
    "nu_1x_rad_per_s", "nu_2x_rad_per_s", "delta_rad_per_s", "temperature_K",
    "trap_charge_C", "trap_depth_m"};
const std::vector<std::string> kRequiredDeviceKeys = {
    "wire_height_m", "current_A", "static_field_T",
    "distance_m",    "nu_1x_rad_per_s", "delta_rad_per_s"};
const std::vector<std::string> kExperimentKeys = {
    "name",          "model",
    "fock_dim",      "t_final_s",
    "samples",       "steps_per_period",
    "regime_threshold", "fig3_omega_rad_per_s",
    "fig4_omega_rad_per_s", "sweep_param",
    "sweep_values",  "sweep_metric"};

std::string key_list(const std::vector<std::string>& keys) {
    std::string s;
    for (size_t i = 0; i < keys.size(); ++i) {
        if (i) s += ", ";
        s += keys[i];
    }
    return s;
}

class Collector {
  public:
    void add(int line, std::string msg) { errors_.push_back({line, std::move(msg)}); }
    bool empty() const { return errors_.empty(); }
    std::vector<ConfigError> take() { return std::move(errors_); }

  private:
    std::vector<ConfigError> errors_;
};

std::optional<double> parse_double(const std::string& text) {
    if (text.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<long> parse_int(const std::string& text) {
    if (text.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size() || errno == ERANGE) return std::nullopt;
    return v;
}

// fetches, parses, and range-checks one double key; reports into the collector
std::optional<double> take_double(Section& sec, const std::string& key, Collector& errs,
                                  bool positive, bool allow_zero) {
    auto it = sec.find(key);
    if (it == sec.end()) return std::nullopt;
    const auto v = parse_double(it->second.value);
    if (!v) {
        errs.add(it->second.line, key + ": '" + it->second.value + "' is not a finite number");
        return std::nullopt;
    }
    if (positive && (*v < 0 || (*v == 0 && !allow_zero))) {
        errs.add(it->second.line,
                 key + " must be " + (allow_zero ? "nonnegative" : "positive"));
        return std::nullopt;
    }
    return v;
}

std::optional<long> take_int(Section& sec, const std::string& key, Collector& errs,
                             long minimum) {
    auto it = sec.find(key);
    if (it == sec.end()) return std::nullopt;
    const auto v = parse_int(it->second.value);
    if (!v) {
        errs.add(it->second.line, key + ": '" + it->second.value + "' is not an integer");
        return std::nullopt;
    }
    if (*v < minimum) {
        errs.add(it->second.line, key + " must be at least " + std::to_string(minimum));
        return std::nullopt;
    }
    return v;
}

std::optional<std::string> take_string(Section& sec, const std::string& key) {
    auto it = sec.find(key);
    if (it == sec.end()) return std::nullopt;
    return it->second.value;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

config_parse_error::config_parse_error(std::vector<ConfigError> errs)
    : std::runtime_error(join_errors(errs)), errors(std::move(errs)) {}

const std::vector<std::string>& registered_experiments() {
    static const std::vector<std::string> names = {
        "params_table", "fig3", "fig4", "phase_gate", "cnot_single", "cnot_two_spin",
        "sweep"};
    return names;
}

RunConfig parse_config(const std::string& text) {
    Collector errs;
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_lines;

    std::string current;
    bool current_known = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errs.add(lineno, "unterminated section header '" + line + "'");
                current_known = false;
                continue;
            }
            current = trim(line.substr(1, line.size() - 2));
            current_known = current == "device" || current == "experiment";
            if (!current_known) {
                errs.add(lineno, "unknown section [" + current +
                                     "]; expected [device] or [experiment]");
            } else if (!section_lines.emplace(current, lineno).second) {
                errs.add(lineno, "section [" + current + "] appears twice");
            }
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errs.add(lineno, "expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            errs.add(lineno, "empty key");
            continue;
        }
        if (current.empty()) {
            errs.add(lineno, "key '" + key + "' appears before any section header");
            continue;
        }
        if (!current_known) continue;  // already reported the section itself
        const auto& known = current == "device" ? kDeviceKeys : kExperimentKeys;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            errs.add(lineno, "unknown key '" + key + "' in [" + current +
                                 "]; known keys: " + key_list(known));
            continue;
        }
        auto [it, fresh] = sections[current].emplace(key, RawEntry{value, lineno});
        if (!fresh)
            errs.add(lineno, "duplicate key '" + key + "', first set on line " +
                                 std::to_string(it->second.line));
    }

    if (!sections.count("device") && !section_lines.count("device"))
        errs.add(0, "missing [device] section; required keys: " +
                        key_list(kRequiredDeviceKeys));

    RunConfig cfg;
    Section& dev = sections["device"];
    Section& exp = sections["experiment"];

    for (const auto& key : kRequiredDeviceKeys)
        if (!dev.count(key) && section_lines.count("device"))
            errs.add(section_lines["device"], "missing required key '" + key + "'");

    if (auto v = take_double(dev, "wire_height_m", errs, true, false))
        cfg.device.wire_height_m = *v;
    if (auto v = take_double(dev, "current_A", errs, true, true)) cfg.device.current_A = *v;
    if (auto v = take_double(dev, "static_field_T", errs, true, true))
        cfg.device.static_field_T = *v;
    if (auto v = take_double(dev, "distance_m", errs, true, false))
        cfg.device.distance_m = *v;
    if (auto v = take_double(dev, "nu_1x_rad_per_s", errs, true, false))
        cfg.device.nu_1x_rad_per_s = *v;
    if (auto v = take_double(dev, "delta_rad_per_s", errs, true, false))
        cfg.device.delta_rad_per_s = *v;
    if (auto v = take_double(dev, "nu_2x_rad_per_s", errs, true, false))
        cfg.device.nu_2x_rad_per_s = *v;
    else if (!dev.count("nu_2x_rad_per_s"))
        cfg.device.nu_2x_rad_per_s = cfg.device.nu_1x_rad_per_s + cfg.device.delta_rad_per_s;
    if (auto v = take_double(dev, "temperature_K", errs, true, false))
        cfg.device.temperature_K = *v;
    if (auto v = take_double(dev, "trap_charge_C", errs, true, false))
        cfg.device.trap_charge_C = *v;
    if (auto v = take_double(dev, "trap_depth_m", errs, true, false))
        cfg.device.trap_depth_m = *v;

    if (auto v = take_string(exp, "name")) {
        const auto& names = registered_experiments();
        if (std::find(names.begin(), names.end(), *v) == names.end())
            errs.add(exp["name"].line,
                     "unknown experiment '" + *v + "'; registered: " + key_list(names));
        else
            cfg.experiment.name = *v;
    }
    if (auto v = take_string(exp, "model")) {
        if (*v != "full" && *v != "effective" && *v != "both")
            errs.add(exp["model"].line, "model must be full, effective, or both");
        else
            cfg.experiment.model = *v;
    }
    if (auto v = take_int(exp, "fock_dim", errs, 2)) cfg.experiment.fock_dim = int(*v);
    if (auto v = take_double(exp, "t_final_s", errs, true, true))
        cfg.experiment.t_final_s = *v;
    if (auto v = take_int(exp, "samples", errs, 8)) cfg.experiment.samples = int(*v);
    if (auto v = take_int(exp, "steps_per_period", errs, 8))
        cfg.experiment.steps_per_period = int(*v);
    if (auto v = take_double(exp, "regime_threshold", errs, true, false))
        cfg.experiment.regime_threshold = *v;
    if (auto v = take_double(exp, "fig3_omega_rad_per_s", errs, true, false))
        cfg.experiment.fig3_omega_rad_per_s = *v;
    if (auto v = take_double(exp, "fig4_omega_rad_per_s", errs, true, false))
        cfg.experiment.fig4_omega_rad_per_s = *v;
    if (auto v = take_string(exp, "sweep_param")) {
        if (!v->empty() &&
            std::find(kDeviceKeys.begin(), kDeviceKeys.end(), *v) == kDeviceKeys.end())
            errs.add(exp["sweep_param"].line,
                     "sweep_param must name a device key: " + key_list(kDeviceKeys));
        else
            cfg.experiment.sweep_param = *v;
    }
    if (auto v = take_string(exp, "sweep_values")) {
        std::string item;
        std::istringstream items(*v);
        bool ok = true;
        std::vector<double> values;
        while (std::getline(items, item, ',')) {
            const auto d = parse_double(trim(item));
            if (!d) {
                errs.add(exp["sweep_values"].line,
                         "sweep_values entry '" + trim(item) + "' is not a finite number");
                ok = false;
                break;
            }
            values.push_back(*d);
        }
        if (ok) cfg.experiment.sweep_values = std::move(values);
    }
    if (auto v = take_string(exp, "sweep_metric")) {
        if (*v != "couplings" && *v != "max_deviation" && *v != "gate_fidelity")
            errs.add(exp["sweep_metric"].line,
                     "sweep_metric must be couplings, max_deviation, or gate_fidelity");
        else
            cfg.experiment.sweep_metric = *v;
    }

    if (!errs.empty()) throw config_parse_error(errs.take());
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::string s = "[device]\n";
    s += "wire_height_m = " + format_double(cfg.device.wire_height_m) + "\n";
    s += "current_A = " + format_double(cfg.device.current_A) + "\n";
    s += "static_field_T = " + format_double(cfg.device.static_field_T) + "\n";
    s += "distance_m = " + format_double(cfg.device.distance_m) + "\n";
    s += "nu_1x_rad_per_s = " + format_double(cfg.device.nu_1x_rad_per_s) + "\n";
    s += "nu_2x_rad_per_s = " + format_double(cfg.device.nu_2x_rad_per_s) + "\n";
    s += "delta_rad_per_s = " + format_double(cfg.device.delta_rad_per_s) + "\n";
    s += "temperature_K = " + format_double(cfg.device.temperature_K) + "\n";
    if (cfg.device.trap_charge_C)
        s += "trap_charge_C = " + format_double(*cfg.device.trap_charge_C) + "\n";
    if (cfg.device.trap_depth_m)
        s += "trap_depth_m = " + format_double(*cfg.device.trap_depth_m) + "\n";
    s += "\n[experiment]\n";
    s += "name = " + cfg.experiment.name + "\n";
    s += "model = " + cfg.experiment.model + "\n";
    s += "fock_dim = " + std::to_string(cfg.experiment.fock_dim) + "\n";
    s += "t_final_s = " + format_double(cfg.experiment.t_final_s) + "\n";
    s += "samples = " + std::to_string(cfg.experiment.samples) + "\n";
    s += "steps_per_period = " + std::to_string(cfg.experiment.steps_per_period) + "\n";
    s += "regime_threshold = " + format_double(cfg.experiment.regime_threshold) + "\n";
    if (cfg.experiment.fig3_omega_rad_per_s)
        s += "fig3_omega_rad_per_s = " + format_double(*cfg.experiment.fig3_omega_rad_per_s) +
             "\n";
    if (cfg.experiment.fig4_omega_rad_per_s)
        s += "fig4_omega_rad_per_s = " + format_double(*cfg.experiment.fig4_omega_rad_per_s) +
             "\n";
    if (!cfg.experiment.sweep_param.empty())
        s += "sweep_param = " + cfg.experiment.sweep_param + "\n";
    if (!cfg.experiment.sweep_values.empty()) {
        s += "sweep_values = ";
        for (size_t i = 0; i < cfg.experiment.sweep_values.size(); ++i) {
            if (i) s += ",";
            s += format_double(cfg.experiment.sweep_values[i]);
        }
        s += "\n";
    }
    s += "sweep_metric = " + cfg.experiment.sweep_metric + "\n";
    return s;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_parse_error({{0, "cannot open config file '" + path + "'"}});
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

}  // namespace helispin
