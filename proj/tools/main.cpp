#include <chrono>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "helispin/config.hpp"
#include "helispin/csv.hpp"
#include "helispin/experiments.hpp"
#include "helispin/propagator.hpp"

// Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure.
// Data goes to --out or stdout; everything else goes to stderr so stdout
// stays machine readable.

namespace {

using namespace helispin;

void emit_metadata(const ResultTable& table) {
    for (const auto& [key, value] : table.metadata) {
        if (value.find('\n') == std::string::npos) {
            std::cerr << "# " << key << " = " << value << '\n';
            continue;
        }
        std::cerr << "# " << key << ":\n";
        std::istringstream lines(value);
        for (std::string line; std::getline(lines, line);) std::cerr << "#   " << line << '\n';
    }
}

void emit_table(const ResultTable& table, const std::string& out_path) {
    emit_metadata(table);
    if (out_path.empty()) {
        std::cout << to_csv(table);
        return;
    }
    write_csv_file(table, out_path);
    std::cerr << "wrote " << out_path << " (" << table.rows.size() << " rows)\n";
}

std::string format_complex(const std::complex<double>& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void append_matrix(std::ostringstream& out, const std::string& name, const Matrix& m) {
    out << name << ":\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out << " ";
        for (Eigen::Index c = 0; c < m.cols(); ++c) out << "  " << format_complex(m(r, c));
        out << '\n';
    }
}

std::string render_gate_report(const GateRun& run) {
    std::ostringstream out;
    out << "gate = " << run.which << '\n';
    out << "drive_rad_per_s = " << format_double(run.drive_rad_per_s) << '\n';
    out << "duration_s = " << format_double(run.duration_s) << '\n';
    out << "pulse_angle = " << format_double(run.calibration.angle) << '\n';
    out << "pulse_residual = " << format_double(run.calibration.residual) << '\n';
    out << "fidelity = " << format_double(run.report.fidelity) << '\n';
    out << "leakage = " << format_double(run.report.leakage) << '\n';
    out << "unitarity_defect = " << format_double(run.report.unitarity) << '\n';
    if (run.ground_population_a)
        out << "ground_population_a = " << format_double(*run.ground_population_a) << '\n';
    if (run.ground_population_b)
        out << "ground_population_b = " << format_double(*run.ground_population_b) << '\n';
    out << "phase_convention = " << run.report.phase_convention << '\n';
    out << "subspace:\n";
    for (const auto& state : run.report.subspace) out << "  " << state << '\n';
    append_matrix(out, "achieved", run.report.achieved);
    append_matrix(out, "target", run.report.target);
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trapped-electron spin dynamics: coupling tables, transfer curves, gate reports"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string gate_which;

    auto add_common = [&](CLI::App* sub, bool has_out) {
        sub->add_option("--config", config_path, "run configuration file")->required();
        if (has_out) sub->add_option("--out", out_path, "CSV output path (default: stdout)");
    };

    auto* cmd_params = app.add_subcommand("params", "derived coupling rates and regime flags");
    add_common(cmd_params, true);
    auto* cmd_fig3 = app.add_subcommand("fig3", "spin-up transfer through the shared image charge");
    add_common(cmd_fig3, true);
    auto* cmd_fig4 = app.add_subcommand("fig4", "flip-flop exchange between the two distant spins");
    add_common(cmd_fig4, true);
    auto* cmd_gate = app.add_subcommand("gate", "simulate one gate and print its report");
    cmd_gate->add_option("which", gate_which, "phase | cnot1 | cnot2")
        ->required()
        ->check(CLI::IsMember({"phase", "cnot1", "cnot2"}));
    add_common(cmd_gate, true);
    auto* cmd_sweep = app.add_subcommand("sweep", "rerun a metric over a list of parameter values");
    add_common(cmd_sweep, true);
    auto* cmd_validate = app.add_subcommand("validate", "parse the config and echo its canonical form");
    add_common(cmd_validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    helispin::RunConfig cfg;
    try {
        cfg = helispin::load_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }

    if (cmd_validate->parsed()) {
        std::cout << helispin::serialize_config(cfg);
        std::cerr << "ok\n";
        return 0;
    }

    helispin::ResultTable table;
    std::optional<helispin::GateRun> gate_run;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (cmd_params->parsed()) {
            table = helispin::run_params_table(cfg);
        } else if (cmd_fig3->parsed()) {
            table = helispin::run_fig3(cfg).table;
        } else if (cmd_fig4->parsed()) {
            table = helispin::run_fig4(cfg).table;
        } else if (cmd_sweep->parsed()) {
            table = helispin::run_sweep(cfg);
        } else {
            gate_run = helispin::run_gate(cfg, gate_which);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "elapsed_s = " << format_double(elapsed.count()) << '\n';

    try {
        if (gate_run) {
            const std::string text = render_gate_report(*gate_run);
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                f << text;
                if (!f) {
                    std::cerr << "output error: cannot write '" << out_path << "'\n";
                    return 1;
                }
                std::cerr << "wrote " << out_path << '\n';
            }
            std::cout << text;
        } else {
            emit_table(table, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
