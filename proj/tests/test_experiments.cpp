#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "helispin/experiments.hpp"

using namespace helispin;

// Coupling-rate expectations were frozen from an independent evaluation of the
// device formulas before this module was written.

namespace {

RunConfig reference_config() {
    RunConfig cfg;
    cfg.device.wire_height_m = 0.5e-6;
    cfg.device.current_A = 1.0e-3;
    cfg.device.static_field_T = 0.06;
    cfg.device.distance_m = 1.0e-5;
    cfg.device.nu_1x_rad_per_s = 1.0e10;
    cfg.device.nu_2x_rad_per_s = 1.025e10;
    cfg.device.delta_rad_per_s = 2.5e8;
    cfg.experiment.fig4_omega_rad_per_s = 2.6e6;
    return cfg;
}

size_t col(const ResultTable& t, const std::string& name) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return i;
    throw std::out_of_range("no column " + name);
}

double dval(const ResultTable& t, size_t row, const std::string& name) {
    return std::get<double>(t.rows.at(row).at(col(t, name)));
}

bool has_meta(const ResultTable& t, const std::string& key) {
    for (const auto& [k, v] : t.metadata)
        if (k == key) return true;
    return false;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

TEST_CASE("coupling table reproduces the frozen device rates") {
    auto t = run_params_table(reference_config());
    REQUIRE(t.rows.size() == 1);
    CHECK(close(dval(t, 0, "nu_s_rad_per_s"), 1.062327287154e10, 1e-10));
    CHECK(close(dval(t, 0, "omega_rad_per_s"), 5.352540655671e6, 1e-10));
    CHECK(close(dval(t, 0, "omega_tilde_rad_per_s"), 2.501561966084e7, 1e-10));
    CHECK(close(dval(t, 0, "g_rad_per_s"), 2.601624444727e5, 1e-9));
    CHECK(close(dval(t, 0, "eta_rad_per_s"), 2.704e4, 1e-10));
    CHECK(close(dval(t, 0, "gamma_rad_per_s"), -2.476084908063e6, 1e-9));
    CHECK(close(dval(t, 0, "omega_dprime_rad_per_s"), -2.733528938916e4, 1e-9));
    CHECK(close(dval(t, 0, "freeze_ratio"), 3.819116288789, 1e-10));
    CHECK(std::get<long>(t.rows[0][col(t, "perturbative_ok")]) == 1);
    CHECK(std::get<long>(t.rows[0][col(t, "freezing_ok")]) == 1);
    CHECK(has_meta(t, "config"));
    CHECK(has_meta(t, "code_version"));
}

TEST_CASE("transfer reproduction writes one block per requested model") {
    auto cfg = reference_config();
    cfg.experiment.fock_dim = 3;
    cfg.experiment.samples = 60;

    auto run = run_fig3(cfg);
    CHECK(run.table.columns ==
          std::vector<std::string>{"time_s", "occ_up1_0_0", "occ_down1_0_1", "model"});
    CHECK(run.table.rows.size() == 60);
    CHECK(std::get<std::string>(run.table.rows.back().back()) == "full");
    CHECK(run.comparison.peak_transfer >= 0.9);
    CHECK(std::abs(run.comparison.frequency_ratio - 1.0) < 0.1);
    CHECK(has_meta(run.table, "peak_transfer"));
    CHECK(has_meta(run.table, "omega_prime_rad_per_s"));
    CHECK(has_meta(run.table, "regime_ok"));

    cfg.experiment.model = "both";
    auto both = run_fig3(cfg);
    CHECK(both.table.rows.size() == 120);
    CHECK(std::get<std::string>(both.table.rows.front().back()) == "full");
    CHECK(std::get<std::string>(both.table.rows.back().back()) == "effective");

    cfg.experiment.model = "effective";
    auto eff = run_fig3(cfg);
    CHECK(eff.table.rows.size() == 60);
    CHECK(std::get<std::string>(eff.table.rows.front().back()) == "effective");
}

TEST_CASE("identical configs give byte-identical tables") {
    auto cfg = reference_config();
    cfg.experiment.fock_dim = 3;
    cfg.experiment.samples = 40;
    auto a = run_fig3(cfg);
    auto b = run_fig3(cfg);
    CHECK(to_csv(a.table) == to_csv(b.table));
    CHECK(a.table.metadata == b.table.metadata);
}

TEST_CASE("flip-flop reproduction tracks the two distant spin states") {
    auto cfg = reference_config();
    cfg.experiment.fock_dim = 3;
    cfg.experiment.samples = 60;
    cfg.experiment.t_final_s = 3e-5;  // partial window keeps this suite quick
    auto run = run_fig4(cfg);
    CHECK(run.table.columns ==
          std::vector<std::string>{"time_s", "occ_down1_0_0_up2", "occ_up1_0_0_down2", "model"});
    CHECK(run.table.rows.size() == 60);
    CHECK(run.comparison.peak_transfer >= 0.3);
    CHECK(has_meta(run.table, "omega_dprime_rad_per_s"));
    CHECK(has_meta(run.table, "gamma_rad_per_s"));
    // occupancies stay physical
    for (const auto& row : run.table.rows) {
        double p1 = std::get<double>(row[1]), p2 = std::get<double>(row[2]);
        CHECK(p1 >= 0.0);
        CHECK(p2 >= 0.0);
        CHECK(p1 + p2 <= 1.0 + 1e-9);
    }
}

TEST_CASE("gate runs carry their calibration and scores") {
    auto cfg = reference_config();
    auto phase = run_gate(cfg, "phase");
    CHECK(close(phase.drive_rad_per_s, 5.352540655671e6, 1e-10));
    CHECK(std::abs(phase.calibration.angle - 37.699250479350) < 1e-6);
    CHECK(phase.duration_s == doctest::Approx(phase.calibration.time_s).epsilon(1e-12));
    CHECK(phase.report.fidelity >= 0.997);
    CHECK(!phase.ground_population_a.has_value());

    auto cnot1 = run_gate(cfg, "cnot1");
    CHECK(cnot1.report.fidelity >= 0.99);
    CHECK(cnot1.duration_s == doctest::Approx(phase.duration_s).epsilon(1e-12));

    // the composed two-spin gate is designed against the reduced exchange
    cfg.experiment.model = "effective";
    auto cnot2 = run_gate(cfg, "cnot2");
    CHECK(close(cnot2.drive_rad_per_s, 2.503125e6, 1e-3));
    CHECK(cnot2.report.fidelity >= 0.995);
    REQUIRE(cnot2.ground_population_a.has_value());
    REQUIRE(cnot2.ground_population_b.has_value());
    CHECK(*cnot2.ground_population_a == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(*cnot2.ground_population_b >= 0.98);

    // the raw-chain transfer segments carry second-order level shifts the
    // reduced exchange drops; at the matched point that is pi/2 of extra
    // control phase per segment, so the uncompensated schedule loses the gate
    cfg.experiment.model = "full";
    auto raw = run_gate(cfg, "cnot2");
    CHECK(close(raw.drive_rad_per_s, cnot2.drive_rad_per_s, 1e-12));
    CHECK(raw.report.fidelity < 0.5);
    REQUIRE(raw.ground_population_a.has_value());
    CHECK(*raw.ground_population_a >= 0.95);

    CHECK_THROWS_AS(run_gate(cfg, "swap"), std::invalid_argument);
}

TEST_CASE("sweep rows record failures and keep going") {
    auto cfg = reference_config();
    cfg.experiment.sweep_param = "distance_m";
    cfg.experiment.sweep_values = {1.0e-5, -1.0, 2.0e-5};
    auto t = run_sweep(cfg);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.columns.front() == "distance_m");
    CHECK(t.columns.back() == "status");
    CHECK(std::get<std::string>(t.rows[0].back()) == "ok");
    CHECK(std::get<std::string>(t.rows[1].back()) != "ok");
    CHECK(std::isnan(std::get<double>(t.rows[1][col(t, "omega_tilde_rad_per_s")])));
    CHECK(std::get<std::string>(t.rows[2].back()) == "ok");
    CHECK(close(dval(t, 0, "omega_tilde_rad_per_s"), 2.501561966084e7, 1e-10));
    // inverse-cube falloff: doubling the distance divides the exchange by 8
    CHECK(close(dval(t, 2, "omega_tilde_rad_per_s"), 2.501561966084e7 / 8, 1e-9));

    cfg.experiment.sweep_param.clear();
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
}

TEST_CASE("gate-metric sweep scores the calibrated pulse per point") {
    auto cfg = reference_config();
    cfg.experiment.fock_dim = 3;
    cfg.experiment.sweep_param = "current_A";
    cfg.experiment.sweep_values = {0.5e-3, 1.0e-3};
    cfg.experiment.sweep_metric = "gate_fidelity";
    auto t = run_sweep(cfg);
    REQUIRE(t.rows.size() == 2);
    for (size_t r = 0; r < 2; ++r) {
        CHECK(std::get<std::string>(t.rows[r].back()) == "ok");
        CHECK(dval(t, r, "fidelity") >= 0.99);
        CHECK(std::abs(dval(t, r, "angle") - 37.699250479350) < 1e-6);
    }
}

TEST_CASE("csv text form quotes exactly what needs quoting") {
    ResultTable t;
    t.columns = {"x", "note"};
    t.append_row({1.5, std::string("plain")});
    t.append_row({-0.25, std::string("a,b")});
    t.append_row({3.0, std::string("say \"hi\"")});
    CHECK(to_csv(t) ==
          "x,note\n1.5,plain\n-0.25,\"a,b\"\n3,\"say \"\"hi\"\"\"\n");
    CHECK(format_cell(Cell{1.062327287154e10}) == "10623272871.5");
    CHECK(format_cell(Cell{long(7)}) == "7");
    CHECK_THROWS_AS(t.append_row({1.0}), std::invalid_argument);
}

TEST_CASE("csv files appear whole or not at all") {
    ResultTable t;
    t.columns = {"a"};
    t.append_row({1.0});

    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "helispin_csv_test";
    fs::create_directories(dir);
    const auto path = (dir / "out.csv").string();
    write_csv_file(t, path);
    std::ifstream f(path);
    std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(body == to_csv(t));
    CHECK(!fs::exists(path + ".tmp"));

    const auto missing = (dir / "no_such_subdir" / "out.csv").string();
    CHECK_THROWS_AS(write_csv_file(t, missing), std::runtime_error);
    CHECK(!fs::exists(missing));
    fs::remove_all(dir);
}
