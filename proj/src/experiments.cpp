#include "helispin/experiments.hpp"

#include <cmath>
#include <limits>

namespace helispin {

const char* const kCodeVersion = "helispin 0.1.0";

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kNan = std::numeric_limits<double>::quiet_NaN();

StepControl step_control(const ExperimentConfig& e) {
    StepControl sc;
    sc.steps_per_period = e.steps_per_period;
    return sc;
}

std::string fmt(double v) { return format_cell(Cell{v}); }

void add_meta(ResultTable& t, const std::string& key, const std::string& value) {
    t.metadata.emplace_back(key, value);
}

void base_metadata(ResultTable& t, const RunConfig& cfg) {
    add_meta(t, "code_version", kCodeVersion);
    add_meta(t, "norm_tolerance", "1e-09");
    add_meta(t, "unitarity_tolerance", "1e-08");
    add_meta(t, "config", serialize_config(cfg));
}

RegimeReport checked_regime(const PhysicalConstants& c, const RunConfig& cfg,
                            const DerivedCouplings& dc) {
    return regime_check(c, dc.fig3_omega, dc.omega_tilde, cfg.device.delta_rad_per_s,
                        dc.exchange_point.G, dc.exchange_point.gamma,
                        cfg.device.nu_1x_rad_per_s, cfg.device.temperature_K,
                        cfg.experiment.regime_threshold);
}

void regime_metadata(ResultTable& t, const RegimeReport& rr) {
    add_meta(t, "regime_ok", rr.all_ok() ? "1" : "0");
    for (const auto& note : rr.notes) add_meta(t, "regime_note", note);
}

void comparison_metadata(ResultTable& t, const ModelComparison& cmp) {
    add_meta(t, "peak_transfer", fmt(cmp.peak_transfer));
    add_meta(t, "fitted_frequency_rad_per_s", fmt(cmp.fitted_frequency_rad_per_s));
    add_meta(t, "predicted_frequency_rad_per_s", fmt(cmp.predicted_frequency_rad_per_s));
    add_meta(t, "frequency_ratio", fmt(cmp.frequency_ratio));
    add_meta(t, "fit_residual", fmt(cmp.fit_residual));
    for (size_t i = 0; i < cmp.max_deviation.size(); ++i)
        add_meta(t, "max_deviation_" + std::to_string(i), fmt(cmp.max_deviation[i]));
    add_meta(t, "norm_drift_full", fmt(cmp.full_trajectory.norm_drift));
    add_meta(t, "norm_drift_effective", fmt(cmp.effective_trajectory.norm_drift));
    add_meta(t, "dt_nominal_full_s", fmt(cmp.full_trajectory.dt_nominal));
    add_meta(t, "steps_full", std::to_string(cmp.full_trajectory.steps));
    for (const auto& w : cmp.warnings) add_meta(t, "warning", w);
}

void append_trajectory_rows(ResultTable& t, const Trajectory& traj,
                            const std::vector<std::vector<std::string>>& observables,
                            const std::string& model_name) {
    std::vector<std::vector<double>> curves;
    for (const auto& obs : observables) curves.push_back(occupancy_series(traj, obs));
    for (size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<Cell> row;
        row.emplace_back(traj.times[i]);
        for (const auto& c : curves) row.emplace_back(c[i]);
        row.emplace_back(model_name);
        t.append_row(std::move(row));
    }
}
}  // namespace

ResultTable run_params_table(const RunConfig& cfg) {
    const auto c = PhysicalConstants::codata2018();
    cfg.device.validate();
    const auto dc = derive_couplings(c, cfg.device, cfg.experiment.fig3_omega_rad_per_s,
                                     cfg.experiment.fig4_omega_rad_per_s);
    const auto rr = checked_regime(c, cfg, dc);

    ResultTable t;
    t.columns = {"nu_s_rad_per_s",          "omega_rad_per_s",
                 "omega_tilde_rad_per_s",   "omega_prime_rad_per_s",
                 "g_rad_per_s",             "eta_rad_per_s",
                 "gamma_rad_per_s",         "omega_dprime_rad_per_s",
                 "fig3_omega_rad_per_s",    "fig4_omega_rad_per_s",
                 "freeze_ratio",            "perturbative_ok",
                 "freezing_ok"};
    t.append_row({dc.nu_s, dc.omega_device, dc.omega_tilde,
                  dc.transfer_point.omega_prime, dc.exchange_point.G,
                  dc.exchange_point.eta, dc.exchange_point.gamma,
                  dc.exchange_point.omega_dprime.value_or(kNan), dc.fig3_omega,
                  dc.fig4_omega, rr.freeze_ratio, long(rr.perturbative_ok),
                  long(rr.freezing_ok)});
    base_metadata(t, cfg);
    regime_metadata(t, rr);
    return t;
}

FigureRun run_fig3(const RunConfig& cfg) {
    const auto c = PhysicalConstants::codata2018();
    cfg.device.validate();
    const auto dc = derive_couplings(c, cfg.device, cfg.experiment.fig3_omega_rad_per_s,
                                     cfg.experiment.fig4_omega_rad_per_s);
    const double omega = dc.fig3_omega;
    const double omega_tilde = dc.omega_tilde;
    const double delta = cfg.device.delta_rad_per_s;
    const double Delta = cfg.device.Delta_rad_per_s();
    const double omega_prime = omega * omega_tilde / delta;
    const double t_final =
        cfg.experiment.t_final_s > 0 ? cfg.experiment.t_final_s : 2.0 * kPi / omega_prime;

    FigureRun run;
    run.comparison = compare_jc_reduction(omega, omega_tilde, delta, Delta, t_final,
                                          cfg.experiment.fock_dim, cfg.experiment.samples,
                                          step_control(cfg.experiment));

    ResultTable& t = run.table;
    t.columns = {"time_s", "occ_up1_0_0", "occ_down1_0_1", "model"};
    if (cfg.experiment.model != "effective")
        append_trajectory_rows(t, run.comparison.full_trajectory, run.comparison.observables,
                               "full");
    if (cfg.experiment.model != "full")
        append_trajectory_rows(t, run.comparison.effective_trajectory,
                               run.comparison.observables_effective, "effective");
    base_metadata(t, cfg);
    add_meta(t, "t_final_s", fmt(t_final));
    add_meta(t, "omega_rad_per_s", fmt(omega));
    add_meta(t, "omega_tilde_rad_per_s", fmt(omega_tilde));
    add_meta(t, "delta_rad_per_s", fmt(delta));
    add_meta(t, "Delta_rad_per_s", fmt(Delta));
    add_meta(t, "omega_prime_rad_per_s", fmt(omega_prime));
    regime_metadata(t, checked_regime(c, cfg, dc));
    comparison_metadata(t, run.comparison);
    return run;
}

FigureRun run_fig4(const RunConfig& cfg) {
    const auto c = PhysicalConstants::codata2018();
    cfg.device.validate();
    const auto dc = derive_couplings(c, cfg.device, cfg.experiment.fig3_omega_rad_per_s,
                                     cfg.experiment.fig4_omega_rad_per_s);
    const double omega = dc.fig4_omega;
    const double omega_tilde = dc.omega_tilde;
    const double delta = cfg.device.delta_rad_per_s;
    const auto& ec = dc.exchange_point;
    const double omega_dprime = spin_spin_rate(ec);  // degenerate detuning throws
    const double t_final = cfg.experiment.t_final_s > 0 ? cfg.experiment.t_final_s
                                                        : kPi / std::abs(omega_dprime);

    FigureRun run;
    run.comparison = compare_spin_spin_reduction(
        omega, omega_tilde, delta, ec.G, ec.eta, t_final, cfg.experiment.fock_dim,
        cfg.experiment.fock_dim, cfg.experiment.samples, step_control(cfg.experiment));

    ResultTable& t = run.table;
    t.columns = {"time_s", "occ_down1_0_0_up2", "occ_up1_0_0_down2", "model"};
    if (cfg.experiment.model != "effective")
        append_trajectory_rows(t, run.comparison.full_trajectory, run.comparison.observables,
                               "full");
    if (cfg.experiment.model != "full")
        append_trajectory_rows(t, run.comparison.effective_trajectory,
                               run.comparison.observables_effective, "effective");
    base_metadata(t, cfg);
    add_meta(t, "t_final_s", fmt(t_final));
    add_meta(t, "omega_rad_per_s", fmt(omega));
    add_meta(t, "omega_tilde_rad_per_s", fmt(omega_tilde));
    add_meta(t, "delta_rad_per_s", fmt(delta));
    add_meta(t, "g_rad_per_s", fmt(ec.G));
    add_meta(t, "eta_rad_per_s", fmt(ec.eta));
    add_meta(t, "gamma_rad_per_s", fmt(ec.gamma));
    add_meta(t, "omega_dprime_rad_per_s", fmt(omega_dprime));
    regime_metadata(t, checked_regime(c, cfg, dc));
    comparison_metadata(t, run.comparison);
    return run;
}

GateRun run_gate(const RunConfig& cfg, const std::string& which) {
    const auto c = PhysicalConstants::codata2018();
    cfg.device.validate();
    const auto dc = derive_couplings(c, cfg.device, cfg.experiment.fig3_omega_rad_per_s,
                                     cfg.experiment.fig4_omega_rad_per_s);
    const StepControl sc = step_control(cfg.experiment);

    GateRun run;
    run.which = which;
    if (which == "phase") {
        const double drive = dc.omega_device;
        run.drive_rad_per_s = drive;
        run.calibration = phase_gate_duration(drive);
        run.duration_s = run.calibration.time_s;
        run.report =
            simulate_phase_gate(drive, run.calibration.time_s, cfg.experiment.fock_dim, sc);
    } else if (which == "cnot1") {
        const double drive = dc.omega_device;
        run.drive_rad_per_s = drive;
        run.calibration = phase_gate_duration(drive);
        auto syn = single_electron_cnot(drive, cfg.experiment.fock_dim, sc);
        run.duration_s = syn.schedule.total_duration();
        run.report = std::move(syn.report);
    } else if (which == "cnot2") {
        TwoSpinCnotInputs in;
        in.omega_prime = dc.transfer_point.omega_prime;
        in.omega_e2 = spin_orbit_strength(c, cfg.device.current_A, cfg.device.wire_height_m,
                                          cfg.device.nu_2x_rad_per_s);
        in.fock_a = cfg.experiment.fock_dim;
        in.fock_b = cfg.experiment.fock_dim;
        in.step = sc;
        if (cfg.experiment.model == "full") {
            in.full_segments = true;
            in.omega = dc.fig3_omega;
            in.omega_tilde = dc.omega_tilde;
            in.delta = cfg.device.delta_rad_per_s;
            in.Delta = cfg.device.Delta_rad_per_s();
        }
        run.drive_rad_per_s = in.omega_prime;
        run.calibration = phase_gate_duration(in.omega_e2);
        auto res = two_spin_cnot(in);
        run.duration_s = res.schedule.total_duration();
        run.report = std::move(res.report);
        run.ground_population_a = res.ground_population_a;
        run.ground_population_b = res.ground_population_b;
    } else {
        throw std::invalid_argument("unknown gate '" + which +
                                    "'; expected phase, cnot1, or cnot2");
    }
    return run;
}

ResultTable run_sweep(const RunConfig& cfg) {
    const auto& e = cfg.experiment;
    if (e.sweep_param.empty())
        throw std::invalid_argument("sweep needs sweep_param in [experiment]");
    if (e.sweep_values.empty())
        throw std::invalid_argument("sweep needs sweep_values in [experiment]");

    const auto c = PhysicalConstants::codata2018();
    ResultTable t;
    if (e.sweep_metric == "couplings") {
        t.columns = {e.sweep_param,       "nu_s_rad_per_s",        "omega_rad_per_s",
                     "omega_tilde_rad_per_s", "omega_prime_rad_per_s", "g_rad_per_s",
                     "eta_rad_per_s",     "gamma_rad_per_s",       "omega_dprime_rad_per_s",
                     "status"};
    } else if (e.sweep_metric == "max_deviation") {
        t.columns = {e.sweep_param, "peak_transfer", "fitted_frequency_rad_per_s",
                     "max_deviation", "status"};
    } else {
        t.columns = {e.sweep_param, "fidelity", "leakage", "angle", "status"};
    }

    for (double value : e.sweep_values) {
        RunConfig point = cfg;
        DeviceParams& d = point.device;
        if (e.sweep_param == "wire_height_m") d.wire_height_m = value;
        else if (e.sweep_param == "current_A") d.current_A = value;
        else if (e.sweep_param == "static_field_T") d.static_field_T = value;
        else if (e.sweep_param == "distance_m") d.distance_m = value;
        else if (e.sweep_param == "nu_1x_rad_per_s") d.nu_1x_rad_per_s = value;
        else if (e.sweep_param == "nu_2x_rad_per_s") d.nu_2x_rad_per_s = value;
        else if (e.sweep_param == "delta_rad_per_s") d.delta_rad_per_s = value;
        else if (e.sweep_param == "temperature_K") d.temperature_K = value;
        else if (e.sweep_param == "trap_charge_C") d.trap_charge_C = value;
        else if (e.sweep_param == "trap_depth_m") d.trap_depth_m = value;
        else throw std::invalid_argument("sweep_param '" + e.sweep_param + "' not sweepable");

        std::vector<Cell> row(t.columns.size(), Cell{kNan});
        row.front() = value;
        row.back() = std::string("ok");
        try {
            point.device.validate();
            if (e.sweep_metric == "couplings") {
                const auto dc = derive_couplings(c, point.device, e.fig3_omega_rad_per_s,
                                                 e.fig4_omega_rad_per_s);
                row[1] = dc.nu_s;
                row[2] = dc.omega_device;
                row[3] = dc.omega_tilde;
                row[4] = dc.transfer_point.omega_prime;
                row[5] = dc.exchange_point.G;
                row[6] = dc.exchange_point.eta;
                row[7] = dc.exchange_point.gamma;
                row[8] = dc.exchange_point.omega_dprime.value_or(kNan);
            } else if (e.sweep_metric == "max_deviation") {
                RunConfig sub = point;
                sub.experiment.model = "both";
                const FigureRun fig = run_fig3(sub);
                row[1] = fig.comparison.peak_transfer;
                row[2] = fig.comparison.fitted_frequency_rad_per_s;
                double dev = 0.0;
                for (double m : fig.comparison.max_deviation) dev = std::max(dev, m);
                row[3] = dev;
            } else {
                const GateRun g = run_gate(point, "phase");
                row[1] = g.report.fidelity;
                row[2] = g.report.leakage;
                row[3] = g.calibration.angle;
            }
        } catch (const std::exception& ex) {
            row.back() = std::string(ex.what());
        }
        t.append_row(std::move(row));
    }
    base_metadata(t, cfg);
    add_meta(t, "sweep_metric", e.sweep_metric);
    return t;
}

}  // namespace helispin
