#pragma once

#include <optional>
#include <string>

#include "helispin/config.hpp"
#include "helispin/csv.hpp"
#include "helispin/gates.hpp"
#include "helispin/models.hpp"

// Named experiment recipes: derived-coupling tables, the two transfer
// reproductions, gate reports, and parameter sweeps. Tables carry the full
// resolved configuration in their metadata so a run can be repeated exactly.

namespace helispin {

extern const char* const kCodeVersion;

// one-row table of every derived coupling plus regime flags
ResultTable run_params_table(const RunConfig& cfg);

struct FigureRun {
    ResultTable table;
    ModelComparison comparison;
};

// spin-up vacuum transfer: microscopic pair drive against its exchange
// reduction, window 2 pi / omega_prime unless configured
FigureRun run_fig3(const RunConfig& cfg);

// flip-flop between the distant spins: driven pair against the spin-spin
// reduction, window pi / |omega_dprime| unless configured
FigureRun run_fig4(const RunConfig& cfg);

struct GateRun {
    std::string which;  // phase | cnot1 | cnot2
    double drive_rad_per_s = 0.0;
    double duration_s = 0.0;
    PhaseGateCalibration calibration;
    GateReport report;
    std::optional<double> ground_population_a;  // cnot2 only
    std::optional<double> ground_population_b;
};

// phase: calibrated local pulse on electron 1; cnot1: the rotation-pulse
// sandwich; cnot2: the V, local-gate, V composition (model=full switches the
// V segments to the microscopic pair drive)
GateRun run_gate(const RunConfig& cfg, const std::string& which);

// one row per swept value, other parameters held fixed; a failing row records
// its error in the status cell and the sweep continues
ResultTable run_sweep(const RunConfig& cfg);

}  // namespace helispin
