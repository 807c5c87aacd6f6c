#pragma once

#include <string>
#include <variant>
#include <vector>

#include "helispin/propagator.hpp"

// Gate synthesis on top of the propagator: pulse schedules mixing evolved
// Hamiltonian segments with instantaneous frame rotations, scored against
// target unitaries on a declared computational subspace.

namespace helispin {

// cos(a) 1 - i sin(a) (e^{ib}|up><down| + e^{-ib}|down><up|), basis (up, down)
Matrix rotation(double alpha, double beta);

struct HamiltonianSegment {
    TimeDependentHamiltonian ham;
    double duration_s = 0.0;  // > 0
    std::string label;
};

// exact unitary applied between evolved segments, zero duration
struct UnitarySegment {
    OperatorMatrix op;
    std::string label;
};

using ScheduleSegment = std::variant<HamiltonianSegment, UnitarySegment>;

struct PulseSchedule {
    SpaceLayout layout;
    std::vector<ScheduleSegment> segments;

    PulseSchedule(SpaceLayout lay, std::vector<ScheduleSegment> segs);
    double total_duration() const;
};

// product of segment propagators in time order; one global clock, so a
// rotating segment landing later in the schedule sees the accumulated time
OperatorMatrix simulate_schedule(const PulseSchedule& schedule, const StepControl& sc = {});

struct GateReport {
    Matrix achieved;  // restricted to the subspace listed below
    Matrix target;
    std::vector<std::string> subspace;  // comma-joined factor tokens per basis state
    double fidelity = 0.0;              // |tr(T^dag A)|^2 / d^2
    double leakage = 0.0;               // worst column probability outside the subspace
    double unitarity = 0.0;             // defect of the unrestricted propagator
    std::string phase_convention;
};

// |tr(T^dag A)|^2 / d^2, insensitive to a global phase of either argument
double fidelity(const Matrix& target, const Matrix& achieved);

Matrix restrict_to_subspace(const Matrix& u, const std::vector<long>& indices);
double subspace_leakage(const Matrix& u, const std::vector<long>& indices);

GateReport score_gate(const OperatorMatrix& u,
                      const std::vector<std::vector<std::string>>& subspace_tokens,
                      const Matrix& target, std::string phase_convention);

struct PhaseGateCalibration {
    double time_s = 0.0;   // best duration for the given drive rate
    double angle = 0.0;    // drive rate times duration, dimensionless
    double residual = 0.0; // sin^2(x) + ((cos(sqrt2 x)+1)/2)^2 at the optimum
};

// minimizes the off-target residual over angle in [30, 45]; candidates with
// residuals within 1e-6 of the best tie-break toward the shorter pulse
PhaseGateCalibration phase_gate_duration(double omega);

// resonant spin-mode drive held for the given time; scored against
// diag(1, 1, 1, -1) on {|0 down>, |0 up>, |1 down>, |1 up>}
GateReport simulate_phase_gate(double omega, double time_s, int fock_dim,
                               const StepControl& sc = {});

struct GateSynthesis {
    PulseSchedule schedule;
    GateReport report;
};

// rotation, calibrated phase pulse, rotation; scored against the CNOT truth
// table with the vibrational qubit as control and the spin as target
GateSynthesis single_electron_cnot(double omega, int fock_dim = 6,
                                   const StepControl& sc = {});

// half-period exchange pulse between spin 1 and mode b, duration pi/(2 rate)
GateSynthesis v_gate(double omega_prime, int fock_dim = 6, const StepControl& sc = {});

struct TwoSpinCnotInputs {
    double omega_prime = 0.0;  // exchange rate driving the two V segments
    double omega_e2 = 0.0;     // resonant drive rate for the local gate on spin 2
    int fock_a = 4;
    int fock_b = 6;
    // replace the V segments by the microscopic pair drive at the point below;
    // omega_prime then plays the role of omega*omega_tilde/delta
    bool full_segments = false;
    double omega = 0.0;
    double omega_tilde = 0.0;
    double delta = 0.0;
    double Delta = 0.0;
    StepControl step{};
};

struct TwoSpinCnotResult {
    PulseSchedule schedule;
    GateReport report;
    double ground_population_a = 0.0;  // worst case over computational inputs
    double ground_population_b = 0.0;
};

// V, local CNOT on electron 2, V; scored against CNOT with spin 1 as control
// and spin 2 as target, both vibrational modes starting and ending in ground
TwoSpinCnotResult two_spin_cnot(const TwoSpinCnotInputs& in);

}  // namespace helispin
