#pragma once

#include <stdexcept>

#include "helispin/hamiltonian.hpp"

// Schroedinger propagation i dpsi/dt = (H(t)/hbar) psi with an explicit
// Dormand-Prince 5(4) stepper. No renormalization is ever applied: the norm
// drift over a run is reported as a quality metric and trips an error only
// past 10x the accepted tolerance.

namespace helispin {

struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepControl {
    // fixed_dt > 0 pins the step directly; otherwise dt = (2pi/w_max)/steps_per_period
    // with w_max = max(largest phase rate, spectral bound on ||H||/hbar)
    double fixed_dt = 0.0;
    // > 0 switches to the embedded 4th-order error estimate with this
    // dimensionless local tolerance
    double target_local_error = 0.0;
    int steps_per_period = 64;
};

struct EvolutionRequest {
    TimeDependentHamiltonian ham;
    StateVector psi0;
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<double> sample_times;  // sorted, within [t0, t1]
    StepControl step;
    double norm_tolerance = 1e-9;  // drift beyond 10x this aborts the run
};

struct Trajectory {
    SpaceLayout layout;
    std::vector<double> times;
    std::vector<Vector> states;
    double norm_drift = 0.0;  // max | ||psi|| - 1 | over integration steps
    double dt_nominal = 0.0;
    long steps = 0;
    bool interpolated = false;  // samples read off by linear interpolation
};

double default_fixed_dt(const TimeDependentHamiltonian& ham, int steps_per_period);

Trajectory evolve(const EvolutionRequest& req);

// final state only
StateVector evolve_final(const TimeDependentHamiltonian& ham, const StateVector& psi0,
                         double t0, double t1, const StepControl& sc = {});

// full propagator U(t1,t0) by integrating the matrix equation; the step is
// additionally capped so that the worst Fock column stays inside a norm-drift
// budget, and ||U~dag U - 1|| <= defect_tolerance is enforced afterwards
OperatorMatrix propagator_matrix(const TimeDependentHamiltonian& ham, double t0, double t1,
                                 const StepControl& sc = {}, double defect_tolerance = 1e-8);

// independent reference: product of midpoint exponentials
// U = prod_k exp(-i H(t_k + dt/2) dt), each factor unitary by construction
OperatorMatrix oracle_piecewise_expm(const TimeDependentHamiltonian& ham, double t0, double t1,
                                     long slices);

// exp(-i H dt) for Hermitian H via eigendecomposition
Matrix hermitian_propagator_step(const Matrix& h, double dt);

double unitarity_defect(const Matrix& u);  // spectral norm of U~dag U - 1

std::vector<double> linspace(double t0, double t1, int n);

// occupancy of one basis state along a trajectory
std::vector<double> occupancy_series(const Trajectory& traj,
                                     const std::vector<std::string>& tokens);

}  // namespace helispin
