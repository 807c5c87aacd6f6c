#pragma once

#include "helispin/propagator.hpp"

// Side-by-side runs of the microscopic models against their second-order
// reductions, scored by occupancy-curve deviation and a fitted transfer
// frequency.

namespace helispin {

struct FrequencyFit {
    double frequency_rad_per_s = 0.0;
    double lag_s = 0.0;       // first autocorrelation minimum, quarter period of
                              // the occupancy, so frequency = pi/(2 lag)
    double residual = 0.0;    // 1 + A(lag)/A(0), zero for a clean oscillation
    bool flat = false;        // no oscillation to fit; frequency left at zero
};

// dominant transfer frequency from the first negative local minimum of the
// mean-subtracted autocorrelation, lag refined parabolically; needs uniform
// sampling
FrequencyFit fit_transfer_frequency(const std::vector<double>& times,
                                    const std::vector<double>& values);

struct ModelComparison {
    Trajectory full_trajectory;
    Trajectory effective_trajectory;
    // tracked basis states, index-aligned between the two layouts
    std::vector<std::vector<std::string>> observables;
    std::vector<std::vector<std::string>> observables_effective;
    std::vector<double> max_deviation;  // per observable, sup over sample times
    double fitted_frequency_rad_per_s = 0.0;  // from the full-model transfer curve
    double predicted_frequency_rad_per_s = 0.0;
    double frequency_ratio = 0.0;
    double fit_residual = 0.0;
    double peak_transfer = 0.0;  // largest occupancy the transfer state reaches
    bool fit_flat = false;
    std::vector<std::string> warnings;  // regime violations never abort a run
};

// microscopic spin-mode-mode drive against its dispersive reduction, started
// from the spin-up vacuum; the reduction is the pure exchange form when the
// two drive rates match and keeps its frame shifts otherwise
ModelComparison compare_jc_reduction(double omega, double omega_tilde, double delta,
                                     double Delta, double t_final, int fock_dim = 6,
                                     int samples = 400, const StepControl& sc = {});

// individually driven pair against the flip-flop reduction, started from
// |down1, 0, 0, up2>; gamma = (omega^2 - omega_tilde^2)/delta must not vanish
ModelComparison compare_spin_spin_reduction(double omega, double omega_tilde, double delta,
                                            double G, double eta, double t_final,
                                            int fock_a = 4, int fock_b = 4,
                                            int samples = 400, const StepControl& sc = {});

struct TruncationRow {
    int fock_dim = 0;
    // sup over both tracked occupancy curves against the previous row; NaN on
    // the first row
    double diff_from_previous = 0.0;
    double max_level1_population = 0.0;  // mode a, transient
    double max_higher_population = 0.0;  // mode a, levels >= 2
};

// reruns the transfer experiment at each truncation of both modes
std::vector<TruncationRow> truncation_convergence(double omega, double omega_tilde,
                                                  double delta, double Delta, double t_final,
                                                  const std::vector<int>& fock_dims,
                                                  int samples = 400,
                                                  const StepControl& sc = {});

}  // namespace helispin
