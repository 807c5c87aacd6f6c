#include "helispin/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "helispin/constants.hpp"

namespace helispin {

namespace {
constexpr double kPi = 3.14159265358979323846;

double sup_difference(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("occupancy curves have different lengths");
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// per-time total population of one Fock level range in the named mode
std::vector<double> mode_level_population(const Trajectory& traj, const std::string& mode,
                                          int lo, int hi) {
    const int pos = traj.layout.position(mode);
    const long D = traj.layout.total_dim();
    std::vector<int> level(D);
    for (long i = 0; i < D; ++i) level[i] = traj.layout.unflatten(i)[pos];
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        double p = 0.0;
        for (long i = 0; i < D; ++i)
            if (level[i] >= lo && level[i] <= hi) p += std::norm(s(i));
        out.push_back(p);
    }
    return out;
}
}  // namespace

FrequencyFit fit_transfer_frequency(const std::vector<double>& times,
                                    const std::vector<double>& values) {
    const size_t n = values.size();
    if (n != times.size() || n < 8)
        throw std::invalid_argument("frequency fit needs at least 8 uniform samples");
    const double dt = times[1] - times[0];
    for (size_t i = 1; i + 1 < n; ++i)
        if (std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * std::max(dt, times[n - 1]))
            throw std::invalid_argument("frequency fit needs uniform sampling");

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> w(n);
    double var = 0.0;
    for (size_t i = 0; i < n; ++i) {
        w[i] = values[i] - mean;
        var += w[i] * w[i];
    }
    var /= static_cast<double>(n);

    FrequencyFit fit;
    if (var < 1e-16) {  // occupancies live in [0,1]; this is numerically constant
        fit.flat = true;
        return fit;
    }

    // unbiased autocorrelation up to half the record
    const size_t kmax = n / 2;
    std::vector<double> acf(kmax + 1, 0.0);
    for (size_t k = 0; k <= kmax; ++k) {
        double s = 0.0;
        for (size_t i = 0; i + k < n; ++i) s += w[i] * w[i + k];
        acf[k] = s / static_cast<double>(n - k);
    }

    // first negative local minimum; small positive ripple minima from fast
    // rotating terms are skipped
    size_t kmin = 0;
    for (size_t k = 1; k + 1 <= kmax; ++k) {
        if (acf[k] < 0 && acf[k] <= acf[k - 1] && acf[k] <= acf[k + 1]) {
            kmin = k;
            break;
        }
    }
    if (kmin == 0) {
        fit.flat = true;
        return fit;
    }

    double kf = static_cast<double>(kmin);
    if (kmin + 1 <= kmax) {
        const double denom = acf[kmin - 1] - 2.0 * acf[kmin] + acf[kmin + 1];
        if (std::abs(denom) > 0)
            kf += 0.5 * (acf[kmin - 1] - acf[kmin + 1]) / denom;
    }
    fit.lag_s = kf * dt;
    fit.frequency_rad_per_s = kPi / (2.0 * fit.lag_s);
    fit.residual = 1.0 + acf[kmin] / acf[0];
    return fit;
}

ModelComparison compare_jc_reduction(double omega, double omega_tilde, double delta,
                                     double Delta, double t_final, int fock_dim,
                                     int samples, const StepControl& sc) {
    if (!(t_final > 0)) throw std::invalid_argument("t_final must be positive");
    if (samples < 8) throw std::invalid_argument("need at least 8 samples");
    if (delta == 0) throw std::domain_error("reduction undefined at zero detuning");

    ModelComparison cmp;
    if (delta != Delta)
        cmp.warnings.push_back("detunings differ; the reduction assumes matched detunings");
    if (std::abs(omega / delta) > 0.2 || std::abs(omega_tilde / delta) > 0.2)
        cmp.warnings.push_back("drive is not deep in the perturbative regime");

    const SpaceLayout layout = layout_electron_pair(fock_dim);
    const auto sample_times = linspace(0.0, t_final, samples);
    const StateVector psi0 = basis_state(layout, {"up", "0", "0"});

    const auto full = two_electron_full(omega, delta, omega_tilde, Delta, layout);
    cmp.full_trajectory = evolve({full, psi0, 0.0, t_final, sample_times, sc});

    const bool matched = omega == omega_tilde;
    const auto effective =
        matched ? distant_jc(omega * omega_tilde / delta, layout)
                : effective_dispersive_jc(omega, omega_tilde, delta, layout);
    cmp.effective_trajectory = evolve({effective, psi0, 0.0, t_final, sample_times, sc});

    cmp.observables = {{"up", "0", "0"}, {"down", "0", "1"}};
    cmp.observables_effective = cmp.observables;
    for (const auto& tokens : cmp.observables) {
        cmp.max_deviation.push_back(
            sup_difference(occupancy_series(cmp.full_trajectory, tokens),
                           occupancy_series(cmp.effective_trajectory, tokens)));
    }

    const auto transfer = occupancy_series(cmp.full_trajectory, {"down", "0", "1"});
    cmp.peak_transfer = *std::max_element(transfer.begin(), transfer.end());
    const auto fit = fit_transfer_frequency(cmp.full_trajectory.times, transfer);
    cmp.fit_flat = fit.flat;
    cmp.fitted_frequency_rad_per_s = fit.frequency_rad_per_s;
    cmp.fit_residual = fit.residual;
    cmp.predicted_frequency_rad_per_s = std::abs(omega * omega_tilde / delta);
    if (cmp.predicted_frequency_rad_per_s > 0 && !fit.flat)
        cmp.frequency_ratio = cmp.fitted_frequency_rad_per_s / cmp.predicted_frequency_rad_per_s;
    return cmp;
}

ModelComparison compare_spin_spin_reduction(double omega, double omega_tilde, double delta,
                                            double G, double eta, double t_final, int fock_a,
                                            int fock_b, int samples, const StepControl& sc) {
    if (!(t_final > 0)) throw std::invalid_argument("t_final must be positive");
    if (samples < 8) throw std::invalid_argument("need at least 8 samples");
    const auto ec = effective_strengths(omega, omega_tilde, delta, G, eta);
    const double omega_dprime = spin_spin_rate(ec);  // throws when gamma vanished

    ModelComparison cmp;
    if (ec.gamma != 0 && std::abs(G / ec.gamma) > 0.2)
        cmp.warnings.push_back("drive G is not small against gamma");
    if (std::abs(omega / delta) > 0.2 || std::abs(omega_tilde / delta) > 0.2)
        cmp.warnings.push_back("drive is not deep in the perturbative regime");

    const SpaceLayout full_layout = layout_driven_pair(fock_a, fock_b);
    const auto sample_times = linspace(0.0, t_final, samples);
    const StateVector psi0 = basis_state(full_layout, {"down", "0", "0", "up"});

    const auto full = driven_pair_full(omega, delta, omega_tilde, G, eta, full_layout);
    cmp.full_trajectory = evolve({full, psi0, 0.0, t_final, sample_times, sc});

    const SpaceLayout spin_layout = layout_two_spins();
    const auto effective = spin_spin_effective(omega_dprime, spin_layout);
    const StateVector chi0 = basis_state(spin_layout, {"down", "up"});
    cmp.effective_trajectory = evolve({effective, chi0, 0.0, t_final, sample_times, sc});

    cmp.observables = {{"down", "0", "0", "up"}, {"up", "0", "0", "down"}};
    cmp.observables_effective = {{"down", "up"}, {"up", "down"}};
    for (size_t i = 0; i < cmp.observables.size(); ++i) {
        cmp.max_deviation.push_back(sup_difference(
            occupancy_series(cmp.full_trajectory, cmp.observables[i]),
            occupancy_series(cmp.effective_trajectory, cmp.observables_effective[i])));
    }

    const auto transfer = occupancy_series(cmp.full_trajectory, {"up", "0", "0", "down"});
    cmp.peak_transfer = *std::max_element(transfer.begin(), transfer.end());
    const auto fit = fit_transfer_frequency(cmp.full_trajectory.times, transfer);
    cmp.fit_flat = fit.flat;
    cmp.fitted_frequency_rad_per_s = fit.frequency_rad_per_s;
    cmp.fit_residual = fit.residual;
    cmp.predicted_frequency_rad_per_s = std::abs(omega_dprime);
    if (cmp.predicted_frequency_rad_per_s > 0 && !fit.flat)
        cmp.frequency_ratio = cmp.fitted_frequency_rad_per_s / cmp.predicted_frequency_rad_per_s;
    return cmp;
}

std::vector<TruncationRow> truncation_convergence(double omega, double omega_tilde,
                                                  double delta, double Delta, double t_final,
                                                  const std::vector<int>& fock_dims,
                                                  int samples, const StepControl& sc) {
    if (fock_dims.size() < 2)
        throw std::invalid_argument("convergence check needs at least two truncations");
    for (size_t i = 1; i < fock_dims.size(); ++i)
        if (fock_dims[i] <= fock_dims[i - 1])
            throw std::invalid_argument("truncations must be strictly ascending");

    const auto sample_times = linspace(0.0, t_final, samples);
    std::vector<TruncationRow> rows;
    std::vector<std::vector<double>> prev_curves;
    for (int dim : fock_dims) {
        const SpaceLayout layout = layout_electron_pair(dim);
        const auto ham = two_electron_full(omega, delta, omega_tilde, Delta, layout);
        const StateVector psi0 = basis_state(layout, {"up", "0", "0"});
        const Trajectory traj = evolve({ham, psi0, 0.0, t_final, sample_times, sc});

        std::vector<std::vector<double>> curves = {
            occupancy_series(traj, {"up", "0", "0"}),
            occupancy_series(traj, {"down", "0", "1"})};

        TruncationRow row;
        row.fock_dim = dim;
        row.diff_from_previous = std::numeric_limits<double>::quiet_NaN();
        if (!prev_curves.empty()) {
            double d = 0.0;
            for (size_t i = 0; i < curves.size(); ++i)
                d = std::max(d, sup_difference(curves[i], prev_curves[i]));
            row.diff_from_previous = d;
        }
        const auto level1 = mode_level_population(traj, "a", 1, 1);
        const auto higher = mode_level_population(traj, "a", 2, dim - 1);
        row.max_level1_population = *std::max_element(level1.begin(), level1.end());
        row.max_higher_population = *std::max_element(higher.begin(), higher.end());
        rows.push_back(row);
        prev_curves = std::move(curves);
    }
    return rows;
}

}  // namespace helispin
