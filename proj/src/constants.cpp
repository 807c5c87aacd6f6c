#include "helispin/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace helispin {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error(msg);
}
}  // namespace

PhysicalConstants PhysicalConstants::codata2018() {
    PhysicalConstants c;
    c.electron_mass_kg = 9.1093837015e-31;
    c.elementary_charge_C = 1.602176634e-19;
    c.hbar_Js = 1.054571817e-34;
    c.bohr_magneton_J_per_T = 9.2740100783e-24;
    c.vacuum_permeability_Tm_per_A = 1.25663706212e-6;
    c.vacuum_permittivity_F_per_m = 8.8541878128e-12;
    c.boltzmann_J_per_K = 1.380649e-23;
    c.g_factor = 2.0;
    c.helium_dielectric = 1.057;
    return c;
}

void PhysicalConstants::validate() const {
    require(electron_mass_kg > 0, "electron mass must be positive");
    require(elementary_charge_C > 0, "elementary charge must be positive");
    require(hbar_Js > 0, "hbar must be positive");
    require(bohr_magneton_J_per_T > 0, "Bohr magneton must be positive");
    require(vacuum_permeability_Tm_per_A > 0, "vacuum permeability must be positive");
    require(vacuum_permittivity_F_per_m > 0, "vacuum permittivity must be positive");
    require(boltzmann_J_per_K > 0, "Boltzmann constant must be positive");
    require(g_factor > 0, "g factor must be positive");
    require(helium_dielectric > 0, "dielectric constant must be positive");
}

double PhysicalConstants::coulomb_factor_Jm() const {
    return elementary_charge_C * elementary_charge_C /
           (4.0 * kPi * vacuum_permittivity_F_per_m);
}

double image_charge_lambda(const PhysicalConstants& c) {
    return (c.helium_dielectric - 1.0) / (4.0 * (c.helium_dielectric + 1.0));
}

HydrogenicScales rydberg_and_bohr(const PhysicalConstants& c) {
    require(c.helium_dielectric > 1.0,
            "dielectric constant must exceed 1 for an attractive image charge");
    const double lam = image_charge_lambda(c);
    const double ke = c.coulomb_factor_Jm();
    HydrogenicScales s;
    s.rydberg_rad_per_s =
        lam * lam * ke * ke * c.electron_mass_kg / (2.0 * std::pow(c.hbar_Js, 3));
    s.bohr_radius_m = c.hbar_Js * c.hbar_Js / (c.electron_mass_kg * ke * lam);
    return s;
}

double trap_frequency(const PhysicalConstants& c, double trap_charge_C, double trap_depth_m) {
    require(trap_charge_C > 0, "trap charge must be positive");
    require(trap_depth_m > 0, "trap depth must be positive");
    const double eQ = c.elementary_charge_C * trap_charge_C /
                      (4.0 * kPi * c.vacuum_permittivity_F_per_m);
    return std::sqrt(eQ / (c.electron_mass_kg * std::pow(trap_depth_m, 3)));
}

double spin_frequency(const PhysicalConstants& c, double static_field_T, double current_A,
                      double wire_height_m) {
    require(static_field_T >= 0, "static field must be nonnegative");
    require(current_A >= 0, "current must be nonnegative");
    require(wire_height_m > 0, "wire height must be positive");
    const double wire_field =
        c.vacuum_permeability_Tm_per_A * current_A / (2.0 * kPi * wire_height_m);
    return c.g_factor * c.bohr_magneton_J_per_T * (static_field_T + wire_field) / c.hbar_Js;
}

double spin_orbit_strength(const PhysicalConstants& c, double current_A, double wire_height_m,
                           double nu_x_rad_per_s) {
    require(current_A >= 0, "current must be nonnegative");
    require(wire_height_m > 0, "wire height must be positive");
    require(nu_x_rad_per_s > 0, "trap frequency must be positive");
    const double zpf = std::sqrt(2.0 * c.hbar_Js * c.electron_mass_kg * nu_x_rad_per_s);
    return c.g_factor * c.bohr_magneton_J_per_T * c.vacuum_permeability_Tm_per_A * current_A /
           (4.0 * kPi * wire_height_m * wire_height_m * zpf);
}

double coulomb_strength(const PhysicalConstants& c, double distance_m, double nu_1x_rad_per_s,
                        double nu_2x_rad_per_s) {
    require(distance_m > 0, "electron distance must be positive");
    require(nu_1x_rad_per_s > 0 && nu_2x_rad_per_s > 0, "trap frequencies must be positive");
    return c.coulomb_factor_Jm() /
           (c.electron_mass_kg * std::pow(distance_m, 3) *
            std::sqrt(nu_1x_rad_per_s * nu_2x_rad_per_s));
}

EffectiveCouplings effective_strengths(double omega, double omega_tilde, double delta,
                                       std::optional<double> G_override,
                                       std::optional<double> eta_override) {
    require(delta != 0, "detuning delta must be nonzero");
    require(omega >= 0 && omega_tilde >= 0, "coupling strengths must be nonnegative");
    EffectiveCouplings ec;
    ec.omega_prime = omega * omega_tilde / delta;
    ec.G = G_override.value_or(omega * omega_tilde / delta);
    ec.eta = eta_override.value_or(omega * omega / delta);
    ec.gamma = (omega * omega - omega_tilde * omega_tilde) / delta;
    if (ec.gamma != 0) ec.omega_dprime = ec.G * ec.G / ec.gamma;
    return ec;
}

double spin_spin_rate(const EffectiveCouplings& ec) {
    if (!ec.omega_dprime)
        throw std::domain_error(
            "degenerate detuning: gamma = 0 (omega = omega~) leaves no spin-spin rate");
    return *ec.omega_dprime;
}

RegimeReport regime_check(const PhysicalConstants& c, double omega, double omega_tilde,
                          double delta, std::optional<double> G, std::optional<double> gamma,
                          double nu_x_rad_per_s, double temperature_K, double threshold) {
    require(threshold > 0, "regime threshold must be positive");
    require(delta != 0, "detuning delta must be nonzero");
    require(nu_x_rad_per_s > 0, "trap frequency must be positive");
    require(temperature_K > 0, "temperature must be positive");
    RegimeReport r;
    r.threshold = threshold;
    r.omega_over_delta = std::abs(omega / delta);
    r.omega_tilde_over_delta = std::abs(omega_tilde / delta);
    r.perturbative_ok =
        r.omega_over_delta <= threshold && r.omega_tilde_over_delta <= threshold;
    if (G && gamma && *gamma != 0) {
        r.g_over_gamma = std::abs(*G / *gamma);
        r.perturbative_ok = r.perturbative_ok && *r.g_over_gamma <= threshold;
    }
    r.freeze_ratio = c.hbar_Js * nu_x_rad_per_s / (c.boltzmann_J_per_K * temperature_K);
    r.freezing_ok = r.freeze_ratio > 1.0;
    if (!r.perturbative_ok)
        r.notes.push_back("coupling/detuning ratio exceeds threshold; virtual-excitation "
                          "reduction is unreliable here");
    if (!r.freezing_ok)
        r.notes.push_back("kB*T exceeds the vibrational quantum; ground-state freezing fails");
    return r;
}

void DeviceParams::validate() const {
    require(wire_height_m > 0, "wire_height_m must be positive");
    require(current_A >= 0, "current_A must be nonnegative");
    require(static_field_T >= 0, "static_field_T must be nonnegative");
    require(distance_m > 0, "distance_m must be positive");
    require(nu_1x_rad_per_s > 0, "nu_1x_rad_per_s must be positive");
    require(nu_2x_rad_per_s > 0, "nu_2x_rad_per_s must be positive");
    require(delta_rad_per_s > 0, "delta_rad_per_s must be positive");
    require(temperature_K > 0, "temperature_K must be positive");
    if (trap_charge_C) require(*trap_charge_C > 0, "trap_charge_C must be positive");
    if (trap_depth_m) require(*trap_depth_m > 0, "trap_depth_m must be positive");
}

DerivedCouplings derive_couplings(const PhysicalConstants& c, const DeviceParams& d,
                                  std::optional<double> fig3_omega,
                                  std::optional<double> fig4_omega) {
    d.validate();
    DerivedCouplings dc;
    dc.nu_s = spin_frequency(c, d.static_field_T, d.current_A, d.wire_height_m);
    dc.omega_device = spin_orbit_strength(c, d.current_A, d.wire_height_m, d.nu_1x_rad_per_s);
    dc.omega_tilde = coulomb_strength(c, d.distance_m, d.nu_1x_rad_per_s, d.nu_2x_rad_per_s);
    dc.fig3_omega = fig3_omega.value_or(dc.omega_tilde);
    dc.fig4_omega = fig4_omega.value_or(dc.omega_device);
    dc.transfer_point = effective_strengths(dc.fig3_omega, dc.omega_tilde, d.delta_rad_per_s);
    dc.exchange_point = effective_strengths(dc.fig4_omega, dc.omega_tilde, d.delta_rad_per_s);
    return dc;
}

}  // namespace helispin
