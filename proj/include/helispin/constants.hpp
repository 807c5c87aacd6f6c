#pragma once

#include <optional>
#include <string>
#include <vector>

// Device-level quantities for electrons floating on liquid helium: image-charge
// binding, lateral trap and Zeeman frequencies, and the coupling strengths that
// feed the dynamics modules. All frequencies are angular (rad/s) throughout;
// a tabulated "MHz" equals rad/s * 1e-6 under this convention.

namespace helispin {

struct PhysicalConstants {
    double electron_mass_kg;
    double elementary_charge_C;
    double hbar_Js;
    double bohr_magneton_J_per_T;
    double vacuum_permeability_Tm_per_A;
    double vacuum_permittivity_F_per_m;
    double boltzmann_J_per_K;
    double g_factor;
    double helium_dielectric;

    static PhysicalConstants codata2018();
    void validate() const;  // throws std::domain_error

    // e^2/(4 pi eps0) in J*m; every Gaussian e^2 in the source formulas maps here
    double coulomb_factor_Jm() const;
};

// image-charge attraction strength Lambda = (eps-1)/(4(eps+1))
double image_charge_lambda(const PhysicalConstants& c);

struct HydrogenicScales {
    double rydberg_rad_per_s;  // E_n = -hbar*R/n^2
    double bohr_radius_m;
};

// vertical bound-state scales of the surface electron; eps must exceed 1
HydrogenicScales rydberg_and_bohr(const PhysicalConstants& c);

// lateral harmonic frequency nu_x = sqrt(e*Q/(4 pi eps0 m H^3)) of the trap
// formed by effective charge Q at depth H below the surface
double trap_frequency(const PhysicalConstants& c, double trap_charge_C, double trap_depth_m);

// Zeeman precession nu_s = g mu_B (B_s + mu0 I/(2 pi h)) / hbar; the second
// term is the wire field at height h above a current I
double spin_frequency(const PhysicalConstants& c, double static_field_T, double current_A,
                      double wire_height_m);

// spin-orbit JC strength Omega = g mu_B mu0 I / (4 pi h^2 sqrt(2 hbar m nu_x))
double spin_orbit_strength(const PhysicalConstants& c, double current_A, double wire_height_m,
                           double nu_x_rad_per_s);

// Coulomb exchange strength Omega~ = e^2/(4 pi eps0 m d^3 sqrt(nu_1x nu_2x))
double coulomb_strength(const PhysicalConstants& c, double distance_m, double nu_1x_rad_per_s,
                        double nu_2x_rad_per_s);

// second-order (virtual-excitation) strengths for drive Omega, exchange
// Omega~, shared detuning delta
struct EffectiveCouplings {
    double omega_prime;  // Omega*Omega~/delta, spin1-b JC rate
    double G;            // spin2 drive strength, default choice Omega*Omega~/delta
    double eta;          // spin2 drive detuning, default choice Omega^2/delta
    double gamma;        // (Omega^2 - Omega~^2)/delta, frame rate of both couplings
    std::optional<double> omega_dprime;  // G^2/gamma; empty when gamma == 0
};

EffectiveCouplings effective_strengths(double omega, double omega_tilde, double delta,
                                       std::optional<double> G_override = std::nullopt,
                                       std::optional<double> eta_override = std::nullopt);

// omega_dprime or a degenerate-detuning error when gamma vanished
double spin_spin_rate(const EffectiveCouplings& ec);

struct RegimeReport {
    double threshold;               // largest ratio still called perturbative
    double omega_over_delta;
    double omega_tilde_over_delta;
    std::optional<double> g_over_gamma;
    double freeze_ratio;            // hbar*nu_x/(kB*T), >1 means vibration frozen
    bool perturbative_ok;
    bool freezing_ok;
    std::vector<std::string> notes;
    bool all_ok() const { return perturbative_ok && freezing_ok; }
};

RegimeReport regime_check(const PhysicalConstants& c, double omega, double omega_tilde,
                          double delta, std::optional<double> G, std::optional<double> gamma,
                          double nu_x_rad_per_s, double temperature_K, double threshold = 0.2);

// electrode/trap geometry as configured; nu_2x defaults to nu_1x + delta
// (equal vibration-vibration and spin-orbit detunings) when left unset
struct DeviceParams {
    double wire_height_m = 0;
    double current_A = 0;
    double static_field_T = 0;
    double distance_m = 0;
    double nu_1x_rad_per_s = 0;
    double nu_2x_rad_per_s = 0;
    double delta_rad_per_s = 0;
    double temperature_K = 0.020;
    std::optional<double> trap_charge_C;
    std::optional<double> trap_depth_m;

    double Delta_rad_per_s() const { return nu_2x_rad_per_s - nu_1x_rad_per_s; }
    void validate() const;  // throws std::domain_error listing the first offender
    bool operator==(const DeviceParams&) const = default;
};

// couplings evaluated from a device at its two quoted operating points:
// transfer (drive raised to Omega=Omega~) and exchange (drive at fig4_omega)
struct DerivedCouplings {
    double nu_s;
    double omega_device;   // from the configured current
    double omega_tilde;
    EffectiveCouplings transfer_point;   // omega = omega_tilde
    EffectiveCouplings exchange_point;   // omega = fig4 drive
    double fig3_omega;
    double fig4_omega;
};

DerivedCouplings derive_couplings(const PhysicalConstants& c, const DeviceParams& d,
                                  std::optional<double> fig3_omega = std::nullopt,
                                  std::optional<double> fig4_omega = std::nullopt);

}  // namespace helispin
