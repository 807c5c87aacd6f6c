#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helispin/constants.hpp"

using namespace helispin;

// Expected values below were frozen from an independent evaluation of the
// formulas (CODATA-2018 inputs) before this module was written.

namespace {
const PhysicalConstants C = PhysicalConstants::codata2018();

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }
}  // namespace

TEST_CASE("constants validate and are positive") {
    CHECK_NOTHROW(C.validate());
    CHECK(C.g_factor == 2.0);
    PhysicalConstants bad = C;
    bad.hbar_Js = 0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("image-charge hydrogenic scales") {
    CHECK(close(image_charge_lambda(C), 6.927564414195e-03, 1e-11));
    auto s = rydberg_and_bohr(C);
    CHECK(close(s.rydberg_rad_per_s, 9.920099996762e+11, 1e-11));
    CHECK(close(s.bohr_radius_m, 7.638719449122e-09, 1e-11));
    // quoted scales: ~170 GHz-scale binding, ~7.6 nm orbit
    CHECK(std::abs(s.rydberg_rad_per_s - 2 * M_PI * 170e9) < 0.15 * 2 * M_PI * 170e9);
    CHECK(std::abs(s.bohr_radius_m - 7.6e-9) < 0.05 * 7.6e-9);
}

TEST_CASE("dielectric at or below 1 is rejected") {
    PhysicalConstants c1 = C;
    c1.helium_dielectric = 1.0;
    CHECK_THROWS_AS(rydberg_and_bohr(c1), std::domain_error);
    // eps -> 1+ : binding collapses, orbit blows up
    PhysicalConstants c2 = C;
    c2.helium_dielectric = 1.0 + 1e-9;
    auto s = rydberg_and_bohr(c2);
    CHECK(s.rydberg_rad_per_s < 1.0);
    CHECK(s.bohr_radius_m > 0.1);  // eight orders past the real 7.6 nm orbit
}

TEST_CASE("trap frequency") {
    CHECK(close(trap_frequency(C, C.elementary_charge_C, 0.5e-6), 4.501234018842e+10, 1e-11));
    // scaling: H^{-3/2}, Q^{1/2}
    double f1 = trap_frequency(C, 1e-19, 1e-6);
    CHECK(close(trap_frequency(C, 1e-19, 4e-6), f1 / 8.0, 1e-12));
    CHECK(close(trap_frequency(C, 4e-19, 1e-6), f1 * 2.0, 1e-12));
    CHECK_THROWS_AS(trap_frequency(C, -1e-19, 1e-6), std::domain_error);
    CHECK_THROWS_AS(trap_frequency(C, 1e-19, 0.0), std::domain_error);
}

TEST_CASE("spin frequency") {
    CHECK(close(spin_frequency(C, 0.06, 1e-3, 0.5e-6), 1.062327287154e+10, 1e-11));
    // wire field alone: mu0*I/(2 pi h) = 4e-4 T at 1 mA, 0.5 um
    double wire_only = spin_frequency(C, 0.0, 1e-3, 0.5e-6);
    double static_only = spin_frequency(C, 4e-4, 0.0, 0.5e-6);
    CHECK(close(wire_only, static_only, 1e-9));
}

TEST_CASE("spin-orbit strength hits the quoted 5.2 MHz scale") {
    double om = spin_orbit_strength(C, 1e-3, 0.5e-6, 1e10);
    CHECK(close(om, 5.352540655671e+06, 1e-11));
    CHECK(std::abs(om - 5.2e6) < 0.05 * 5.2e6);
    // linear in I, 1/h^2, nu^{-1/2}
    CHECK(close(spin_orbit_strength(C, 2e-3, 0.5e-6, 1e10), 2 * om, 1e-12));
    CHECK(close(spin_orbit_strength(C, 1e-3, 1.0e-6, 1e10), om / 4, 1e-12));
    CHECK(close(spin_orbit_strength(C, 1e-3, 0.5e-6, 4e10), om / 2, 1e-12));
}

TEST_CASE("coulomb strength hits the quoted 25 MHz scale") {
    double ot = coulomb_strength(C, 1e-5, 1e10, 1e10);
    CHECK(close(ot, 2.532638461548e+07, 1e-11));
    CHECK(std::abs(ot - 25e6) < 0.05 * 25e6);
    CHECK(close(coulomb_strength(C, 1e-5, 1e10, 1.025e10), 2.501561966084e+07, 1e-11));
    // d^{-3}
    CHECK(close(coulomb_strength(C, 2e-5, 1e10, 1e10), ot / 8, 1e-12));
    CHECK(close(coulomb_strength(C, 2e-5, 1e10, 1e10), 3.165798076935e+06, 1e-11));
}

TEST_CASE("effective strengths at the two quoted operating points") {
    // transfer point: drive raised to the exchange strength
    auto tp = effective_strengths(2.5e7, 2.5e7, 2.5e8);
    CHECK(close(tp.omega_prime, 2.5e6, 1e-12));
    CHECK(tp.gamma == 0.0);
    CHECK(!tp.omega_dprime.has_value());
    CHECK_THROWS_AS(spin_spin_rate(tp), std::domain_error);

    // exchange point: weak drive, strong exchange
    auto ep = effective_strengths(2.6e6, 2.501561966084e+07, 2.5e8);
    CHECK(close(ep.G, 2.601624444727e+05, 1e-10));
    CHECK(close(ep.eta, 2.704e4, 1e-12));
    CHECK(close(ep.gamma, -2.476084908063e+06, 1e-10));
    CHECK(close(spin_spin_rate(ep), -2.733528938916e+04, 1e-10));
    CHECK(std::abs(std::abs(*ep.omega_dprime) - 27e3) < 0.05 * 27e3);
    CHECK(std::abs(std::abs(ep.gamma) - 2.5e6) < 0.05 * 2.5e6);
    CHECK(std::abs(ep.G - 0.26e6) < 0.05 * 0.26e6);

    CHECK_THROWS_AS(effective_strengths(1e6, 1e6, 0.0), std::domain_error);
}

TEST_CASE("effective strengths honor explicit drive choices") {
    auto ec = effective_strengths(2.6e6, 2.5e7, 2.5e8, 1e5, 3e4);
    CHECK(ec.G == 1e5);
    CHECK(ec.eta == 3e4);
    CHECK(close(ec.omega_prime, 2.6e6 * 2.5e7 / 2.5e8, 1e-12));
}

TEST_CASE("regime check") {
    auto ok = regime_check(C, 2.5e7, 2.5e7, 2.5e8, std::nullopt, std::nullopt, 1e10, 0.020);
    CHECK(ok.perturbative_ok);
    CHECK(ok.freezing_ok);
    CHECK(close(ok.freeze_ratio, 3.819116288789, 1e-11));
    CHECK(ok.omega_over_delta == doctest::Approx(0.1));

    auto hot = regime_check(C, 2.5e7, 2.5e7, 2.5e8, std::nullopt, std::nullopt, 1e10, 1.0);
    CHECK(!hot.freezing_ok);
    CHECK(close(hot.freeze_ratio, 7.638232577578e-02, 1e-11));
    CHECK(!hot.notes.empty());

    auto strong = regime_check(C, 2e8, 2.5e7, 2.5e8, std::nullopt, std::nullopt, 1e10, 0.020);
    CHECK(!strong.perturbative_ok);

    // G/gamma folded in when provided
    auto gg = regime_check(C, 2.6e6, 2.5e7, 2.5e8, 2.6e5, -2.47e6, 1e10, 0.020);
    CHECK(gg.g_over_gamma.has_value());
    CHECK(gg.perturbative_ok);
}

TEST_CASE("device validation lists bad fields") {
    DeviceParams d;
    d.wire_height_m = 0.5e-6;
    d.current_A = 1e-3;
    d.static_field_T = 0.06;
    d.distance_m = 1e-5;
    d.nu_1x_rad_per_s = 1e10;
    d.nu_2x_rad_per_s = 1.025e10;
    d.delta_rad_per_s = 2.5e8;
    CHECK_NOTHROW(d.validate());
    CHECK(d.Delta_rad_per_s() == doctest::Approx(2.5e8));
    DeviceParams bad = d;
    bad.delta_rad_per_s = -1;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("derived couplings reproduce the quoted table") {
    DeviceParams d;
    d.wire_height_m = 0.5e-6;
    d.current_A = 1e-3;
    d.static_field_T = 0.06;
    d.distance_m = 1e-5;
    d.nu_1x_rad_per_s = 1e10;
    d.nu_2x_rad_per_s = 1.025e10;
    d.delta_rad_per_s = 2.5e8;
    auto dc = derive_couplings(C, d, std::nullopt, 2.6e6);
    CHECK(std::abs(dc.omega_device - 5.2e6) < 0.05 * 5.2e6);
    CHECK(std::abs(dc.omega_tilde - 25e6) < 0.05 * 25e6);
    CHECK(std::abs(dc.transfer_point.omega_prime - 2.5e6) < 0.05 * 2.5e6);
    CHECK(std::abs(dc.exchange_point.G - 0.26e6) < 0.05 * 0.26e6);
    CHECK(std::abs(std::abs(dc.exchange_point.gamma) - 2.5e6) < 0.05 * 2.5e6);
    CHECK(std::abs(std::abs(spin_spin_rate(dc.exchange_point)) - 27e3) < 0.05 * 27e3);
}
