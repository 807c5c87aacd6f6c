#pragma once

#include <Eigen/Sparse>

#include "helispin/hilbert.hpp"

// Interaction-picture Hamiltonians as sums of rotating terms
//   H(t)/hbar = sum_k  amp_k * exp(i(rate_k t + off_k)) * M_k   (+ h.c. if paired)
// Matrices are stored as H/hbar, so every matrix element is a rate in rad/s.

namespace helispin {

struct RotatingTerm {
    OperatorMatrix op;
    double amplitude_rad_per_s;
    double phase_rate_rad_per_s;
    double phase_offset = 0.0;
    // when set, the conjugate partner amp*exp(-i(...))*M^dag is implied;
    // unpaired terms must be static and Hermitian on their own
    bool hermitian_pair = true;
};

class TimeDependentHamiltonian {
  public:
    TimeDependentHamiltonian(SpaceLayout layout, std::vector<RotatingTerm> terms);

    const SpaceLayout& layout() const { return layout_; }
    const std::vector<RotatingTerm>& terms() const { return terms_; }

    OperatorMatrix evaluate(double t) const;

    // y += -i H(t) x, the Schroedinger right-hand side; sparse term caches make
    // this the hot path for the integrators
    void apply_rhs(double t, const Vector& x, Vector& y) const;

    double max_phase_rate() const;
    // sum of |amp|*sigma_max(M) over terms (pairs counted twice): a spectral
    // bound on ||H(t)||/hbar, used for step-size selection
    double amplitude_bound() const;

    // Hamiltonian generating the inverse evolution: -H(T - t)
    TimeDependentHamiltonian time_reversed(double T) const;

  private:
    SpaceLayout layout_;
    std::vector<RotatingTerm> terms_;
    std::vector<Eigen::SparseMatrix<Complex>> sp_, sp_adj_;
    std::vector<double> op_norms_;
};

// --- builders -------------------------------------------------------------
// Factor labels are fixed: "spin1"/"a" for the driven electron, "b"/"spin2"
// for the distant one. Layouts may carry extra factors; they are left alone.

// hbar*Omega (e^{i delta t} sigma+ a + h.c.): driven spin-orbit sideband
TimeDependentHamiltonian single_electron_jc(double omega, double delta,
                                            const SpaceLayout& layout,
                                            const std::string& spin = "spin1",
                                            const std::string& mode = "a");

// adds hbar*Omega~ (e^{i Delta t} a b~dag + h.c.): vibration exchange
TimeDependentHamiltonian two_electron_full(double omega, double delta, double omega_tilde,
                                           double Delta, const SpaceLayout& layout);

// static second-order form on (spin1, a, b):
//   (Omega^2/delta)[a~dag a (s+s- - s-s+) + s+s-] + (Omega~^2/delta)(b~dag b - a~dag a)
//   + (Omega Omega~/delta)(s+ b + s- b~dag)
TimeDependentHamiltonian effective_second_order(double omega, double omega_tilde, double delta,
                                                const SpaceLayout& layout);

// a-vacuum reduction of the above (drops every a~dag a term); needs spin1 and b
TimeDependentHamiltonian effective_dispersive_jc(double omega, double omega_tilde, double delta,
                                                 const SpaceLayout& layout);

// hbar*Omega' (s+ b + s- b~dag): the distant-JC limit (shifts equal when
// Omega = Omega~)
TimeDependentHamiltonian distant_jc(double omega_prime, const SpaceLayout& layout,
                                    const std::string& spin = "spin1",
                                    const std::string& mode = "b");

// both drives on: spin1-a at rate delta, a-b at rate Delta(=delta), spin2-b at
// rate eta
TimeDependentHamiltonian driven_pair_full(double omega, double delta, double omega_tilde,
                                          double G, double eta, const SpaceLayout& layout);

// after eliminating mode a: spin1-b at rate gamma=(Omega^2-Omega~^2)/delta with
// strength Omega Omega~/delta, spin2-b at rate eta - Omega~^2/delta
TimeDependentHamiltonian driven_pair_intermediate(double omega, double omega_tilde, double delta,
                                                  double G, double eta,
                                                  const SpaceLayout& layout);

// hbar*Omega'' (s+ t- + s- t+): direct spin-spin flip-flop
TimeDependentHamiltonian spin_spin_effective(double omega_dprime, const SpaceLayout& layout);

}  // namespace helispin
