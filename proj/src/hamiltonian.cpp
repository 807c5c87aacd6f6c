#include "helispin/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace helispin {

namespace {
constexpr double kHermTol = 1e-12;

double spectral_norm(const Matrix& m) {
    // sqrt of the top eigenvalue of M^dag M; matrices here are small and dense
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(m.adjoint() * m), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}
}  // namespace

TimeDependentHamiltonian::TimeDependentHamiltonian(SpaceLayout layout,
                                                   std::vector<RotatingTerm> terms)
    : layout_(std::move(layout)), terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("Hamiltonian needs at least one term");
    for (const auto& t : terms_) {
        if (!(t.op.layout == layout_))
            throw std::invalid_argument("term operator layout differs from Hamiltonian layout");
        if (!t.hermitian_pair) {
            // a lone term must keep H(t) Hermitian at every t
            if (t.phase_rate_rad_per_s != 0.0 || t.phase_offset != 0.0)
                throw std::invalid_argument("unpaired terms must be static with zero offset");
            if (!t.op.is_hermitian(kHermTol))
                throw std::invalid_argument("unpaired term operator must be Hermitian");
        }
    }
    sp_.reserve(terms_.size());
    sp_adj_.reserve(terms_.size());
    op_norms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        sp_.push_back(t.op.mat.sparseView());
        sp_adj_.push_back(Matrix(t.op.mat.adjoint()).sparseView());
        op_norms_.push_back(spectral_norm(t.op.mat));
    }
}

OperatorMatrix TimeDependentHamiltonian::evaluate(double t) const {
    Matrix h = Matrix::Zero(layout_.total_dim(), layout_.total_dim());
    for (const auto& term : terms_) {
        const Complex phase =
            std::exp(Complex(0.0, term.phase_rate_rad_per_s * t + term.phase_offset));
        h += term.amplitude_rad_per_s * phase * term.op.mat;
        if (term.hermitian_pair)
            h += term.amplitude_rad_per_s * std::conj(phase) * term.op.mat.adjoint();
    }
    return {layout_, h};
}

void TimeDependentHamiltonian::apply_rhs(double t, const Vector& x, Vector& y) const {
    y.setZero();
    for (size_t k = 0; k < terms_.size(); ++k) {
        const auto& term = terms_[k];
        const Complex phase =
            std::exp(Complex(0.0, term.phase_rate_rad_per_s * t + term.phase_offset));
        const Complex minus_i = Complex(0.0, -1.0);
        y += (minus_i * term.amplitude_rad_per_s * phase) * (sp_[k] * x);
        if (term.hermitian_pair)
            y += (minus_i * term.amplitude_rad_per_s * std::conj(phase)) * (sp_adj_[k] * x);
    }
}

double TimeDependentHamiltonian::max_phase_rate() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.phase_rate_rad_per_s));
    return m;
}

double TimeDependentHamiltonian::amplitude_bound() const {
    double s = 0.0;
    for (size_t k = 0; k < terms_.size(); ++k) {
        double contrib = std::abs(terms_[k].amplitude_rad_per_s) * op_norms_[k];
        s += terms_[k].hermitian_pair ? 2.0 * contrib : contrib;
    }
    return s;
}

TimeDependentHamiltonian TimeDependentHamiltonian::time_reversed(double T) const {
    std::vector<RotatingTerm> rev;
    rev.reserve(terms_.size());
    for (const auto& t : terms_) {
        RotatingTerm r = t;
        r.amplitude_rad_per_s = -t.amplitude_rad_per_s;
        r.phase_rate_rad_per_s = -t.phase_rate_rad_per_s;
        r.phase_offset = t.phase_rate_rad_per_s * T + t.phase_offset;
        rev.push_back(std::move(r));
    }
    return TimeDependentHamiltonian(layout_, std::move(rev));
}

// --- builders -------------------------------------------------------------

namespace {
void need_factors(const SpaceLayout& l, std::initializer_list<const char*> labels) {
    for (const char* s : labels)
        if (!l.has_factor(s))
            throw std::invalid_argument(std::string("layout is missing factor '") + s + "'");
}

void need_positive(double v, const char* what) {
    if (!(v > 0)) throw std::invalid_argument(std::string(what) + " must be positive");
}
}  // namespace

TimeDependentHamiltonian single_electron_jc(double omega, double delta,
                                            const SpaceLayout& layout, const std::string& spin,
                                            const std::string& mode) {
    need_factors(layout, {spin.c_str(), mode.c_str()});
    need_positive(omega, "omega");
    auto s = spin_ops();
    auto sp = embed(layout, spin, s.plus);
    auto a = embed(layout, mode, fock_lowering(layout.factor(layout.position(mode)).dim));
    return TimeDependentHamiltonian(layout, {{sp * a, omega, delta}});
}

TimeDependentHamiltonian two_electron_full(double omega, double delta, double omega_tilde,
                                           double Delta, const SpaceLayout& layout) {
    need_factors(layout, {"spin1", "a", "b"});
    need_positive(omega, "omega");
    need_positive(omega_tilde, "omega_tilde");
    auto s = spin_ops();
    auto sp = embed(layout, "spin1", s.plus);
    auto a = embed(layout, "a", fock_lowering(layout.factor(layout.position("a")).dim));
    auto b = embed(layout, "b", fock_lowering(layout.factor(layout.position("b")).dim));
    return TimeDependentHamiltonian(
        layout, {{sp * a, omega, delta}, {a * b.adjoint(), omega_tilde, Delta}});
}

TimeDependentHamiltonian effective_second_order(double omega, double omega_tilde, double delta,
                                                const SpaceLayout& layout) {
    need_factors(layout, {"spin1", "a", "b"});
    if (delta == 0) throw std::invalid_argument("delta must be nonzero");
    auto s = spin_ops();
    auto sp = embed(layout, "spin1", s.plus);
    auto sm = embed(layout, "spin1", s.minus);
    auto a = embed(layout, "a", fock_lowering(layout.factor(layout.position("a")).dim));
    auto b = embed(layout, "b", fock_lowering(layout.factor(layout.position("b")).dim));
    auto na = a.adjoint() * a;
    auto nb = b.adjoint() * b;
    auto proj_diff = sp * sm - sm * sp;  // |up><up| - |down><down| on spin1
    OperatorMatrix shift_a = na * proj_diff + sp * sm;
    OperatorMatrix shift_b = nb - na;
    std::vector<RotatingTerm> terms;
    terms.push_back({shift_a, omega * omega / delta, 0.0, 0.0, false});
    terms.push_back({shift_b, omega_tilde * omega_tilde / delta, 0.0, 0.0, false});
    terms.push_back({sp * b, omega * omega_tilde / delta, 0.0});
    return TimeDependentHamiltonian(layout, std::move(terms));
}

TimeDependentHamiltonian effective_dispersive_jc(double omega, double omega_tilde, double delta,
                                                 const SpaceLayout& layout) {
    need_factors(layout, {"spin1", "b"});
    if (delta == 0) throw std::invalid_argument("delta must be nonzero");
    auto s = spin_ops();
    auto sp = embed(layout, "spin1", s.plus);
    auto sm = embed(layout, "spin1", s.minus);
    auto b = embed(layout, "b", fock_lowering(layout.factor(layout.position("b")).dim));
    std::vector<RotatingTerm> terms;
    terms.push_back({sp * sm, omega * omega / delta, 0.0, 0.0, false});
    terms.push_back({b.adjoint() * b, omega_tilde * omega_tilde / delta, 0.0, 0.0, false});
    terms.push_back({sp * b, omega * omega_tilde / delta, 0.0});
    return TimeDependentHamiltonian(layout, std::move(terms));
}

TimeDependentHamiltonian distant_jc(double omega_prime, const SpaceLayout& layout,
                                    const std::string& spin, const std::string& mode) {
    need_factors(layout, {spin.c_str(), mode.c_str()});
    if (omega_prime == 0) throw std::invalid_argument("omega_prime must be nonzero");
    auto s = spin_ops();
    auto sp = embed(layout, spin, s.plus);
    auto b = embed(layout, mode, fock_lowering(layout.factor(layout.position(mode)).dim));
    return TimeDependentHamiltonian(layout, {{sp * b, omega_prime, 0.0}});
}

TimeDependentHamiltonian driven_pair_full(double omega, double delta, double omega_tilde,
                                          double G, double eta, const SpaceLayout& layout) {
    need_factors(layout, {"spin1", "a", "b", "spin2"});
    need_positive(omega, "omega");
    need_positive(omega_tilde, "omega_tilde");
    need_positive(G, "G");
    auto s = spin_ops();
    auto sp = embed(layout, "spin1", s.plus);
    auto tp = embed(layout, "spin2", s.plus);
    auto a = embed(layout, "a", fock_lowering(layout.factor(layout.position("a")).dim));
    auto b = embed(layout, "b", fock_lowering(layout.factor(layout.position("b")).dim));
    return TimeDependentHamiltonian(layout, {{sp * a, omega, delta},
                                             {a * b.adjoint(), omega_tilde, delta},
                                             {tp * b, G, eta}});
}

TimeDependentHamiltonian driven_pair_intermediate(double omega, double omega_tilde, double delta,
                                                  double G, double eta,
                                                  const SpaceLayout& layout) {
    need_factors(layout, {"spin1", "b", "spin2"});
    if (delta == 0) throw std::invalid_argument("delta must be nonzero");
    auto s = spin_ops();
    auto sp = embed(layout, "spin1", s.plus);
    auto tp = embed(layout, "spin2", s.plus);
    auto b = embed(layout, "b", fock_lowering(layout.factor(layout.position("b")).dim));
    const double gamma = (omega * omega - omega_tilde * omega_tilde) / delta;
    return TimeDependentHamiltonian(
        layout, {{sp * b, omega * omega_tilde / delta, gamma},
                 {tp * b, G, eta - omega_tilde * omega_tilde / delta}});
}

TimeDependentHamiltonian spin_spin_effective(double omega_dprime, const SpaceLayout& layout) {
    need_factors(layout, {"spin1", "spin2"});
    if (omega_dprime == 0) throw std::invalid_argument("omega_dprime must be nonzero");
    auto s = spin_ops();
    auto sp = embed(layout, "spin1", s.plus);
    auto tm = embed(layout, "spin2", s.minus);
    return TimeDependentHamiltonian(layout, {{sp * tm, omega_dprime, 0.0}});
}

}  // namespace helispin
