#include "helispin/gates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace helispin {

namespace {
constexpr double kPi = 3.14159265358979323846;

const char* kPhaseNote =
    "targets are literal matrices; the |tr(T^dag A)|^2/d^2 metric removes one "
    "global phase and nothing else";

double golden_min(const std::function<double(double)>& f, double a, double b) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

std::vector<long> subspace_indices(const SpaceLayout& layout,
                                   const std::vector<std::vector<std::string>>& tokens) {
    std::vector<long> idx;
    idx.reserve(tokens.size());
    for (const auto& t : tokens) idx.push_back(basis_index(layout, t));
    return idx;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string s;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) s += ",";
        s += tokens[i];
    }
    return s;
}
}  // namespace

Matrix rotation(double alpha, double beta) {
    Matrix r(2, 2);
    const Complex mi(0.0, -1.0);
    r(0, 0) = std::cos(alpha);
    r(1, 1) = std::cos(alpha);
    r(0, 1) = mi * std::exp(Complex(0.0, beta)) * std::sin(alpha);
    r(1, 0) = mi * std::exp(Complex(0.0, -beta)) * std::sin(alpha);
    return r;
}

PulseSchedule::PulseSchedule(SpaceLayout lay, std::vector<ScheduleSegment> segs)
    : layout(std::move(lay)), segments(std::move(segs)) {
    for (const auto& seg : segments) {
        if (const auto* h = std::get_if<HamiltonianSegment>(&seg)) {
            if (!(h->duration_s > 0))
                throw std::invalid_argument("evolved segment '" + h->label +
                                            "' needs a positive duration");
            if (!(h->ham.layout() == layout))
                throw std::invalid_argument("segment '" + h->label +
                                            "' lives on a different layout");
        } else {
            const auto& u = std::get<UnitarySegment>(seg);
            if (!(u.op.layout == layout))
                throw std::invalid_argument("segment '" + u.label +
                                            "' lives on a different layout");
        }
    }
}

double PulseSchedule::total_duration() const {
    double t = 0.0;
    for (const auto& seg : segments)
        if (const auto* h = std::get_if<HamiltonianSegment>(&seg)) t += h->duration_s;
    return t;
}

OperatorMatrix simulate_schedule(const PulseSchedule& schedule, const StepControl& sc) {
    const long D = schedule.layout.total_dim();
    Matrix u = Matrix::Identity(D, D);
    double t = 0.0;  // global clock, rotating segments keep their phase across gaps
    for (const auto& seg : schedule.segments) {
        if (const auto* h = std::get_if<HamiltonianSegment>(&seg)) {
            u = propagator_matrix(h->ham, t, t + h->duration_s, sc).mat * u;
            t += h->duration_s;
        } else {
            u = std::get<UnitarySegment>(seg).op.mat * u;
        }
    }
    return {schedule.layout, u};
}

double fidelity(const Matrix& target, const Matrix& achieved) {
    if (target.rows() != achieved.rows() || target.cols() != achieved.cols())
        throw std::invalid_argument("fidelity needs matrices of one shape");
    const double d = static_cast<double>(target.rows());
    const Complex tr = (target.adjoint() * achieved).trace();
    return std::norm(tr) / (d * d);
}

Matrix restrict_to_subspace(const Matrix& u, const std::vector<long>& indices) {
    const long n = static_cast<long>(indices.size());
    Matrix r(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) r(i, j) = u(indices[i], indices[j]);
    return r;
}

double subspace_leakage(const Matrix& u, const std::vector<long>& indices) {
    double worst = 0.0;
    for (long j : indices) {
        double inside = 0.0;
        for (long i : indices) inside += std::norm(u(i, j));
        worst = std::max(worst, 1.0 - inside);
    }
    return worst;
}

GateReport score_gate(const OperatorMatrix& u,
                      const std::vector<std::vector<std::string>>& subspace_tokens,
                      const Matrix& target, std::string phase_convention) {
    const auto idx = subspace_indices(u.layout, subspace_tokens);
    if (target.rows() != static_cast<long>(idx.size()))
        throw std::invalid_argument("target size does not match the subspace");
    GateReport rep;
    rep.achieved = restrict_to_subspace(u.mat, idx);
    rep.target = target;
    for (const auto& t : subspace_tokens) rep.subspace.push_back(join_tokens(t));
    rep.fidelity = fidelity(target, rep.achieved);
    rep.leakage = subspace_leakage(u.mat, idx);
    rep.unitarity = unitarity_defect(u.mat);
    rep.phase_convention = std::move(phase_convention);
    return rep;
}

PhaseGateCalibration phase_gate_duration(double omega) {
    if (!(omega > 0)) throw std::invalid_argument("drive rate must be positive");
    auto residual = [](double x) {
        const double c = (std::cos(std::sqrt(2.0) * x) + 1.0) / 2.0;
        const double s = std::sin(x);
        return s * s + c * c;
    };
    // grid scan for the local minima, golden refinement of each basin
    const double lo = 30.0, hi = 45.0, step = 1e-3;
    const int n = static_cast<int>((hi - lo) / step) + 1;
    std::vector<double> xs(n), fs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = lo + i * step;
        fs[i] = residual(xs[i]);
    }
    std::vector<std::pair<double, double>> candidates;  // (x, residual)
    for (int i = 1; i + 1 < n; ++i) {
        if (fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1]) {
            const double x = golden_min(residual, xs[i - 1], xs[i + 1]);
            candidates.emplace_back(x, residual(x));
        }
    }
    if (candidates.empty()) throw std::logic_error("residual scan found no minimum");
    double best = candidates.front().second;
    for (const auto& c : candidates) best = std::min(best, c.second);
    // ties inside 1e-6 resolve to the shorter pulse
    double x_star = hi + 1.0;
    for (const auto& c : candidates)
        if (c.second <= best + 1e-6) x_star = std::min(x_star, c.first);
    return {x_star / omega, x_star, residual(x_star)};
}

GateReport simulate_phase_gate(double omega, double time_s, int fock_dim,
                               const StepControl& sc) {
    if (!(omega > 0)) throw std::invalid_argument("drive rate must be positive");
    if (!(time_s > 0)) throw std::invalid_argument("duration must be positive");
    if (fock_dim < 3)
        throw std::invalid_argument(
            "phase pulse needs fock_dim >= 3, the |up,1>-|down,2> doublet must exist");
    const SpaceLayout layout = layout_spin_mode("spin1", "a", fock_dim);
    const auto ham = single_electron_jc(omega, 0.0, layout);
    const OperatorMatrix u = propagator_matrix(ham, 0.0, time_s, sc);
    Matrix target = Matrix::Identity(4, 4);
    target(3, 3) = -1.0;
    return score_gate(u,
                      {{"down", "0"}, {"up", "0"}, {"down", "1"}, {"up", "1"}},
                      target, kPhaseNote);
}

GateSynthesis single_electron_cnot(double omega, int fock_dim, const StepControl& sc) {
    if (!(omega > 0)) throw std::invalid_argument("drive rate must be positive");
    if (fock_dim < 3)
        throw std::invalid_argument("local gate needs fock_dim >= 3 for the phase pulse");
    const SpaceLayout layout = layout_spin_mode("spin1", "a", fock_dim);
    const auto calib = phase_gate_duration(omega);
    std::vector<ScheduleSegment> segs;
    segs.push_back(UnitarySegment{embed(layout, "spin1", rotation(kPi / 4, -kPi / 2)),
                                  "spin rotation beta=-pi/2"});
    segs.push_back(HamiltonianSegment{single_electron_jc(omega, 0.0, layout),
                                      calib.time_s, "resonant phase pulse"});
    segs.push_back(UnitarySegment{embed(layout, "spin1", rotation(kPi / 4, kPi / 2)),
                                  "spin rotation beta=+pi/2"});
    PulseSchedule schedule(layout, std::move(segs));
    const OperatorMatrix u = simulate_schedule(schedule, sc);
    Matrix target = Matrix::Zero(4, 4);
    target(0, 0) = 1.0;
    target(1, 1) = 1.0;
    target(2, 3) = 1.0;  // control is the vibrational quantum, target the spin
    target(3, 2) = 1.0;
    GateReport rep = score_gate(
        u, {{"down", "0"}, {"up", "0"}, {"down", "1"}, {"up", "1"}}, target, kPhaseNote);
    return {std::move(schedule), std::move(rep)};
}

GateSynthesis v_gate(double omega_prime, int fock_dim, const StepControl& sc) {
    if (!(omega_prime > 0)) throw std::invalid_argument("exchange rate must be positive");
    if (fock_dim < 2) throw std::invalid_argument("mode truncation too small");
    const SpaceLayout layout = layout_spin_mode("spin1", "b", fock_dim);
    const auto ham = distant_jc(omega_prime, layout);
    const double t = kPi / (2.0 * omega_prime);
    PulseSchedule schedule(layout,
                           {HamiltonianSegment{ham, t, "exchange half period"}});
    const OperatorMatrix u = simulate_schedule(schedule, sc);
    Matrix target = Matrix::Zero(3, 3);
    const Complex mi(0.0, -1.0);
    target(0, 0) = 1.0;  // |down,0> dark
    target(1, 2) = mi;
    target(2, 1) = mi;
    GateReport rep =
        score_gate(u, {{"down", "0"}, {"up", "0"}, {"down", "1"}}, target, kPhaseNote);
    return {std::move(schedule), std::move(rep)};
}

TwoSpinCnotResult two_spin_cnot(const TwoSpinCnotInputs& in) {
    if (!(in.omega_prime > 0) || !(in.omega_e2 > 0))
        throw std::invalid_argument("both drive rates must be positive");
    if (in.fock_a < 2 || in.fock_b < 3)
        throw std::invalid_argument("mode truncations too small for the sequence");
    if (in.full_segments && (!(in.omega > 0) || !(in.omega_tilde > 0) || in.delta == 0))
        throw std::invalid_argument("microscopic segments need omega, omega_tilde, delta");

    const SpaceLayout full = layout_driven_pair(in.fock_a, in.fock_b);
    const double t_v = kPi / (2.0 * in.omega_prime);
    const auto calib = phase_gate_duration(in.omega_e2);

    std::vector<ScheduleSegment> segs;
    auto v_ham = [&](const SpaceLayout& lay) {
        return in.full_segments
                   ? two_electron_full(in.omega, in.delta, in.omega_tilde, in.Delta, lay)
                   : distant_jc(in.omega_prime, lay);
    };
    segs.push_back(HamiltonianSegment{v_ham(full), t_v, "exchange half period"});
    segs.push_back(UnitarySegment{embed(full, "spin2", rotation(kPi / 4, kPi / 2)),
                                  "spin 2 rotation beta=+pi/2"});
    segs.push_back(
        HamiltonianSegment{single_electron_jc(in.omega_e2, 0.0, full, "spin2", "b"),
                           calib.time_s, "local phase pulse on electron 2"});
    segs.push_back(UnitarySegment{embed(full, "spin2", rotation(kPi / 4, -kPi / 2)),
                                  "spin 2 rotation beta=-pi/2"});
    segs.push_back(HamiltonianSegment{v_ham(full), t_v, "exchange half period"});
    PulseSchedule schedule(full, std::move(segs));

    // the segments act on two or three factors each; propagate there and embed
    Matrix u_v1, u_v2;
    if (in.full_segments) {
        const SpaceLayout sub = layout_electron_pair(in.fock_a, in.fock_b);
        const auto ham = two_electron_full(in.omega, in.delta, in.omega_tilde, in.Delta, sub);
        u_v1 = embed_multi(full, {"spin1", "a", "b"},
                           propagator_matrix(ham, 0.0, t_v, in.step).mat)
                   .mat;
        const double t2 = t_v + calib.time_s;  // global clock
        u_v2 = embed_multi(full, {"spin1", "a", "b"},
                           propagator_matrix(ham, t2, t2 + t_v, in.step).mat)
                   .mat;
    } else {
        const SpaceLayout sub = layout_spin_mode("spin1", "b", in.fock_b);
        const auto ham = distant_jc(in.omega_prime, sub);
        u_v1 = embed_multi(full, {"spin1", "b"},
                           propagator_matrix(ham, 0.0, t_v, in.step).mat)
                   .mat;
        u_v2 = u_v1;  // static generator, start time irrelevant
    }
    const SpaceLayout sub2 = layout_spin_mode("spin2", "b", in.fock_b);
    const Matrix u_p =
        embed_multi(full, {"spin2", "b"},
                    propagator_matrix(
                        single_electron_jc(in.omega_e2, 0.0, sub2, "spin2", "b"), 0.0,
                        calib.time_s, in.step)
                        .mat)
            .mat;
    const Matrix r_first = embed(full, "spin2", rotation(kPi / 4, kPi / 2)).mat;
    const Matrix r_last = embed(full, "spin2", rotation(kPi / 4, -kPi / 2)).mat;
    const Matrix u = u_v2 * r_last * u_p * r_first * u_v1;

    Matrix target = Matrix::Zero(4, 4);
    target(0, 0) = 1.0;
    target(1, 1) = 1.0;
    target(2, 3) = 1.0;  // spin 1 up flips spin 2
    target(3, 2) = 1.0;
    const std::vector<std::vector<std::string>> tokens = {
        {"down", "0", "0", "down"},
        {"down", "0", "0", "up"},
        {"up", "0", "0", "down"},
        {"up", "0", "0", "up"}};
    GateReport rep = score_gate({full, u}, tokens, target, kPhaseNote);

    const auto idx = subspace_indices(full, tokens);
    const int pos_a = full.position("a"), pos_b = full.position("b");
    const long D = full.total_dim();
    double ga = 1.0, gb = 1.0;
    for (long j : idx) {
        double pa = 0.0, pb = 0.0;
        for (long i = 0; i < D; ++i) {
            const double w = std::norm(u(i, j));
            const auto digits = full.unflatten(i);
            if (digits[pos_a] == 0) pa += w;
            if (digits[pos_b] == 0) pb += w;
        }
        ga = std::min(ga, pa);
        gb = std::min(gb, pb);
    }
    return {std::move(schedule), std::move(rep), ga, gb};
}

}  // namespace helispin
