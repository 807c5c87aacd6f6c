#include "helispin/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace helispin {

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::set<std::string> seen;
    for (const auto& f : factors_) {
        if (f.label.empty()) throw std::invalid_argument("factor label must be nonempty");
        if (!seen.insert(f.label).second)
            throw std::invalid_argument("duplicate factor label: " + f.label);
        if (f.kind == FactorKind::spin && f.dim != 2)
            throw std::invalid_argument("spin factor must have dim 2: " + f.label);
        if (f.dim < 2) throw std::invalid_argument("factor dim must be at least 2: " + f.label);
        total_dim_ *= f.dim;
    }
}

SpaceLayout SpaceLayout::spin_factor(const std::string& label) {
    return SpaceLayout({{label, FactorKind::spin, 2}});
}

SpaceLayout SpaceLayout::fock_factor(const std::string& label, int dim) {
    return SpaceLayout({{label, FactorKind::fock, dim}});
}

int SpaceLayout::position(const std::string& label) const {
    for (int i = 0; i < factor_count(); ++i)
        if (factors_[i].label == label) return i;
    throw std::invalid_argument("no factor labeled '" + label + "' in layout");
}

bool SpaceLayout::has_factor(const std::string& label) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.label == label; });
}

long SpaceLayout::flatten(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) != factor_count())
        throw std::invalid_argument("digit count does not match factor count");
    long idx = 0;
    for (int i = 0; i < factor_count(); ++i) {
        if (digits[i] < 0 || digits[i] >= factors_[i].dim)
            throw std::out_of_range("digit out of range for factor " + factors_[i].label);
        idx = idx * factors_[i].dim + digits[i];
    }
    return idx;
}

std::vector<int> SpaceLayout::unflatten(long index) const {
    if (index < 0 || index >= total_dim_) throw std::out_of_range("index outside layout");
    std::vector<int> digits(factor_count());
    for (int i = factor_count() - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(index % factors_[i].dim);
        index /= factors_[i].dim;
    }
    return digits;
}

SpaceLayout layout_single_electron(int fock_dim) {
    return SpaceLayout({{"spin1", FactorKind::spin, 2}, {"a", FactorKind::fock, fock_dim}});
}

SpaceLayout layout_electron_pair(int fock_a, int fock_b) {
    return SpaceLayout({{"spin1", FactorKind::spin, 2},
                        {"a", FactorKind::fock, fock_a},
                        {"b", FactorKind::fock, fock_b}});
}

SpaceLayout layout_electron_pair(int fock_dim) {
    return layout_electron_pair(fock_dim, fock_dim);
}

SpaceLayout layout_driven_pair(int fock_a, int fock_b) {
    return SpaceLayout({{"spin1", FactorKind::spin, 2},
                        {"a", FactorKind::fock, fock_a},
                        {"b", FactorKind::fock, fock_b},
                        {"spin2", FactorKind::spin, 2}});
}

SpaceLayout layout_driven_pair(int fock_dim) {
    return layout_driven_pair(fock_dim, fock_dim);
}

SpaceLayout layout_spin_mode(const std::string& spin_label, const std::string& mode_label,
                             int fock_dim) {
    return SpaceLayout(
        {{spin_label, FactorKind::spin, 2}, {mode_label, FactorKind::fock, fock_dim}});
}

SpaceLayout layout_two_spins() {
    return SpaceLayout({{"spin1", FactorKind::spin, 2}, {"spin2", FactorKind::spin, 2}});
}

bool OperatorMatrix::is_hermitian(double tol) const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

OperatorMatrix OperatorMatrix::adjoint() const { return {layout, mat.adjoint()}; }

namespace {
void check_same_layout(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!(a.layout == b.layout))
        throw std::invalid_argument("operator layouts differ; build both on one layout first");
}
}  // namespace

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    check_same_layout(a, b);
    return {a.layout, a.mat * b.mat};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    check_same_layout(a, b);
    return {a.layout, a.mat + b.mat};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    check_same_layout(a, b);
    return {a.layout, a.mat - b.mat};
}

OperatorMatrix operator*(Complex scale, const OperatorMatrix& a) {
    return {a.layout, scale * a.mat};
}

SpinOperators spin_ops() {
    SpinOperators s;
    s.minus = Eigen::Matrix2cd::Zero();
    s.minus(1, 0) = 1.0;  // |down><up|
    s.plus = Eigen::Matrix2cd::Zero();
    s.plus(0, 1) = 1.0;  // |up><down|
    s.z = s.minus + s.plus;
    s.x = Eigen::Matrix2cd::Zero();
    s.x(0, 0) = 1.0;
    s.x(1, 1) = -1.0;
    return s;
}

Matrix fock_lowering(int dim) {
    if (dim < 2) throw std::invalid_argument("Fock dim must be at least 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

OperatorMatrix embed(const SpaceLayout& layout, const std::string& label, const Matrix& small) {
    return embed_multi(layout, {label}, small);
}

OperatorMatrix embed_multi(const SpaceLayout& full, const std::vector<std::string>& labels,
                           const Matrix& sub) {
    if (labels.empty()) throw std::invalid_argument("embed needs at least one factor label");
    std::vector<int> pos;
    long sub_dim = 1;
    for (const auto& l : labels) {
        pos.push_back(full.position(l));
        sub_dim *= full.factor(pos.back()).dim;
    }
    if (sub.rows() != sub_dim || sub.cols() != sub_dim)
        throw std::invalid_argument("operator size does not match the named factors");

    const long D = full.total_dim();
    Matrix out = Matrix::Zero(D, D);
    // digits on the named factors form the sub-space index, the rest must match
    auto split = [&](long idx, long& sub_idx, long& rest_idx) {
        auto digits = full.unflatten(idx);
        sub_idx = 0;
        for (int p : pos) sub_idx = sub_idx * full.factor(p).dim + digits[p];
        rest_idx = 0;
        for (int i = 0; i < full.factor_count(); ++i) {
            if (std::find(pos.begin(), pos.end(), i) != pos.end()) continue;
            rest_idx = rest_idx * full.factor(i).dim + digits[i];
        }
    };
    std::vector<long> sub_of(D), rest_of(D);
    for (long i = 0; i < D; ++i) split(i, sub_of[i], rest_of[i]);
    for (long r = 0; r < D; ++r)
        for (long c = 0; c < D; ++c)
            if (rest_of[r] == rest_of[c]) out(r, c) = sub(sub_of[r], sub_of[c]);
    return {full, out};
}

namespace {
int token_to_digit(const Factor& f, const std::string& tok) {
    if (f.kind == FactorKind::spin) {
        if (tok == "up") return 0;
        if (tok == "down") return 1;
        throw std::invalid_argument("spin token must be 'up' or 'down', got '" + tok + "'");
    }
    size_t used = 0;
    int n;
    try {
        n = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("Fock token must be an integer, got '" + tok + "'");
    }
    if (used != tok.size())
        throw std::invalid_argument("Fock token must be an integer, got '" + tok + "'");
    if (n < 0 || n >= f.dim)
        throw std::out_of_range("Fock level " + tok + " outside factor " + f.label);
    return n;
}
}  // namespace

long basis_index(const SpaceLayout& layout, const std::vector<std::string>& tokens) {
    if (static_cast<int>(tokens.size()) != layout.factor_count())
        throw std::invalid_argument("need one token per factor");
    std::vector<int> digits(tokens.size());
    for (size_t i = 0; i < tokens.size(); ++i)
        digits[i] = token_to_digit(layout.factor(static_cast<int>(i)), tokens[i]);
    return layout.flatten(digits);
}

StateVector basis_state(const SpaceLayout& layout, const std::vector<std::string>& tokens) {
    Vector v = Vector::Zero(layout.total_dim());
    v(basis_index(layout, tokens)) = 1.0;
    return {layout, v};
}

double occupancy(const StateVector& psi, long idx) {
    if (idx < 0 || idx >= psi.amp.size()) throw std::out_of_range("basis index outside state");
    return std::norm(psi.amp(idx));
}

double occupancy(const StateVector& psi, const std::vector<std::string>& tokens) {
    return occupancy(psi, basis_index(psi.layout, tokens));
}

}  // namespace helispin
