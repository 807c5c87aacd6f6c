#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

// Composite Hilbert spaces built from ordered spin-1/2 and truncated Fock
// factors. Operator matrices are dense and carry their layout; factor order is
// fixed at construction (factor 0 is the most significant index digit), so two
// operators combine only when their layouts match exactly.

namespace helispin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class FactorKind { spin, fock };

struct Factor {
    std::string label;
    FactorKind kind;
    int dim;
    bool operator==(const Factor&) const = default;
};

class SpaceLayout {
  public:
    SpaceLayout() = default;
    explicit SpaceLayout(std::vector<Factor> factors);  // validates dims/labels

    static SpaceLayout spin_factor(const std::string& label);
    static SpaceLayout fock_factor(const std::string& label, int dim);

    const std::vector<Factor>& factors() const { return factors_; }
    int factor_count() const { return static_cast<int>(factors_.size()); }
    const Factor& factor(int i) const { return factors_.at(i); }
    int position(const std::string& label) const;  // throws on unknown label
    bool has_factor(const std::string& label) const;
    long total_dim() const { return total_dim_; }

    long flatten(const std::vector<int>& digits) const;
    std::vector<int> unflatten(long index) const;

    bool operator==(const SpaceLayout&) const = default;

  private:
    std::vector<Factor> factors_;
    long total_dim_ = 1;
};

// convenience builders for the layouts used throughout
SpaceLayout layout_single_electron(int fock_dim);              // spin1, a
SpaceLayout layout_electron_pair(int fock_a, int fock_b);      // spin1, a, b
SpaceLayout layout_electron_pair(int fock_dim);
SpaceLayout layout_driven_pair(int fock_a, int fock_b);        // spin1, a, b, spin2
SpaceLayout layout_driven_pair(int fock_dim);
SpaceLayout layout_spin_mode(const std::string& spin_label, const std::string& mode_label,
                             int fock_dim);
SpaceLayout layout_two_spins();                                // spin1, spin2

struct OperatorMatrix {
    SpaceLayout layout;
    Matrix mat;

    bool is_hermitian(double tol = 1e-12) const;
    OperatorMatrix adjoint() const;
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex scale, const OperatorMatrix& a);

struct StateVector {
    SpaceLayout layout;
    Vector amp;

    double norm() const { return amp.norm(); }
};

// spin-1/2 operators in the source's labeling: basis index 0 = |up>, 1 = |down>;
// "z" flips (|down><up| + |up><down|) and "x" is the population difference
// (quantization axis along the applied field, transverse coupling along z).
struct SpinOperators {
    Eigen::Matrix2cd minus;  // |down><up|
    Eigen::Matrix2cd plus;   // |up><down|
    Eigen::Matrix2cd z;      // minus + plus
    Eigen::Matrix2cd x;      // |up><up| - |down><down|
};
SpinOperators spin_ops();

// truncated lowering operator, a|n> = sqrt(n)|n-1>, top level annihilated into
// nothing above dim-1
Matrix fock_lowering(int dim);

Matrix kron(const Matrix& a, const Matrix& b);

// lift a single-factor operator to the full space (identity elsewhere)
OperatorMatrix embed(const SpaceLayout& layout, const std::string& label, const Matrix& small);

// lift an operator living on a subset of factors (given in sub-layout order,
// factors need not be adjacent in the full layout)
OperatorMatrix embed_multi(const SpaceLayout& full, const std::vector<std::string>& labels,
                           const Matrix& sub);

// basis state from one token per factor: "up"/"down" for spins, "0","1",... for
// Fock factors
StateVector basis_state(const SpaceLayout& layout, const std::vector<std::string>& tokens);
long basis_index(const SpaceLayout& layout, const std::vector<std::string>& tokens);

double occupancy(const StateVector& psi, long basis_idx);
double occupancy(const StateVector& psi, const std::vector<std::string>& tokens);

}  // namespace helispin
