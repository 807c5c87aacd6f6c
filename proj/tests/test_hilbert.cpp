#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "helispin/hilbert.hpp"

using namespace helispin;

TEST_CASE("layout builders fix factor order and dimensions") {
    auto single = layout_single_electron(4);
    REQUIRE(single.factor_count() == 2);
    CHECK(single.factor(0).label == "spin1");
    CHECK(single.factor(1).label == "a");
    CHECK(single.total_dim() == 8);

    auto pair = layout_electron_pair(3, 5);
    REQUIRE(pair.factor_count() == 3);
    CHECK(pair.factor(1).dim == 3);
    CHECK(pair.factor(2).dim == 5);
    CHECK(pair.total_dim() == 30);
    CHECK(layout_electron_pair(6) == layout_electron_pair(6, 6));

    auto driven = layout_driven_pair(3, 5);
    REQUIRE(driven.factor_count() == 4);
    CHECK(driven.factor(0).label == "spin1");
    CHECK(driven.factor(3).label == "spin2");
    CHECK(driven.total_dim() == 60);

    auto spins = layout_two_spins();
    CHECK(spins.total_dim() == 4);
    CHECK(spins.position("spin2") == 1);
    CHECK_THROWS_AS(spins.position("a"), std::invalid_argument);
    CHECK(!spins.has_factor("a"));
}

TEST_CASE("layout construction rejects bad factor lists") {
    CHECK_THROWS_AS(SpaceLayout({{"s", FactorKind::spin, 2}, {"s", FactorKind::spin, 2}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SpaceLayout({{"s", FactorKind::spin, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(SpaceLayout({{"m", FactorKind::fock, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(SpaceLayout({{"", FactorKind::spin, 2}}), std::invalid_argument);
}

TEST_CASE("flatten and unflatten round-trip every index") {
    auto lay = layout_driven_pair(3, 4);
    for (long i = 0; i < lay.total_dim(); ++i) {
        auto digits = lay.unflatten(i);
        REQUIRE(digits.size() == 4);
        CHECK(lay.flatten(digits) == i);
    }
    // factor 0 is the most significant digit
    CHECK(lay.flatten({1, 0, 0, 0}) == lay.total_dim() / 2);
    CHECK_THROWS_AS(lay.flatten({0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(lay.flatten({0, 3, 0, 0}), std::out_of_range);
    CHECK_THROWS_AS(lay.unflatten(-1), std::out_of_range);
}

TEST_CASE("spin operators follow the source labeling") {
    auto s = spin_ops();
    // basis index 0 = |up>, 1 = |down>; minus lowers up into down
    CHECK(s.minus(1, 0) == Complex(1, 0));
    CHECK(s.minus(0, 0) == Complex(0, 0));
    CHECK(s.plus(0, 1) == Complex(1, 0));
    CHECK(s.x(0, 0) == Complex(1, 0));
    CHECK(s.x(1, 1) == Complex(-1, 0));
    CHECK((s.z - (s.minus + s.plus)).norm() == 0.0);
    // involutions that anticommute
    CHECK((s.z * s.z - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
    CHECK((s.x * s.x - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
    CHECK((s.x * s.z + s.z * s.x).norm() < 1e-15);
}

TEST_CASE("truncated lowering operator") {
    Matrix a = fock_lowering(4);
    CHECK(std::abs(a(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(a(2, 3) - std::sqrt(3.0)) < 1e-15);
    Matrix n = a.adjoint() * a;
    for (int k = 0; k < 4; ++k) CHECK(std::abs(n(k, k) - double(k)) < 1e-14);
    // commutator picks up the truncation defect only at the top level
    Matrix c = a * a.adjoint() - n;
    CHECK(std::abs(c(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(c(3, 3) + 3.0) < 1e-14);
    CHECK_THROWS_AS(fock_lowering(1), std::invalid_argument);
}

TEST_CASE("embed lifts one factor and leaves the rest alone") {
    auto lay = layout_single_electron(3);
    auto s = spin_ops();
    Matrix z2(2, 2);
    z2 = s.z;
    auto lifted = embed(lay, "spin1", z2);
    CHECK(lifted.layout == lay);
    CHECK((lifted.mat - kron(z2, Matrix::Identity(3, 3))).norm() < 1e-15);

    auto a_l = embed(lay, "a", fock_lowering(3));
    CHECK((a_l.mat - kron(Matrix::Identity(2, 2), fock_lowering(3))).norm() < 1e-15);

    CHECK_THROWS_AS(embed(lay, "b", z2), std::invalid_argument);
    CHECK_THROWS_AS(embed(lay, "a", z2), std::invalid_argument);  // 2x2 into dim 3
}

TEST_CASE("embed_multi handles non-adjacent factors and label order") {
    auto lay = layout_electron_pair(3, 4);  // spin1, a, b
    auto s = spin_ops();
    Matrix z2 = s.z;
    Matrix low_b = fock_lowering(4);

    Matrix product = (embed(lay, "spin1", z2) * embed(lay, "b", low_b)).mat;

    auto m1 = embed_multi(lay, {"spin1", "b"}, kron(z2, low_b));
    CHECK((m1.mat - product).norm() < 1e-14);

    // sub-operator digits follow the label list, not the layout
    auto m2 = embed_multi(lay, {"b", "spin1"}, kron(low_b, z2));
    CHECK((m2.mat - product).norm() < 1e-14);

    CHECK_THROWS_AS(embed_multi(lay, {}, z2), std::invalid_argument);
    CHECK_THROWS_AS(embed_multi(lay, {"spin1", "b"}, kron(z2, Matrix::Identity(3, 3))),
                    std::invalid_argument);
}

TEST_CASE("embedding preserves hermiticity and spectral norm") {
    std::mt19937 rng(20240811);
    std::normal_distribution<double> g;
    auto lay = layout_driven_pair(3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix h(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) h(r, c) = Complex(g(rng), g(rng));
        h = (h + Matrix(h.adjoint())).eval();
        auto lifted = embed(lay, "a", h);
        CHECK(lifted.is_hermitian(1e-12));
        Eigen::SelfAdjointEigenSolver<Matrix> small(h), big(lifted.mat);
        double ns = small.eigenvalues().cwiseAbs().maxCoeff();
        double nb = big.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(std::abs(ns - nb) < 1e-10 * std::max(1.0, ns));
    }
}

TEST_CASE("operator algebra refuses mixed layouts") {
    auto a = embed(layout_single_electron(3), "a", fock_lowering(3));
    auto b = embed(layout_single_electron(4), "a", fock_lowering(4));
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    auto sum = a + a.adjoint();
    CHECK(sum.is_hermitian());
    CHECK(!a.is_hermitian());
    auto scaled = Complex(0, 2) * a;
    CHECK((scaled.mat - 2.0 * Complex(0, 1) * a.mat).norm() == 0.0);
}

TEST_CASE("basis states from tokens") {
    auto lay = layout_driven_pair(3, 4);
    auto psi = basis_state(lay, {"up", "0", "2", "down"});
    CHECK(psi.norm() == 1.0);
    long idx = basis_index(lay, {"up", "0", "2", "down"});
    CHECK(lay.flatten({0, 0, 2, 1}) == idx);
    CHECK(std::abs(psi.amp(idx) - Complex(1, 0)) == 0.0);
    CHECK(occupancy(psi, idx) == 1.0);
    CHECK(occupancy(psi, {"down", "0", "0", "up"}) == 0.0);

    CHECK_THROWS_AS(basis_state(lay, {"up", "0", "2"}), std::invalid_argument);
    CHECK_THROWS_AS(basis_state(lay, {"sideways", "0", "2", "down"}), std::invalid_argument);
    CHECK_THROWS_AS(basis_state(lay, {"up", "0", "7", "down"}), std::out_of_range);
    CHECK_THROWS_AS(basis_state(lay, {"up", "0", "x", "down"}), std::invalid_argument);
}

TEST_CASE("kron composes dimensions in order") {
    Matrix a = Matrix::Random(2, 3);
    Matrix b = Matrix::Random(4, 2);
    Matrix k = kron(a, b);
    REQUIRE(k.rows() == 8);
    REQUIRE(k.cols() == 6);
    CHECK(std::abs(k(5, 3) - a(1, 1) * b(1, 1)) < 1e-15);
    CHECK(std::abs(k(2, 4) - a(0, 2) * b(2, 0)) < 1e-15);
}
