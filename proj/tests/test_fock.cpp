#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fourwell/fock.hpp"
#include "support.hpp"

#include <random>

using namespace fourwell;

namespace {

long long simplex_dimension(int n) {  // C(n+3,3)
    return static_cast<long long>(n + 1) * (n + 2) * (n + 3) / 6;
}

}  // namespace

TEST_CASE("basis enumeration sizes") {
    CHECK(enumerate_basis(0).size() == 1);
    CHECK(enumerate_basis(0).state(0) == OccupationState{0, 0, 0, 0});
    CHECK(enumerate_basis(2).size() == 10);
    CHECK(enumerate_basis(16).size() == 969);
    for (int n = 0; n <= 24; ++n) CHECK(enumerate_basis(n).size() == simplex_dimension(n));
    CHECK_THROWS_AS(enumerate_basis(-1), std::invalid_argument);
}

TEST_CASE("basis ordering and index map") {
    const FockBasis basis = enumerate_basis(5);
    CHECK(basis.state(0) == OccupationState{5, 0, 0, 0});
    CHECK(basis.state(basis.size() - 1) == OccupationState{0, 0, 0, 5});
    for (int i = 0; i + 1 < basis.size(); ++i) {
        const auto& a = basis.state(i);
        const auto& b = basis.state(i + 1);
        const std::array<int, 4> ta{a.n1, a.n2, a.n3, a.n4}, tb{b.n1, b.n2, b.n3, b.n4};
        CHECK(ta > tb);  // lexicographic descending
    }
    for (int i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis.state(i)) == i);
    CHECK_THROWS_AS(basis.index_of({1, 0, 0, 0}), std::out_of_range);
}

TEST_CASE("one-body operator: number counting") {
    const FockBasis basis = enumerate_basis(3);
    const SectorOperator op = build_one_body(basis, Eigen::Matrix4cd::Identity());
    CHECK(op.hermitian);
    CHECK((op.matrix - 3.0 * Eigen::MatrixXcd::Identity(basis.size(), basis.size()))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (int i = 0; i < 4; ++i) {
        Eigen::Matrix4cd e = Eigen::Matrix4cd::Zero();
        e(i, i) = 1.0;
        total += build_one_body(basis, e).matrix;
    }
    CHECK((total - 3.0 * Eigen::MatrixXcd::Identity(basis.size(), basis.size()))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("one-body operator: ladder factors") {
    Eigen::Matrix4cd hop = Eigen::Matrix4cd::Zero();
    hop(3, 0) = 1.0;  // a4^dag a1

    const FockBasis b1 = enumerate_basis(1);
    const SectorOperator op1 = build_one_body(b1, hop);
    CHECK(!op1.hermitian);
    CHECK(op1.matrix(b1.index_of({0, 0, 0, 1}), b1.index_of({1, 0, 0, 0})) == Complex{1.0, 0.0});
    CHECK(op1.matrix.cwiseAbs().sum() == 1.0);  // single element

    const FockBasis b2 = enumerate_basis(2);
    const SectorOperator op2 = build_one_body(b2, hop);
    CHECK(op2.matrix(b2.index_of({1, 0, 0, 1}), b2.index_of({2, 0, 0, 0})).real() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("one-body operator: exact adjoint relation") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::Matrix4cd coeffs;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) coeffs(i, j) = Complex(dist(rng), dist(rng));
    const FockBasis basis = enumerate_basis(4);
    const Eigen::MatrixXcd lhs = build_one_body(basis, coeffs).matrix.adjoint();
    const Eigen::MatrixXcd rhs = build_one_body(basis, coeffs.adjoint()).matrix;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("one-body operator matches product-space oracle") {
    for (int n = 1; n <= 4; ++n) {
        const FockBasis basis = enumerate_basis(n);
        Eigen::Matrix4cd hop = Eigen::Matrix4cd::Zero();
        hop(3, 0) = 1.0;
        const Eigen::MatrixXcd ours = build_one_body(basis, hop).matrix;
        const Eigen::MatrixXcd oracle =
            testing::project_to_sector(testing::product_space_bilinear(n, 3, 0), basis);
        CHECK((ours - oracle).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("diagonal operators") {
    const FockBasis b1 = enumerate_basis(1);
    const SectorOperator ident = build_diagonal(b1, [](const OccupationState&) { return 1.0; });
    CHECK((ident.matrix - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const SectorOperator imb = build_diagonal(b1, [](const OccupationState& s) {
        const double d = double(s.n1 + s.n2 + s.n3 - s.n4);
        return d * d;
    });
    for (int i = 0; i < 4; ++i) CHECK(imb.matrix(i, i) == Complex{1.0, 0.0});

    const FockBasis b5 = enumerate_basis(5);
    const SectorOperator prod =
        build_diagonal(b5, [](const OccupationState& s) { return double(s.n1 * s.n2); });
    CHECK(prod.matrix(b5.index_of({2, 3, 0, 0}), b5.index_of({2, 3, 0, 0})) == Complex{6.0, 0.0});
}

TEST_CASE("expectation and variance") {
    const int n = 6;
    const FockBasis basis = enumerate_basis(n);
    const QuantumState psi = fock_state(basis, {n, 0, 0, 0});

    Eigen::Matrix4cd e11 = Eigen::Matrix4cd::Zero();
    e11(0, 0) = 1.0;
    const auto [mean, var] = expectation_and_variance(build_one_body(basis, e11), psi);
    CHECK(mean == doctest::Approx(double(n)).epsilon(1e-14));
    CHECK(var == doctest::Approx(0.0).epsilon(1e-12));

    const auto [one, zero] =
        expectation_and_variance(build_one_body(basis, Eigen::Matrix4cd::Identity()), psi);
    CHECK(one == doctest::Approx(double(n)).epsilon(1e-14));
    CHECK(zero == doctest::Approx(0.0).epsilon(1e-12));

    Eigen::Matrix4cd nonherm = Eigen::Matrix4cd::Zero();
    nonherm(3, 0) = 1.0;
    CHECK_THROWS_AS(expectation_and_variance(build_one_body(basis, nonherm), psi),
                    std::invalid_argument);
}

TEST_CASE("fock_state and fidelity") {
    const FockBasis basis = enumerate_basis(3);
    const QuantumState a = fock_state(basis, {3, 0, 0, 0});
    const QuantumState b = fock_state(basis, {0, 3, 0, 0});
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fidelity(a, b) == doctest::Approx(0.0).epsilon(1e-15));
}
