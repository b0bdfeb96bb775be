#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fourwell/analytic.hpp"
#include "fourwell/dynamics.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace fourwell;

namespace {

const ModelParams kPaper{6.01, 8.16, 0.0, 16};

ModelParams with_zeta(const ModelParams& p, double zeta) {
    ModelParams q = p;
    q.zeta = zeta;
    return q;
}

QuantumState random_state(const FockBasis& basis, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    QuantumState psi{basis, Eigen::VectorXcd(basis.size())};
    for (int i = 0; i < basis.size(); ++i) psi.amplitudes(i) = Complex(g(rng), g(rng));
    psi.normalize();
    return psi;
}

}  // namespace

TEST_CASE("plan invariants: reconstruction and unitarity") {
    testing::ParamSampler sampler;
    const ModelParams p = sampler.draw(4);
    const FockBasis basis = enumerate_basis(4);
    const SectorOperator h = reduced_hamiltonian(p, basis);
    const EvolutionPlan plan = make_plan(h);
    const Eigen::MatrixXcd& v = *plan.eigenvectors;
    const Eigen::MatrixXcd rebuilt = v * plan.eigenvalues.asDiagonal() * v.adjoint();
    CHECK((rebuilt - h.matrix).cwiseAbs().maxCoeff() <=
          1e-9 * h.matrix.cwiseAbs().maxCoeff());
    CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(basis.size(), basis.size()))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);

    SectorOperator bad = h;
    bad.hermitian = false;
    CHECK_THROWS_AS(make_plan(bad), std::invalid_argument);
}

TEST_CASE("evolve basics") {
    const FockBasis basis = enumerate_basis(5);
    const ModelParams p{1.1, 0.6, 0.12, 5};
    const EvolutionPlan plan = make_plan(reduced_hamiltonian(p, basis));
    const QuantumState psi0 = random_state(basis, 2);

    const QuantumState same = evolve(plan, psi0, 0.0);
    CHECK((same.amplitudes - psi0.amplitudes).norm() <= 1e-13);

    // eigenstate picks up only a global phase
    QuantumState eig{basis, plan.eigenvectors->col(3)};
    const QuantumState rotated = evolve(plan, eig, 0.37);
    CHECK(fidelity(eig, rotated) == doctest::Approx(1.0).epsilon(1e-12));

    const QuantumState late = evolve(plan, psi0, 12.3);
    CHECK(late.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evolve agrees with a Taylor-series propagator") {
    const FockBasis basis = enumerate_basis(3);
    const ModelParams p{0.9, 1.4, 0.33, 3};
    const SectorOperator h = reduced_hamiltonian(p, basis);
    const QuantumState psi0 = random_state(basis, 9);
    const QuantumState ours = evolve(make_plan(h), psi0, 0.21);
    const Eigen::VectorXcd oracle = testing::taylor_evolve(h.matrix, psi0.amplitudes, 0.21);
    CHECK((ours.amplitudes - oracle).norm() <= 1e-10);
}

TEST_CASE("rotation family reproduces direct diagonalization") {
    const int n = 6;
    const FockBasis basis = enumerate_basis(n);
    const ModelParams base{1.3, 0.9, 0.0, n};
    const RotationFamily family(base, basis);
    const QuantumState psi0 = fock_state(basis, {n, 0, 0, 0});
    for (double zeta : {0.0, 0.05, 0.21}) {
        const ModelParams p = with_zeta(base, zeta);
        const SectorOperator h = reduced_hamiltonian(p, basis);
        const EvolutionPlan direct = make_plan(h);
        const EvolutionPlan fast = family.plan(zeta);
        const QuantumState a = evolve(direct, psi0, 1.7);
        const QuantumState b = evolve(fast, psi0, 1.7);
        CHECK((a.amplitudes - b.amplitudes).norm() <= 1e-9);

        const Eigen::MatrixXcd& v = *fast.eigenvectors;
        const Eigen::MatrixXcd rebuilt = v * fast.eigenvalues.asDiagonal() * v.adjoint();
        CHECK((rebuilt - h.matrix).cwiseAbs().maxCoeff() <=
              1e-9 * h.matrix.cwiseAbs().maxCoeff());
    }
    // current eigenvalues are integers
    for (int i = 0; i < basis.size(); ++i) {
        const double j = family.current_eigenvalues()(i);
        CHECK(std::abs(j - std::round(j)) <= 1e-9);
    }
}

TEST_CASE("exact populations at the readout time, reference parameters") {
    const FockBasis basis = enumerate_basis(16);
    const ResonantConstants rc = resonant_constants(kPaper);
    const EvolutionPlan plan = make_plan(reduced_hamiltonian(kPaper, basis));
    const QuantumState psi = evolve(plan, fock_state(basis, {16, 0, 0, 0}), rc.tau);
    const Eigen::VectorXd w = psi.amplitudes.cwiseAbs2();
    double pops[4] = {0, 0, 0, 0};
    for (int i = 0; i < basis.size(); ++i)
        for (int k = 0; k < 4; ++k) pops[k] += w(i) * basis.state(i)[k];
    CHECK(std::abs(pops[0] / 16 - 1.0 / 9.0) <= 0.05);
    CHECK(std::abs(pops[1] / 16 - 4.0 / 9.0) <= 0.05);
    CHECK(std::abs(pops[2] / 16 - 4.0 / 9.0) <= 0.05);
    CHECK(pops[3] / 16 <= 0.05);
}

TEST_CASE("trajectory observables") {
    const int n = 8;
    const ModelParams p{6.01, 8.16, 0.0, n};
    const ResonantConstants rc = resonant_constants(p);
    const FockBasis basis = enumerate_basis(n);
    const QuantumState psi0 = fock_state(basis, {n, 0, 0, 0});
    std::vector<double> times;
    for (int i = 0; i <= 20; ++i) times.push_back(2.0 * rc.tau * i / 20.0);

    CHECK_THROWS_AS(trajectory(p, {}, psi0), std::invalid_argument);

    const TrajectoryTable table = trajectory(p, times, psi0);
    for (size_t i = 0; i < times.size(); ++i) {
        const auto& pops = table.populations[i];
        CHECK(std::abs(pops[0] + pops[1] + pops[2] + pops[3] - n) <= 1e-8);
        CHECK(std::abs(pops[1] - pops[2]) <= 1e-8);  // zeta = 0 reflection symmetry
        CHECK(std::abs(table.energy[i] - table.energy[0]) <= 1e-8);
        CHECK(std::abs(table.q2[i] - table.q2[0]) <= 1e-8);
        CHECK(std::abs(table.q3[i] - table.q3[0]) <= 1e-8);
        CHECK(std::abs(table.current[i] - table.current[0]) <= 1e-8);
    }

    // rotating at zeta_max: the readout state is |0,N,0,0>
    const TrajectoryTable rotated =
        trajectory(with_zeta(p, rc.zeta_max), {rc.tau}, psi0);
    CHECK(rotated.populations[0][1] / n >= 0.95);
}

TEST_CASE("reduced density of mode 3") {
    const FockBasis basis = enumerate_basis(16);
    const ReducedDensity pure = reduced_density_mode3(fock_state(basis, {16, 0, 0, 0}));
    CHECK(pure.weights(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pure.weights.tail(16).cwiseAbs().maxCoeff() == 0.0);

    // coherent state at tau carries the binomial marginal exactly
    const ResonantConstants rc = resonant_constants(kPaper);
    const QuantumState coh = coherent_state(kPaper, rc.tau, basis);
    const ReducedDensity rho = reduced_density_mode3(coh);
    CHECK(rho.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    const Eigen::VectorXd expected = mode3_weights_binomial(kPaper, rc.tau);
    CHECK((rho.weights - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("reduced density matches a brute-force partial trace") {
    for (int n : {4, 6}) {
        const FockBasis basis = enumerate_basis(n);
        const QuantumState psi = random_state(basis, 100 + unsigned(n));
        const ReducedDensity ours = reduced_density_mode3(psi);
        const Eigen::MatrixXcd rho = testing::brute_force_rho3(psi);
        for (int s = 0; s <= n; ++s)
            for (int sp = 0; sp <= n; ++sp) {
                if (s == sp)
                    CHECK(std::abs(rho(s, s).real() - ours.weights(s)) <= 1e-12);
                else
                    CHECK(std::abs(rho(s, sp)) <= 1e-30);  // structurally zero
            }
    }
}

TEST_CASE("entropy") {
    ReducedDensity pure{2, Eigen::VectorXd::Zero(3)};
    pure.weights(1) = 1.0;
    CHECK(von_neumann_entropy(pure) == 0.0);

    ReducedDensity two{2, Eigen::VectorXd::Zero(3)};
    two.weights(0) = 0.5;
    two.weights(2) = 0.5;
    CHECK(von_neumann_entropy(two) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    const FockBasis basis = enumerate_basis(16);
    const ResonantConstants rc = resonant_constants(kPaper);
    const EvolutionPlan plan = make_plan(reduced_hamiltonian(kPaper, basis));
    const QuantumState psi = evolve(plan, fock_state(basis, {16, 0, 0, 0}), rc.tau);
    const double s = von_neumann_entropy(reduced_density_mode3(psi));
    CHECK(std::abs(s - 2.1051895577470994) <= 0.05);  // Binomial(16, 4/9) reference
    CHECK(s == doctest::Approx(2.107780).epsilon(1e-4));
}

TEST_CASE("numeric sensitivity at the reference point") {
    const double da = delta_alpha_numeric(kPaper, 0.0);
    CHECK(da == doctest::Approx(3.312319e-3).epsilon(1e-4));
    CHECK(std::abs(da - delta_alpha_analytic(kPaper, 0.0)) <=
          0.10 * delta_alpha_analytic(kPaper, 0.0));

    const ResonantConstants rc = resonant_constants(kPaper);
    for (double f : {0.3, 0.6}) {
        const double num = delta_alpha_numeric(kPaper, f * rc.zeta_max);
        const double ana = delta_alpha_analytic(kPaper, f * rc.zeta_max);
        CHECK(std::abs(num - ana) <= 0.10 * ana);
    }

    // derivative convergence: halving the step moves the result by well under 1%
    const double coarse = delta_alpha_numeric(kPaper, 0.0, rc.xi / 100.0);
    const double fine = delta_alpha_numeric(kPaper, 0.0, rc.xi / 200.0);
    CHECK(std::abs(coarse - fine) <= 0.01 * coarse);

    // an fd step below double resolution makes the two means identical
    CHECK_THROWS_AS(delta_alpha_numeric(kPaper, 0.0, 1e-300), std::domain_error);
}

TEST_CASE("log-log slope fitting") {
    std::vector<double> xs{8, 12, 16, 20, 24}, ys;
    for (double x : xs) ys.push_back(7.3 * std::pow(x, -1.5));
    CHECK(fit_loglog_slope(xs, ys) == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK_THROWS_AS(fit_loglog_slope({1.0}, {1.0}), std::invalid_argument);

    // analytic sensitivity values over the same grid
    ys.clear();
    for (double x : xs)
        ys.push_back(delta_alpha_analytic({6.01, 8.16, 0.0, int(x)}, 0.0));
    const double slope = fit_loglog_slope(xs, ys);
    CHECK(slope == doctest::Approx(-1.5826).epsilon(3e-3));
    CHECK(std::abs(slope + 1.5) <= 0.1);
}

TEST_CASE("numeric scaling exponent") {
    ModelParams tmpl = kPaper;
    CHECK_THROWS_AS(scaling_exponent(tmpl, {8, 16}), std::invalid_argument);

    const ScalingFit fit = scaling_exponent(tmpl, {8, 12, 16});
    CHECK(fit.resonance_ok);
    CHECK(fit.slope >= -1.70);
    CHECK(fit.slope <= -1.50);
    CHECK(fit.delta_alpha.front() == doctest::Approx(1.010170e-2).epsilon(1e-4));

    const ScalingFit low = scaling_exponent(tmpl, {4, 6, 8});
    CHECK(!low.resonance_ok);
}
