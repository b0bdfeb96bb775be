#pragma once

#include "fourwell/analytic.hpp"
#include "fourwell/fock.hpp"
#include "fourwell/model.hpp"

#include <memory>
#include <vector>

namespace fourwell {

/// Eigendecomposition of a Hermitian sector operator, ready for exact unitary
/// evolution. Eigenvalues are frequencies in Hz; evolve() accumulates phases
/// exp(-i 2 pi lambda t) with t in seconds.
struct EvolutionPlan {
    FockBasis basis;
    Eigen::VectorXd eigenvalues;
    std::shared_ptr<const Eigen::MatrixXcd> eigenvectors;
};

EvolutionPlan make_plan(const SectorOperator& hamiltonian);

QuantumState evolve(const EvolutionPlan& plan, const QuantumState& psi0, double t);

/// Joint eigenbasis of H0 = H(zeta=0) and the current operator, which commute.
/// H(zeta) = H0 - zeta*J shares the eigenvectors for every zeta, so a whole
/// rotation sweep costs one decomposition. Built blockwise: the current
/// conserves N4, and H0 is reduced within each integer eigenspace of the
/// current.
class RotationFamily {
  public:
    RotationFamily(const ModelParams& p, const FockBasis& basis);

    EvolutionPlan plan(double zeta) const;
    const FockBasis& basis() const { return basis_; }
    const Eigen::VectorXd& h0_eigenvalues() const { return h0_eigs_; }
    const Eigen::VectorXd& current_eigenvalues() const { return current_eigs_; }

  private:
    FockBasis basis_;
    std::shared_ptr<const Eigen::MatrixXcd> vectors_;
    Eigen::VectorXd h0_eigs_;
    Eigen::VectorXd current_eigs_;  // integers to round-off
};

/// Observable trajectory of the reduced model from exact evolution.
struct TrajectoryTable {
    std::vector<double> times;  // seconds
    std::vector<std::array<double, 4>> populations;
    std::vector<double> imbalance_mean;      // <N2 - N3>
    std::vector<double> imbalance_variance;  // Var(N2 - N3)
    std::vector<double> entropy;             // mode-3 Von Neumann, nats
    std::vector<double> q2;
    std::vector<double> q3;
    std::vector<double> current;
    std::vector<double> energy;
};

TrajectoryTable trajectory(const ModelParams& p, const std::vector<double>& times,
                           const QuantumState& psi0);

/// Diagonal weights gamma_s of the mode-3 reduced density matrix. The fixed
/// total particle number forces the reduced matrix diagonal in the occupation
/// basis, so the weights are the complete description.
struct ReducedDensity {
    int total_n = 0;
    Eigen::VectorXd weights;  // gamma_s, s = 0..N
};

ReducedDensity reduced_density_mode3(const QuantumState& psi);

/// S = -sum gamma_s ln gamma_s, with 0 ln 0 := 0.
double von_neumann_entropy(const ReducedDensity& rho);

/// Delta alpha = std(N2-N3) / |d<N2-N3>/d alpha| at t = tau, alpha = zeta/J.
/// The derivative is a central finite difference in zeta on exact-evolution
/// means; fd_step <= 0 selects the default xi/100. Throws if the derivative
/// magnitude falls below 1e-14 (non-identifiable point).
double delta_alpha_numeric(const ModelParams& p, double at_zeta, double fd_step = 0.0);

/// Same estimator over a zeta grid, sharing one RotationFamily decomposition.
std::vector<double> delta_alpha_numeric_sweep(const ModelParams& p,
                                              const std::vector<double>& zetas,
                                              double fd_step = 0.0);

/// Least-squares slope of ln y against ln x.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingFit {
    double slope = 0.0;
    bool resonance_ok = true;  // false if some N violates 2U(N-1)/J >= 10
    std::vector<int> n_values;
    std::vector<double> delta_alpha;
};

/// Slope of log delta_alpha_numeric vs log N at zeta -> 0, U and J taken from
/// the template. Requires at least 3 particle numbers.
ScalingFit scaling_exponent(const ModelParams& p_template, const std::vector<int>& n_list);

}  // namespace fourwell
