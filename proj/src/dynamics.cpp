#include "fourwell/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fourwell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXcd phase_apply(const Eigen::MatrixXcd& vecs, const Eigen::VectorXd& evals,
                             const Eigen::VectorXcd& coeffs, double t) {
    Eigen::VectorXcd rotated(coeffs.size());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        rotated(k) = coeffs(k) * std::exp(Complex(0.0, -kTwoPi * evals(k) * t));
    return vecs * rotated;
}

}  // namespace

EvolutionPlan make_plan(const SectorOperator& hamiltonian) {
    if (!hamiltonian.hermitian)
        throw std::invalid_argument("make_plan: operator is not flagged Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian.matrix);
    if (es.info() != Eigen::Success) throw std::runtime_error("make_plan: eigendecomposition failed");
    return {hamiltonian.basis, es.eigenvalues(),
            std::make_shared<Eigen::MatrixXcd>(es.eigenvectors())};
}

QuantumState evolve(const EvolutionPlan& plan, const QuantumState& psi0, double t) {
    if (!plan.basis.same_sector(psi0.basis)) throw std::invalid_argument("evolve: sector mismatch");
    const Eigen::VectorXcd coeffs = plan.eigenvectors->adjoint() * psi0.amplitudes;
    return {plan.basis, phase_apply(*plan.eigenvectors, plan.eigenvalues, coeffs, t)};
}

RotationFamily::RotationFamily(const ModelParams& p, const FockBasis& basis) : basis_(basis) {
    if (p.total_n != basis.total_n())
        throw std::invalid_argument("RotationFamily: params/basis particle number mismatch");
    const int dim = basis.size();
    const int n = basis.total_n();

    ModelParams p0 = p;
    p0.zeta = 0.0;
    Eigen::SparseMatrix<Complex> h0;
    {
        const SectorOperator dense_h0 = reduced_hamiltonian(p0, basis);
        h0 = dense_h0.matrix.sparseView(1.0, 1e-300);
    }

    Eigen::MatrixXcd vecs(dim, dim);
    Eigen::VectorXd jvals(dim);

    // Current-operator eigenbasis, one N4 block at a time.
    const Complex cj{0.0, 1.0 / std::sqrt(3.0)};
    std::vector<int> local(dim, -1);
    int filled = 0;
    for (int n4 = 0; n4 <= n; ++n4) {
        std::vector<int> members;
        for (int i = 0; i < dim; ++i)
            if (basis.state(i).n4 == n4) members.push_back(i);
        const int bs = static_cast<int>(members.size());
        for (int k = 0; k < bs; ++k) local[members[k]] = k;
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(bs, bs);
        for (int k = 0; k < bs; ++k) {
            const OccupationState& s = basis.state(members[k]);
            const int occ[3] = {s.n1, s.n2, s.n3};
            constexpr int hops[6][2] = {{1, 0}, {2, 1}, {0, 2}, {0, 1}, {1, 2}, {2, 0}};
            for (int h = 0; h < 6; ++h) {
                const int to = hops[h][0], from = hops[h][1];
                if (occ[from] == 0) continue;
                int t[3] = {occ[0], occ[1], occ[2]};
                --t[from];
                ++t[to];
                const int row = local[basis.index_of({t[0], t[1], t[2], n4})];
                block(row, k) += (h < 3 ? cj : -cj) *
                                 std::sqrt(double((occ[to] + 1) * occ[from]));
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("RotationFamily: current block decomposition failed");
        for (int k = 0; k < bs; ++k) {
            vecs.col(filled + k).setZero();
            for (int r = 0; r < bs; ++r) vecs(members[r], filled + k) = es.eigenvectors()(r, k);
            jvals(filled + k) = es.eigenvalues()(k);
        }
        filled += bs;
    }

    // Reduce H0 within each integer eigenspace of the current.
    Eigen::VectorXd h0_eigs(dim);
    Eigen::VectorXd current_eigs(dim);
    Eigen::MatrixXcd final_vecs(dim, dim);
    int out = 0;
    for (int jq = -n; jq <= n; ++jq) {
        std::vector<int> cols;
        for (int c = 0; c < dim; ++c) {
            const double r = std::round(jvals(c));
            if (std::abs(jvals(c) - r) > 1e-8)
                throw std::runtime_error("RotationFamily: non-integer current eigenvalue");
            if (static_cast<int>(r) == jq) cols.push_back(c);
        }
        if (cols.empty()) continue;
        const int g = static_cast<int>(cols.size());
        Eigen::MatrixXcd w(dim, g);
        for (int c = 0; c < g; ++c) w.col(c) = vecs.col(cols[c]);
        const Eigen::MatrixXcd hw = h0 * w;
        const Eigen::MatrixXcd m = w.adjoint() * hw;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("RotationFamily: projected decomposition failed");
        final_vecs.middleCols(out, g) = w * es.eigenvectors();
        h0_eigs.segment(out, g) = es.eigenvalues();
        current_eigs.segment(out, g).setConstant(double(jq));
        out += g;
    }

    vectors_ = std::make_shared<Eigen::MatrixXcd>(std::move(final_vecs));
    h0_eigs_ = std::move(h0_eigs);
    current_eigs_ = std::move(current_eigs);
}

EvolutionPlan RotationFamily::plan(double zeta) const {
    return {basis_, h0_eigs_ - zeta * current_eigs_, vectors_};
}

TrajectoryTable trajectory(const ModelParams& p, const std::vector<double>& times,
                           const QuantumState& psi0) {
    if (times.empty()) throw std::invalid_argument("trajectory: empty time grid");
    const FockBasis& basis = psi0.basis;
    RotationFamily family(p, basis);
    const EvolutionPlan plan = family.plan(p.zeta);

    const int dim = basis.size();
    Eigen::VectorXd pop[4], imb, imb2;
    for (int k = 0; k < 4; ++k) pop[k].resize(dim);
    imb.resize(dim);
    imb2.resize(dim);
    for (int i = 0; i < dim; ++i) {
        const OccupationState& s = basis.state(i);
        pop[0](i) = s.n1;
        pop[1](i) = s.n2;
        pop[2](i) = s.n3;
        pop[3](i) = s.n4;
        imb(i) = double(s.n2 - s.n3);
        imb2(i) = imb(i) * imb(i);
    }
    const Eigen::MatrixXcd q2m = charge(2, basis).matrix;
    const Eigen::MatrixXcd q3m = charge(3, basis).matrix;
    const Eigen::MatrixXcd hm = reduced_hamiltonian(p, basis).matrix;

    const Eigen::VectorXcd coeffs = plan.eigenvectors->adjoint() * psi0.amplitudes;

    TrajectoryTable table;
    table.times = times;
    for (double t : times) {
        Eigen::VectorXcd rotated(dim);
        for (int k = 0; k < dim; ++k)
            rotated(k) = coeffs(k) * std::exp(Complex(0.0, -kTwoPi * plan.eigenvalues(k) * t));
        const Eigen::VectorXcd psi = (*plan.eigenvectors) * rotated;
        const Eigen::VectorXd w = psi.cwiseAbs2();

        std::array<double, 4> pops;
        for (int k = 0; k < 4; ++k) pops[k] = w.dot(pop[k]);
        table.populations.push_back(pops);
        const double mean = w.dot(imb);
        table.imbalance_mean.push_back(mean);
        table.imbalance_variance.push_back(std::max(w.dot(imb2) - mean * mean, 0.0));

        ReducedDensity rho{basis.total_n(), Eigen::VectorXd::Zero(basis.total_n() + 1)};
        for (int i = 0; i < dim; ++i) rho.weights(basis.state(i).n3) += w(i);
        table.entropy.push_back(von_neumann_entropy(rho));

        const double q2v = psi.dot(q2m * psi).real();
        const double q3v = psi.dot(q3m * psi).real();
        table.q2.push_back(q2v);
        table.q3.push_back(q3v);
        table.current.push_back(q3v - q2v);
        table.energy.push_back(psi.dot(hm * psi).real());
    }
    return table;
}

ReducedDensity reduced_density_mode3(const QuantumState& psi) {
    const int n = psi.basis.total_n();
    ReducedDensity rho{n, Eigen::VectorXd::Zero(n + 1)};
    for (int i = 0; i < psi.basis.size(); ++i)
        rho.weights(psi.basis.state(i).n3) += std::norm(psi.amplitudes(i));
    return rho;
}

double von_neumann_entropy(const ReducedDensity& rho) {
    double s = 0.0;
    for (int i = 0; i < rho.weights.size(); ++i) {
        const double g = rho.weights(i);
        if (g > 0.0) s -= g * std::log(g);
    }
    return std::max(s, 0.0);  // round-off floor for pure states
}

std::vector<double> delta_alpha_numeric_sweep(const ModelParams& p,
                                              const std::vector<double>& zetas,
                                              double fd_step) {
    const ResonantConstants rc = resonant_constants(p);
    const double fd = fd_step > 0.0 ? fd_step : rc.xi / 100.0;
    const FockBasis basis = enumerate_basis(p.total_n);
    const RotationFamily family(p, basis);
    const QuantumState psi0 = fock_state(basis, {p.total_n, 0, 0, 0});

    Eigen::VectorXd imb(basis.size());
    for (int i = 0; i < basis.size(); ++i)
        imb(i) = double(basis.state(i).n2 - basis.state(i).n3);

    auto moments = [&](double z) {
        const QuantumState psi = evolve(family.plan(z), psi0, rc.tau);
        const Eigen::VectorXd w = psi.amplitudes.cwiseAbs2();
        const double mean = w.dot(imb);
        return std::pair<double, double>{mean,
                                         std::max(w.dot(imb.cwiseAbs2()) - mean * mean, 0.0)};
    };
    std::vector<double> out;
    out.reserve(zetas.size());
    for (double z : zetas) {
        const double mean_plus = moments(z + fd).first;
        const double mean_minus = moments(z - fd).first;
        const double variance = moments(z).second;
        const double deriv = p.j * (mean_plus - mean_minus) / (2.0 * fd);
        if (std::abs(deriv) < 1e-14)
            throw std::domain_error(
                "delta_alpha_numeric: readout derivative vanishes (non-identifiable)");
        out.push_back(std::sqrt(variance) / std::abs(deriv));
    }
    return out;
}

double delta_alpha_numeric(const ModelParams& p, double at_zeta, double fd_step) {
    return delta_alpha_numeric_sweep(p, {at_zeta}, fd_step).front();
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_loglog_slope: need at least two points");
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingFit scaling_exponent(const ModelParams& p_template, const std::vector<int>& n_list) {
    if (n_list.size() < 3)
        throw std::invalid_argument("scaling_exponent: need at least three particle numbers");
    ScalingFit fit;
    std::vector<double> ns;
    for (int n : n_list) {
        ModelParams p = p_template;
        p.total_n = n;
        const ResonantConstants rc = resonant_constants(p);
        if (rc.resonance_ratio < 10.0) fit.resonance_ok = false;
        fit.n_values.push_back(n);
        fit.delta_alpha.push_back(delta_alpha_numeric(p, 0.0));
        ns.push_back(double(n));
    }
    fit.slope = fit_loglog_slope(ns, fit.delta_alpha);
    return fit;
}

}  // namespace fourwell
