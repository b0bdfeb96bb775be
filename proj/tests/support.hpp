#pragma once

#include "fourwell/fock.hpp"
#include "fourwell/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace fourwell::testing {

// ---- brute-force product-space oracle -------------------------------------
// Four modes with per-mode cutoff N; operators assembled from Kronecker
// products of single-mode ladder matrices, then projected onto the fixed-N
// sector in the library's basis order. Deliberately independent of
// build_one_body.

inline Eigen::MatrixXcd single_mode_creation(int cutoff) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    for (int n = 0; n < cutoff; ++n) c(n + 1, n) = std::sqrt(double(n + 1));
    return c;
}

inline Eigen::MatrixXcd kron4(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                              const Eigen::MatrixXcd& c, const Eigen::MatrixXcd& d) {
    const auto kron = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
        Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j)
                out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        return out;
    };
    return kron(kron(kron(a, b), c), d);
}

// a_i^dag a_j in the full product space (0-based site indices).
inline Eigen::MatrixXcd product_space_bilinear(int cutoff, int i, int j) {
    const int d = cutoff + 1;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd cr = single_mode_creation(cutoff);
    Eigen::MatrixXcd ops[4] = {id, id, id, id};
    if (i == j) {
        ops[i] = cr * cr.adjoint();
    } else {
        ops[i] = cr;
        ops[j] = cr.adjoint();
    }
    return kron4(ops[0], ops[1], ops[2], ops[3]);
}

inline int product_index(const OccupationState& s, int cutoff) {
    const int d = cutoff + 1;
    return ((s.n1 * d + s.n2) * d + s.n3) * d + s.n4;
}

// Restriction of a product-space operator to the fixed-N sector.
inline Eigen::MatrixXcd project_to_sector(const Eigen::MatrixXcd& full, const FockBasis& basis) {
    const int cutoff = basis.total_n();
    Eigen::MatrixXcd out(basis.size(), basis.size());
    for (int r = 0; r < basis.size(); ++r)
        for (int c = 0; c < basis.size(); ++c)
            out(r, c) = full(product_index(basis.state(r), cutoff),
                             product_index(basis.state(c), cutoff));
    return out;
}

// Embed a sector state into the product space.
inline Eigen::VectorXcd embed_in_product_space(const QuantumState& psi) {
    const int cutoff = psi.basis.total_n();
    const int d = cutoff + 1;
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d * d * d);
    for (int i = 0; i < psi.basis.size(); ++i)
        full(product_index(psi.basis.state(i), cutoff)) = psi.amplitudes(i);
    return full;
}

// Partial trace over modes 1, 2, 4 of |psi><psi| in the product space.
inline Eigen::MatrixXcd brute_force_rho3(const QuantumState& psi) {
    const int cutoff = psi.basis.total_n();
    const int d = cutoff + 1;
    const Eigen::VectorXcd full = embed_in_product_space(psi);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (int s = 0; s < d; ++s)
        for (int sp = 0; sp < d; ++sp)
            for (int n1 = 0; n1 < d; ++n1)
                for (int n2 = 0; n2 < d; ++n2)
                    for (int n4 = 0; n4 < d; ++n4) {
                        const int a = ((n1 * d + n2) * d + s) * d + n4;
                        const int b = ((n1 * d + n2) * d + sp) * d + n4;
                        rho(s, sp) += full(a) * std::conj(full(b));
                    }
    return rho;
}

// ---- independent evolution oracle ------------------------------------------
// exp(-i 2 pi H t) psi by scaling-and-squaring Taylor series on the dense
// matrix; avoids any eigendecomposition.
inline Eigen::VectorXcd taylor_evolve(const Eigen::MatrixXcd& h_hz, const Eigen::VectorXcd& psi,
                                      double t) {
    const Complex phase(0.0, -2.0 * M_PI * t);
    Eigen::MatrixXcd a = phase * h_hz;
    int squarings = 0;
    while (a.cwiseAbs().maxCoeff() * a.rows() > 0.25 && squarings < 60) {
        a /= 2.0;
        ++squarings;
    }
    Eigen::MatrixXcd exp_a = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd term = exp_a;
    for (int k = 1; k < 40; ++k) {
        term = (term * a) / double(k);
        exp_a += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int k = 0; k < squarings; ++k) exp_a = exp_a * exp_a;
    return exp_a * psi;
}

// Random reduced-model parameter draws, fixed sequence.
struct ParamSampler {
    std::mt19937 rng{20240917};
    std::uniform_real_distribution<double> coupling{0.2, 3.0};
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::uniform_int_distribution<int> small_n{2, 10};

    ModelParams draw(int n = 0) {
        ModelParams p;
        p.total_n = n > 0 ? n : small_n(rng);
        p.u = coupling(rng);
        p.j = coupling(rng);
        p.zeta = (2.0 * unit(rng) - 1.0) * p.j;
        return p;
    }
};

}  // namespace fourwell::testing
