#pragma once

#include "fourwell/fock.hpp"

#include <Eigen/Dense>

namespace fourwell {

/// Couplings of the reduced four-well model. All couplings are frequencies
/// E/h in Hz; time-evolution phases are accumulated as 2*pi*(E/h)*t with t in
/// seconds.
struct ModelParams {
    double u = 0.0;     // interaction U/h
    double j = 0.0;     // apex hopping J/h
    double zeta = 0.0;  // rotation coupling zeta/h
    int total_n = 0;    // particle number N
};

/// Couplings of the extended four-well Bose-Hubbard model (same Hz units).
/// The hopping matrix is a general symmetric 4x4 with zero diagonal so both
/// apex-only and all-pair variants are constructible.
struct ExtendedParams {
    double u0 = 0.0;   // on-site
    double u12 = 0.0;  // outer-outer inter-site
    double u14 = 0.0;  // outer-apex inter-site
    Eigen::Matrix4d hop = Eigen::Matrix4d::Zero();
    Eigen::Vector4d offsets = Eigen::Vector4d::Zero();
};

/// Cube root of unity nu = exp(i 2 pi / 3), stored exactly.
inline constexpr Complex kNu{-0.5, 0.86602540378443864676};

/// nu^k with the exponent reduced mod 3.
Complex nu_power(long long k);

/// Unitary map from the outer-site modes (a1,a2,a3) to the collective modes
/// (b1,b2,b3), b_k = (a1 + nu^(k-1) a2 + nu^(1-k) a3)/sqrt(3).
struct ModeTransform {
    Complex nu = kNu;
    Eigen::Matrix3cd matrix;  // row k-1 holds the coefficients of b_k
};

ModeTransform mode_transform();

/// H = U (N1+N2+N3-N4)^2 - J [a4^dag (a1+a2+a3) + h.c.] - zeta * current.
SectorOperator reduced_hamiltonian(const ModelParams& p, const FockBasis& basis);

/// H0 = (U0/2) sum N_i(N_i-1) + sum_{i<j} U_ij N_i N_j + sum nu_i N_i
///      - sum_{i<j} hop_ij (a_i^dag a_j + h.c.),
/// with U_12 = U_23 = U_13 = u12 and U_14 = U_24 = U_34 = u14.
SectorOperator extended_hamiltonian(const ExtendedParams& p, const FockBasis& basis);

/// Conserved charge Q_k = b_k^dag b_k, k in {2,3}.
SectorOperator charge(int k, const FockBasis& basis);

/// Circulation operator
/// J = (i/sqrt(3)) [(a2^dag a1 + a3^dag a2 + a1^dag a3) - h.c.] = Q3 - Q2.
SectorOperator current(const FockBasis& basis);

/// b_j^dag b_k for j,k in {2,3}.
SectorOperator collective_bilinear(int j, int k, const FockBasis& basis);

/// Frobenius norm of AB - BA.
double commutator_norm(const SectorOperator& a, const SectorOperator& b);

}  // namespace fourwell
