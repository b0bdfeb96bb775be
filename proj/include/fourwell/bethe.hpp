#pragma once

#include "fourwell/fock.hpp"
#include "fourwell/model.hpp"

#include <cstdint>

namespace fourwell {

/// C_{p,q}^n = n!/(p! q! (n-p-q)!), exact; 0 outside 0 <= p, 0 <= q, p+q <= n.
std::uint64_t multinomial(int n, int p, int q);

/// A_{r,s}^{a,b,c} = sum_{p,q,i,j} C_{p,q}^a C_{i,j}^b C_{r-p-i,s-q-j}^c
///                   nu^(p+2i-q-2j-r+s),  nu = exp(i 2 pi/3).
/// The integer coefficients of 1, nu, nu^2 are accumulated exactly before any
/// floating-point conversion. Empty sums give 0.
Complex overlap_a(int r, int s, int a, int b, int c);

/// B_{r,s}^{a,b,c} = sqrt(C_{a,b}^{a+b+c} / (C_{r,s}^{a+b+c} 3^{a+b+c})) A_{r,s}^{a,b,c}.
/// For each fixed (a,b,c) the values over (r,s) form a unit vector.
Complex overlap_b(int r, int s, int a, int b, int c);

/// Closed-form level data of the resonant expansion for the sector with n4
/// apex particles and (l, m) collective-mode quanta.
struct BetheLevel {
    int n4 = 0;
    int l = 0;
    int m = 0;
    double energy = 0.0;    // Hz
    double norm_sq = 0.0;   // N^2 >= 1
    double a_factor = 0.0;  // A_{n4,l,m}
};

/// A_{n4,l,m} = (sqrt(3)/4) sqrt(n4 (N+1-l-m-n4)) / (N+1-2 n4),
/// N^2 = 1 + (J/U)^2 (A_{n4,l,m}^2 + A_{n4+1,l,m}^2), and the displayed energy
/// including the zeta (l-m) term. Throws std::domain_error when a denominator
/// N+1-2n4 or N-1-2n4 vanishes (the perturbative branch is invalid there).
BetheLevel bethe_level(int n4, int l, int m, const ModelParams& p);

struct BetheState {
    QuantumState state;
    double pre_normalization = 0.0;  // norm of the truncated expansion before rescaling
};

/// Time-dependent closed-form state from a Fock initial condition, assembled
/// from the overlap tensors and level energies over the fixed-n4 branch. The
/// returned state is renormalized; the pre-normalization deficit is reported.
BetheState bethe_state(const ModelParams& p, double t, const OccupationState& initial,
                       const FockBasis& basis);

/// H_eff = -(xi - zeta) Q2 - (xi + zeta) Q3.
SectorOperator effective_hamiltonian(const ModelParams& p, const FockBasis& basis);

}  // namespace fourwell
