#pragma once

#include "fourwell/fock.hpp"
#include "fourwell/model.hpp"

#include <array>
#include <utility>
#include <vector>

namespace fourwell {

/// Resonant-regime constants. xi and zeta_max are frequencies in Hz; tau and
/// period are in seconds (tau = 1/(2 xi) so that 2*pi*xi*tau = pi).
struct ResonantConstants {
    double xi = 0.0;
    double tau = 0.0;
    double period = 0.0;
    double zeta_max = 0.0;
    double resonance_ratio = 0.0;  // 2U(N-1)/J
};

/// xi = 3 J^2 / (4 U (N-1)) and friends. Requires N >= 2 and U > 0.
ResonantConstants resonant_constants(const ModelParams& p);

/// Time-dependent coefficients of the resonant coherent-state solution,
/// sigma_k(t) = 1 + 2 exp(+i 2 pi xi t) cos(theta_k),
/// theta_k = 2 pi zeta t + 2 pi (k-1)/3. Sum_k |sigma_k|^2 = 9 identically.
/// The phase sign is fixed by matching exp(-itH) evolution of |N,0,0,0>.
struct CoherentAmplitudes {
    std::array<Complex, 3> sigma;
    std::array<double, 3> theta;
};

CoherentAmplitudes coherent_amplitudes(const ModelParams& p, double t);

/// [sigma_1 a1^dag + sigma_2 a2^dag + sigma_3 a3^dag]^N |0> / (3^N sqrt(N!))
/// expanded over the Fock basis. Valid for the initial state |N,0,0,0> in the
/// resonant regime.
QuantumState coherent_state(const ModelParams& p, double t, const FockBasis& basis);

/// <N_k> = (N/9)(1 + 4 cos(theta_k)[cos(2 pi xi t) + cos(theta_k)]), k=1,2,3.
std::array<double, 3> populations_analytic(const ModelParams& p, double t);

/// <N2 - N3> at t = tau: (2N/(3 sqrt 3)) [sin(2 pi zeta/xi) + 2 sin(pi zeta/xi)].
double imbalance_at_tau(const ModelParams& p);

/// (mean, stddev) of N2 - N3 at time t: mean = I(t) N, stddev = sqrt(G(t) N)
/// with the ten-term cosine expression for G.
std::pair<double, double> imbalance_moments(const ModelParams& p, double t);

/// f(zeta) = sqrt(2 + cos(pi zeta/xi)) * sec(pi zeta/(2 xi)); lies in
/// [sqrt(3), sqrt(10/3)] on 0 <= zeta <= zeta_max.
double sensitivity_noise_factor(const ModelParams& p, double zeta);

/// Delta alpha = xi f(zeta) / (2 pi sqrt(2N) J). Rejects zeta outside
/// [0, zeta_max], where the imbalance readout is no longer injective.
double delta_alpha_analytic(const ModelParams& p, double zeta);

/// Mode-3 occupation weights gamma_s of the resonant solution at time t,
/// via the binomial reduction gamma_s = C(N,s) p^s (1-p)^(N-s), p = |sigma_3|^2/9.
Eigen::VectorXd mode3_weights_binomial(const ModelParams& p, double t);

/// Same weights by the direct double sum gamma_s = sum_l |A_{l,s}|^2 over the
/// coherent-state amplitudes. Oracle for the binomial reduction.
Eigen::VectorXd mode3_weights_direct(const ModelParams& p, double t);

/// Von Neumann entropy (natural log) of the mode-3 reduced state of the
/// resonant solution.
double entropy_analytic(const ModelParams& p, double t);

/// Closed-form readout curve over a zeta grid at t = tau.
struct SensitivityCurve {
    std::vector<double> zeta;
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<double> noise_factor;
    std::vector<double> delta_alpha;
};

SensitivityCurve sensitivity_curve(const ModelParams& p, const std::vector<double>& zetas);

}  // namespace fourwell
