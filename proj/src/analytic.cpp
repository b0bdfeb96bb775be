#include "fourwell/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fourwell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex ipow(Complex base, int exponent) {
    Complex out{1.0, 0.0};
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

// C(n; k,l,m) = n!/(k! l! m!) for k+l+m = n, exact in 64 bits for n <= 60.
double multinomial3(int n, int l, int m) {
    const int k = n - l - m;
    unsigned long long c = 1;
    int seen = 0;
    for (int i = 1; i <= l; ++i) c = c * static_cast<unsigned long long>(++seen) / i;
    for (int i = 1; i <= m; ++i) c = c * static_cast<unsigned long long>(++seen) / i;
    for (int i = 1; i <= k; ++i) c = c * static_cast<unsigned long long>(++seen) / i;
    return static_cast<double>(c);
}

}  // namespace

ResonantConstants resonant_constants(const ModelParams& p) {
    if (p.total_n < 2) throw std::invalid_argument("resonant_constants: N must be >= 2");
    if (p.u <= 0.0) throw std::invalid_argument("resonant_constants: U must be positive");
    ResonantConstants rc;
    rc.xi = 3.0 * p.j * p.j / (4.0 * p.u * (p.total_n - 1));
    rc.tau = 1.0 / (2.0 * rc.xi);
    rc.period = 2.0 * rc.tau;
    rc.zeta_max = rc.xi / 3.0;
    rc.resonance_ratio = 2.0 * p.u * (p.total_n - 1) / p.j;
    return rc;
}

CoherentAmplitudes coherent_amplitudes(const ModelParams& p, double t) {
    const ResonantConstants rc = resonant_constants(p);
    CoherentAmplitudes ca;
    const Complex phase = std::exp(Complex(0.0, kTwoPi * rc.xi * t));
    for (int k = 0; k < 3; ++k) {
        ca.theta[k] = kTwoPi * p.zeta * t + kTwoPi * k / 3.0;
        ca.sigma[k] = 1.0 + 2.0 * phase * std::cos(ca.theta[k]);
    }
    return ca;
}

QuantumState coherent_state(const ModelParams& p, double t, const FockBasis& basis) {
    if (basis.total_n() != p.total_n)
        throw std::invalid_argument("coherent_state: params/basis particle number mismatch");
    const int n = p.total_n;
    const CoherentAmplitudes ca = coherent_amplitudes(p, t);
    const Complex s1 = ca.sigma[0] / 3.0, s2 = ca.sigma[1] / 3.0, s3 = ca.sigma[2] / 3.0;
    QuantumState psi{basis, Eigen::VectorXcd::Zero(basis.size())};
    for (int l = 0; l <= n; ++l) {
        for (int m = 0; m <= n - l; ++m) {
            const int k = n - l - m;
            const Complex amp =
                std::sqrt(multinomial3(n, l, m)) * ipow(s1, k) * ipow(s2, l) * ipow(s3, m);
            psi.amplitudes(basis.index_of({k, l, m, 0})) = amp;
        }
    }
    psi.normalize();
    return psi;
}

std::array<double, 3> populations_analytic(const ModelParams& p, double t) {
    const ResonantConstants rc = resonant_constants(p);
    const double cxi = std::cos(kTwoPi * rc.xi * t);
    std::array<double, 3> out;
    for (int k = 0; k < 3; ++k) {
        const double ct = std::cos(kTwoPi * p.zeta * t + kTwoPi * k / 3.0);
        out[k] = (p.total_n / 9.0) * (1.0 + 4.0 * ct * (cxi + ct));
    }
    return out;
}

double imbalance_at_tau(const ModelParams& p) {
    const ResonantConstants rc = resonant_constants(p);
    const double x = std::numbers::pi * p.zeta / rc.xi;
    return (2.0 * p.total_n / (3.0 * std::sqrt(3.0))) * (std::sin(2.0 * x) + 2.0 * std::sin(x));
}

std::pair<double, double> imbalance_moments(const ModelParams& p, double t) {
    const double z = kTwoPi * p.zeta * t;   // angular
    const double x = kTwoPi * resonant_constants(p).xi * t;
    const double mean = (2.0 / (3.0 * std::sqrt(3.0))) *
                        (std::sin(2.0 * z) - 2.0 * std::sin(z) * std::cos(x)) * p.total_n;
    const double g =
        (2.0 / 27.0) *
        (std::cos(2.0 * (z - x)) - std::cos(z - x) - 2.0 * std::cos(3.0 * z - x) -
         std::cos(z + x) + std::cos(2.0 * (z + x)) - 2.0 * std::cos(3.0 * z + x) -
         std::cos(2.0 * z) + std::cos(4.0 * z) - 2.0 * std::cos(2.0 * x) + 6.0);
    return {mean, std::sqrt(std::max(g, 0.0) * p.total_n)};
}

double sensitivity_noise_factor(const ModelParams& p, double zeta) {
    const ResonantConstants rc = resonant_constants(p);
    const double x = std::numbers::pi * zeta / rc.xi;
    return std::sqrt(2.0 + std::cos(x)) / std::cos(0.5 * x);
}

double delta_alpha_analytic(const ModelParams& p, double zeta) {
    const ResonantConstants rc = resonant_constants(p);
    if (zeta < 0.0 || zeta > rc.zeta_max)
        throw std::domain_error("delta_alpha_analytic: zeta outside the operating interval [0, zeta_max]");
    return rc.xi * sensitivity_noise_factor(p, zeta) /
           (kTwoPi * std::sqrt(2.0 * p.total_n) * p.j);
}

Eigen::VectorXd mode3_weights_binomial(const ModelParams& p, double t) {
    const int n = p.total_n;
    const CoherentAmplitudes ca = coherent_amplitudes(p, t);
    const double prob = std::norm(ca.sigma[2]) / 9.0;
    Eigen::VectorXd g(n + 1);
    for (int s = 0; s <= n; ++s) {
        double binom = 1.0;
        for (int i = 1; i <= s; ++i) binom = binom * (n - s + i) / i;
        g(s) = binom * std::pow(prob, s) * std::pow(1.0 - prob, n - s);
    }
    return g;
}

Eigen::VectorXd mode3_weights_direct(const ModelParams& p, double t) {
    const int n = p.total_n;
    const CoherentAmplitudes ca = coherent_amplitudes(p, t);
    const Complex s1 = ca.sigma[0] / 3.0, s2 = ca.sigma[1] / 3.0, s3 = ca.sigma[2] / 3.0;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n + 1);
    for (int l = 0; l <= n; ++l)
        for (int m = 0; m <= n - l; ++m)
            g(m) += multinomial3(n, l, m) *
                    std::norm(ipow(s1, n - l - m) * ipow(s2, l) * ipow(s3, m));
    return g;
}

double entropy_analytic(const ModelParams& p, double t) {
    const Eigen::VectorXd g = mode3_weights_binomial(p, t);
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i)
        if (g(i) > 0.0) s -= g(i) * std::log(g(i));
    return s;
}

SensitivityCurve sensitivity_curve(const ModelParams& p, const std::vector<double>& zetas) {
    const ResonantConstants rc = resonant_constants(p);
    SensitivityCurve c;
    c.zeta = zetas;
    for (double z : zetas) {
        ModelParams q = p;
        q.zeta = z;
        const auto [mean, sd] = imbalance_moments(q, rc.tau);
        c.mean.push_back(mean);
        c.stddev.push_back(sd);
        c.noise_factor.push_back(sensitivity_noise_factor(p, z));
        c.delta_alpha.push_back(delta_alpha_analytic(p, z));
    }
    return c;
}

}  // namespace fourwell
