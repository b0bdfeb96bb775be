#include "fourwell/bethe.hpp"

#include "fourwell/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fourwell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSqrt3 = 1.7320508075688772935;

}  // namespace

std::uint64_t multinomial(int n, int p, int q) {
    if (p < 0 || q < 0 || p + q > n) return 0;
    constexpr unsigned __int128 kMax = ~std::uint64_t{0};
    unsigned __int128 c = 1;
    int seen = p;  // C(p,p) = 1
    for (int i = 1; i <= q; ++i) {
        c = c * static_cast<unsigned>(++seen) / static_cast<unsigned>(i);
        if (c > kMax) throw std::overflow_error("multinomial: 64-bit overflow");
    }
    for (int i = 1; i <= n - p - q; ++i) {
        c = c * static_cast<unsigned>(++seen) / static_cast<unsigned>(i);
        if (c > kMax) throw std::overflow_error("multinomial: 64-bit overflow");
    }
    return static_cast<std::uint64_t>(c);
}

Complex overlap_a(int r, int s, int a, int b, int c) {
    if (a + b + c > 38)
        throw std::overflow_error("overlap_a: sector too large for exact 64-bit accumulation");
    // exact integer accumulation per power of nu; |sums| <= 3^(a+b+c)
    long long coeff[3] = {0, 0, 0};
    for (int p = 0; p <= a; ++p) {
        for (int q = 0; q <= a - p; ++q) {
            const std::uint64_t ca = multinomial(a, p, q);
            for (int i = 0; i <= b; ++i) {
                for (int j = 0; j <= b - i; ++j) {
                    const std::uint64_t cc = multinomial(c, r - p - i, s - q - j);
                    if (cc == 0) continue;
                    const std::uint64_t term = ca * multinomial(b, i, j) * cc;
                    const int k = (((p + 2 * i - q - 2 * j - r + s) % 3) + 3) % 3;
                    coeff[k] += static_cast<long long>(term);
                }
            }
        }
    }
    // nu^0 = 1, nu^1 = (-1/2, sqrt3/2), nu^2 = (-1/2, -sqrt3/2)
    return {coeff[0] - 0.5 * (coeff[1] + coeff[2]), 0.5 * kSqrt3 * (coeff[1] - coeff[2])};
}

Complex overlap_b(int r, int s, int a, int b, int c) {
    const int n = a + b + c;
    const std::uint64_t crs = multinomial(n, r, s);
    if (crs == 0) return {0.0, 0.0};
    const double scale = std::sqrt(static_cast<double>(multinomial(n, a, b)) /
                                   (static_cast<double>(crs) * std::pow(3.0, n)));
    return scale * overlap_a(r, s, a, b, c);
}

BetheLevel bethe_level(int n4, int l, int m, const ModelParams& p) {
    const int n = p.total_n;
    if (n4 < 0 || l < 0 || m < 0 || n4 + l + m > n)
        throw std::invalid_argument("bethe_level: indices outside the sector");
    if (n + 1 - 2 * n4 == 0 || n - 1 - 2 * n4 == 0) {
        std::ostringstream msg;
        msg << "bethe_level: singular denominator at (n4,l,m)=(" << n4 << "," << l << "," << m
            << "), N=" << n;
        throw std::domain_error(msg.str());
    }
    BetheLevel level{n4, l, m, 0.0, 0.0, 0.0};
    level.a_factor =
        (kSqrt3 / 4.0) * std::sqrt(double(n4) * (n + 1 - l - m - n4)) / (n + 1 - 2 * n4);
    const double a_next =
        (kSqrt3 / 4.0) * std::sqrt(double(n4 + 1) * (n - l - m - n4)) / (n - 1 - 2 * n4);
    const double ju = p.j / p.u;
    level.norm_sq = 1.0 + ju * ju * (level.a_factor * level.a_factor + a_next * a_next);
    level.energy = p.u * double(n - 2 * n4) * (n - 2 * n4) + p.zeta * (l - m) -
                   (3.0 * p.j * p.j / (4.0 * p.u)) *
                       (double(n4) * (n - l - m - n4 + 1) / (n + 1 - 2 * n4) -
                        double(n - l - m - n4) * (1 + n4) / (n - 1 - 2 * n4));
    return level;
}

BetheState bethe_state(const ModelParams& p, double t, const OccupationState& initial,
                       const FockBasis& basis) {
    const int n = p.total_n;
    if (basis.total_n() != n || initial.total() != n)
        throw std::invalid_argument("bethe_state: particle number mismatch");
    const int n4 = initial.n4;
    const int outer = n - n4;

    QuantumState psi{basis, Eigen::VectorXcd::Zero(basis.size())};
    std::vector<Complex> amp(static_cast<size_t>(outer + 1) * (outer + 1), Complex{0.0, 0.0});
    auto at = [&](int r, int s) -> Complex& {
        return amp[static_cast<size_t>(r) * (outer + 1) + s];
    };

    for (int l = 0; l <= outer; ++l) {
        for (int m = 0; m <= outer - l; ++m) {
            const BetheLevel level = bethe_level(n4, l, m, p);  // throws on singular branch
            const int a = outer - l - m;
            const Complex weight = std::exp(Complex(0.0, -kTwoPi * level.energy * t)) /
                                   level.norm_sq * overlap_b(initial.n2, initial.n3, a, l, m);
            if (weight == Complex{0.0, 0.0}) continue;
            for (int r = 0; r <= outer; ++r)
                for (int s = 0; s <= outer - r; ++s)
                    at(r, s) += weight * std::conj(overlap_b(r, s, a, l, m));
        }
    }

    for (int r = 0; r <= outer; ++r)
        for (int s = 0; s <= outer - r; ++s)
            psi.amplitudes(basis.index_of({outer - r - s, r, s, n4})) = at(r, s);

    const double pre = psi.norm();
    if (pre == 0.0) throw std::runtime_error("bethe_state: vanishing expansion");
    psi.amplitudes /= pre;
    return {std::move(psi), pre};
}

SectorOperator effective_hamiltonian(const ModelParams& p, const FockBasis& basis) {
    const ResonantConstants rc = resonant_constants(p);
    SectorOperator h = charge(2, basis);
    h.matrix *= Complex(-(rc.xi - p.zeta), 0.0);
    h.matrix += Complex(-(rc.xi + p.zeta), 0.0) * charge(3, basis).matrix;
    h.hermitian = true;
    return h;
}

}  // namespace fourwell
