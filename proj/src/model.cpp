#include "fourwell/model.hpp"

#include <stdexcept>

namespace fourwell {

Complex nu_power(long long k) {
    switch (((k % 3) + 3) % 3) {
    case 0: return {1.0, 0.0};
    case 1: return kNu;
    default: return std::conj(kNu);  // nu^2 = conj(nu)
    }
}

ModeTransform mode_transform() {
    ModeTransform t;
    const double r = 1.0 / std::sqrt(3.0);
    for (int k = 1; k <= 3; ++k) {
        t.matrix(k - 1, 0) = r;
        t.matrix(k - 1, 1) = r * nu_power(k - 1);
        t.matrix(k - 1, 2) = r * nu_power(1 - k);
    }
    return t;
}

SectorOperator reduced_hamiltonian(const ModelParams& p, const FockBasis& basis) {
    if (p.total_n != basis.total_n())
        throw std::invalid_argument("reduced_hamiltonian: params/basis particle number mismatch");
    SectorOperator h = build_diagonal(basis, [&](const OccupationState& s) {
        const double d = double(s.n1 + s.n2 + s.n3 - s.n4);
        return p.u * d * d;
    });
    Eigen::Matrix4cd hop = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 3; ++i) {
        hop(3, i) = -p.j;
        hop(i, 3) = -p.j;
    }
    h.matrix += build_one_body(basis, hop).matrix;
    if (p.zeta != 0.0) h.matrix -= p.zeta * current(basis).matrix;
    h.hermitian = true;
    return h;
}

SectorOperator extended_hamiltonian(const ExtendedParams& p, const FockBasis& basis) {
    SectorOperator h = build_diagonal(basis, [&](const OccupationState& s) {
        const double n[4] = {double(s.n1), double(s.n2), double(s.n3), double(s.n4)};
        double e = 0.0;
        for (int i = 0; i < 4; ++i) e += 0.5 * p.u0 * n[i] * (n[i] - 1.0) + p.offsets(i) * n[i];
        e += p.u12 * (n[0] * n[1] + n[1] * n[2] + n[0] * n[2]);
        e += p.u14 * (n[0] + n[1] + n[2]) * n[3];
        return e;
    });
    Eigen::Matrix4cd hop = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) hop(i, j) = -p.hop(i, j);
    h.matrix += build_one_body(basis, hop).matrix;
    h.hermitian = true;
    return h;
}

SectorOperator charge(int k, const FockBasis& basis) {
    if (k != 2 && k != 3) throw std::invalid_argument("charge: k must be 2 or 3");
    const Complex w[3] = {1.0, nu_power(k - 1), nu_power(1 - k)};
    Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c(i, j) = std::conj(w[i]) * w[j] / 3.0;
    return build_one_body(basis, c);
}

SectorOperator current(const FockBasis& basis) {
    const Complex c{0.0, 1.0 / std::sqrt(3.0)};
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    // a2^dag a1, a3^dag a2, a1^dag a3 minus their conjugates
    m(1, 0) = c;
    m(2, 1) = c;
    m(0, 2) = c;
    m(0, 1) = -c;
    m(1, 2) = -c;
    m(2, 0) = -c;
    return build_one_body(basis, m);
}

SectorOperator collective_bilinear(int j, int k, const FockBasis& basis) {
    if ((j != 2 && j != 3) || (k != 2 && k != 3))
        throw std::invalid_argument("collective_bilinear: indices must be 2 or 3");
    const Complex wj[3] = {1.0, nu_power(j - 1), nu_power(1 - j)};
    const Complex wk[3] = {1.0, nu_power(k - 1), nu_power(1 - k)};
    Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) c(a, b) = std::conj(wj[a]) * wk[b] / 3.0;
    return build_one_body(basis, c);
}

double commutator_norm(const SectorOperator& a, const SectorOperator& b) {
    if (!a.basis.same_sector(b.basis)) throw std::invalid_argument("commutator_norm: sector mismatch");
    return (a.matrix * b.matrix - b.matrix * a.matrix).norm();
}

}  // namespace fourwell
