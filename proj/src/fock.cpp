#include "fourwell/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace fourwell {

FockBasis::FockBasis(int total_n) {
    if (total_n < 0) throw std::invalid_argument("FockBasis: total_n must be non-negative");
    auto impl = std::make_shared<Impl>();
    impl->total_n = total_n;
    impl->stride = total_n + 1;
    const int n = total_n;
    impl->states.reserve(static_cast<size_t>((n + 1) * (n + 2) * (n + 3) / 6));
    for (int n1 = n; n1 >= 0; --n1)
        for (int n2 = n - n1; n2 >= 0; --n2)
            for (int n3 = n - n1 - n2; n3 >= 0; --n3)
                impl->states.push_back({n1, n2, n3, n - n1 - n2 - n3});
    impl->lookup.assign(static_cast<size_t>(impl->stride) * impl->stride * impl->stride, -1);
    for (size_t i = 0; i < impl->states.size(); ++i) {
        const auto& s = impl->states[i];
        impl->lookup[static_cast<size_t>((s.n1 * impl->stride + s.n2) * impl->stride + s.n3)] =
            static_cast<std::int32_t>(i);
    }
    impl_ = std::move(impl);
}

int FockBasis::index_of(const OccupationState& s) const {
    const int n = impl_->total_n;
    if (s.n1 < 0 || s.n2 < 0 || s.n3 < 0 || s.n4 < 0 || s.total() != n)
        throw std::out_of_range("FockBasis::index_of: state not in this sector");
    return impl_->lookup[static_cast<size_t>((s.n1 * impl_->stride + s.n2) * impl_->stride + s.n3)];
}

FockBasis enumerate_basis(int total_n) { return FockBasis(total_n); }

QuantumState fock_state(const FockBasis& basis, const OccupationState& s) {
    QuantumState psi{basis, Eigen::VectorXcd::Zero(basis.size())};
    psi.amplitudes(basis.index_of(s)) = 1.0;
    return psi;
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    if (!a.basis.same_sector(b.basis)) throw std::invalid_argument("fidelity: sector mismatch");
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

SectorOperator build_one_body(const FockBasis& basis, const Eigen::Matrix4cd& coeffs) {
    const int dim = basis.size();
    SectorOperator op{basis, Eigen::MatrixXcd::Zero(dim, dim), false};
    for (int col = 0; col < dim; ++col) {
        const OccupationState& s = basis.state(col);
        const int occ[4] = {s.n1, s.n2, s.n3, s.n4};
        for (int i = 0; i < 4; ++i) {
            if (coeffs(i, i) != 0.0) op.matrix(col, col) += coeffs(i, i) * double(occ[i]);
            for (int j = 0; j < 4; ++j) {
                if (i == j || coeffs(i, j) == 0.0 || occ[j] == 0) continue;
                int t[4] = {occ[0], occ[1], occ[2], occ[3]};
                --t[j];
                ++t[i];
                const int row = basis.index_of({t[0], t[1], t[2], t[3]});
                // exact integer product before the square root
                const long long weight = static_cast<long long>(occ[i] + 1) * occ[j];
                op.matrix(row, col) += coeffs(i, j) * std::sqrt(double(weight));
            }
        }
    }
    op.hermitian = (coeffs - coeffs.adjoint()).cwiseAbs().maxCoeff() <=
                   1e-12 * (1.0 + coeffs.cwiseAbs().maxCoeff());
    return op;
}

SectorOperator build_diagonal(const FockBasis& basis,
                              const std::function<double(const OccupationState&)>& f) {
    const int dim = basis.size();
    SectorOperator op{basis, Eigen::MatrixXcd::Zero(dim, dim), true};
    for (int i = 0; i < dim; ++i) op.matrix(i, i) = f(basis.state(i));
    return op;
}

std::pair<double, double> expectation_and_variance(const SectorOperator& op,
                                                   const QuantumState& psi) {
    if (!op.hermitian) throw std::invalid_argument("expectation_and_variance: operator is not Hermitian");
    if (!op.basis.same_sector(psi.basis)) throw std::invalid_argument("expectation_and_variance: sector mismatch");
    const Eigen::VectorXcd opsi = op.matrix * psi.amplitudes;
    const double mean = psi.amplitudes.dot(opsi).real();
    const double second = opsi.squaredNorm();
    double var = second - mean * mean;
    if (var < 0.0) var = 0.0;  // round-off floor
    return {mean, var};
}

double expectation(const SectorOperator& op, const QuantumState& psi) {
    if (!op.basis.same_sector(psi.basis)) throw std::invalid_argument("expectation: sector mismatch");
    return psi.amplitudes.dot(op.matrix * psi.amplitudes).real();
}

}  // namespace fourwell
