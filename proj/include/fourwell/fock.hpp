#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace fourwell {

using Complex = std::complex<double>;

/// Occupation numbers of the four wells, |n1,n2,n3,n4>.
struct OccupationState {
    int n1 = 0;
    int n2 = 0;
    int n3 = 0;
    int n4 = 0;

    int total() const { return n1 + n2 + n3 + n4; }

    int operator[](int site) const {
        switch (site) {
        case 0: return n1;
        case 1: return n2;
        case 2: return n3;
        default: return n4;
        }
    }

    friend bool operator==(const OccupationState&, const OccupationState&) = default;
};

/// Basis of the fixed-N sector of four bosonic modes, size C(N+3,3).
/// States are ordered lexicographically descending on (n1,n2,n3,n4), so
/// |N,0,0,0> comes first and |0,0,0,N> last. Copies share the enumeration.
class FockBasis {
  public:
    FockBasis() = default;
    explicit FockBasis(int total_n);

    int total_n() const { return impl_->total_n; }
    int size() const { return static_cast<int>(impl_->states.size()); }
    const OccupationState& state(int i) const { return impl_->states[static_cast<size_t>(i)]; }
    const std::vector<OccupationState>& states() const { return impl_->states; }

    /// Position of a state in the enumeration. Throws if the state does not
    /// belong to this sector.
    int index_of(const OccupationState& s) const;

    bool same_sector(const FockBasis& other) const { return total_n() == other.total_n(); }

  private:
    struct Impl {
        int total_n = 0;
        std::vector<OccupationState> states;
        std::vector<std::int32_t> lookup;  // dense (n1,n2,n3) -> index
        int stride = 1;
    };
    std::shared_ptr<const Impl> impl_;
};

FockBasis enumerate_basis(int total_n);

/// Complex amplitude vector over a FockBasis.
struct QuantumState {
    FockBasis basis;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
    void normalize() { amplitudes /= amplitudes.norm(); }
};

/// Unit amplitude on a single occupation state.
QuantumState fock_state(const FockBasis& basis, const OccupationState& s);

/// |<a|b>|^2 of two normalized states over the same sector.
double fidelity(const QuantumState& a, const QuantumState& b);

/// Dense matrix acting within one fixed-N sector.
struct SectorOperator {
    FockBasis basis;
    Eigen::MatrixXcd matrix;
    bool hermitian = false;
};

/// Sum_ij coeffs(i,j) a_i^dag a_j on the sector. Matrix elements carry the
/// ladder factor sqrt((n_i+1) n_j) with the product formed in exact integers.
/// The hermitian flag is set iff coeffs is Hermitian.
SectorOperator build_one_body(const FockBasis& basis, const Eigen::Matrix4cd& coeffs);

/// Diagonal operator with entries f(state).
SectorOperator build_diagonal(const FockBasis& basis,
                              const std::function<double(const OccupationState&)>& f);

/// (<O>, <O^2> - <O>^2) for a Hermitian operator and a normalized state.
/// The second moment is computed as ||O psi||^2; tiny negative variances from
/// round-off are clipped to zero. Rejects operators without the hermitian flag.
std::pair<double, double> expectation_and_variance(const SectorOperator& op,
                                                   const QuantumState& psi);

/// <psi|O|psi> for Hermitian O (real part; imaginary part is round-off).
double expectation(const SectorOperator& op, const QuantumState& psi);

}  // namespace fourwell
