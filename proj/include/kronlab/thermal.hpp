#ifndef KRONLAB_THERMAL_HPP
#define KRONLAB_THERMAL_HPP

#include <memory>
#include <vector>

#include "kronlab/fock.hpp"

namespace kron {

// Gibbs weights e^{-beta E} over a truncated space with its diagonal
// Hamiltonian; Z and the signed (supertrace) sum are kept alongside.
class ThermalContext {
public:
    ThermalContext(std::shared_ptr<const FockSpace> space, double beta);

    const std::shared_ptr<const FockSpace>& space() const { return space_; }
    double beta() const { return beta_; }
    double weight(int i) const { return weights_.at(static_cast<std::size_t>(i)); }
    double partition_sum() const { return z_; }
    double signed_partition_sum() const { return str_z_; }

    // tr(a e^{-beta H}) / Z
    Complex gibbs(const SparseOperator& a) const;
    // Str(a e^{-beta H}) with parity signs; no normalization
    Complex skms(const SparseOperator& a) const;
    // |gibbs(ab) - gibbs(b sigma_{i beta}(a))|
    double kms_defect(const SparseOperator& a, const SparseOperator& b) const;
    // |skms(ab) - skms(b^Gamma sigma_{i beta}(a))|
    double twisted_kms_defect(const SparseOperator& a, const SparseOperator& b) const;
    // Str(e^{-beta H}); factorizes over modes for the free graded system
    double witten_index() const { return str_z_; }
    // The same quantity through the per-mode factorization
    //   prod_m (sum_{n<=M} e^{-beta w n}) (1 - e^{-beta w}),
    // an algebraic identity for graded occupancy cuts. The direct sum carries
    // ~1e-14 of roundoff; the product form resolves the e^{-beta w (M+1)}
    // distance from 1 at machine precision.
    double witten_index_factorized() const;

    // modular shift sigma_{i beta}(a) = e^{-beta H} a e^{beta H}, computed
    // entrywise from energy differences (exact for diagonal H)
    SparseOperator modular_shift(const SparseOperator& a) const;

private:
    std::shared_ptr<const FockSpace> space_;
    double beta_;
    std::vector<double> weights_;
    double z_ = 0.0;
    double str_z_ = 0.0;
};

// parity split against the grading: (even, odd) = ((a + GaG)/2, (a - GaG)/2)
std::pair<SparseOperator, SparseOperator> parity_split(const SparseOperator& a);

// definite parity tag: +1 even, -1 odd, 0 mixed (relative tolerance `tol`)
int parity_of(const SparseOperator& a, double tol = 1e-12);

// superderivation d a = Q a - (-1)^{|a|} a Q; requires definite parity
SparseOperator super_derivation(const SparseOperator& q, const SparseOperator& a);

// Null-space dimension of the pre-super-KMS functional equations
//   mu(E_ij E_kl) - mu((E_kl)^Gamma sigma_{i beta}(E_ij)) = 0
// over the d^2 matrix units of a full matrix algebra with diagonal
// Hamiltonian `energies` and diagonal grading `parities` (+-1 entries).
// Rank is decided by singular values with the given relative threshold.
int pre_skms_nullspace(const std::vector<double>& energies, const std::vector<double>& parities,
                       double beta, double rel_threshold = 1e-10, int max_dim = 16);

} // namespace kron

#endif
