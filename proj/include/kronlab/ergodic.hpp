#ifndef KRONLAB_ERGODIC_HPP
#define KRONLAB_ERGODIC_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kronlab/fock.hpp"

namespace kron {

// Normalized diagonal (microcanonical) average over an energy-cut basis:
// tau_E(a) = (1/N) sum over basis states of (e(eta), a e(eta)).
Complex tau_average(const SparseOperator& a);

// tau_E of a Toeplitz observable without materializing the matrix: the
// diagonal entries all equal the zero-mode coefficient, so this is exact.
Complex tau_toeplitz(const TrigPolynomial& f);

struct ErgodicRow {
    double E = 0.0;
    std::uint64_t N = 0;
    Complex tau;
    Complex predicted_limit;
};

struct ErgodicReport {
    std::string observable;
    std::vector<ErgodicRow> rows;
};

// tau_E along an energy grid for an observable built per space by `make`,
// with the classical-limit prediction attached to every row.
ErgodicReport classical_limit_table(
    const std::shared_ptr<const FrequencySystem>& sys, const std::vector<double>& energy_grid,
    const std::string& label, Complex predicted,
    const std::function<SparseOperator(const std::shared_ptr<const FockSpace>&)>& make);

// tau_E(A^dagger A) with A = time_average(T(f), M) - f0 I on the energy-cut
// space at E; the quantum-ergodicity defect of the time-averaged observable.
double time_average_defect(const std::shared_ptr<const FockSpace>& space,
                           const TrigPolynomial& f, double M);

} // namespace kron

#endif
