#include "kronlab/ergodic.hpp"

#include <functional>

#include "kronlab/error.hpp"

namespace kron {

Complex tau_average(const SparseOperator& a) {
    const int n = a.dimension();
    if (n == 0) fail(ErrorCode::InvalidArgument, "empty space");
    return a.diagonal_sum() / static_cast<double>(n);
}

Complex tau_toeplitz(const TrigPolynomial& f) { return f.bohr_mean(); }

ErgodicReport classical_limit_table(
    const std::shared_ptr<const FrequencySystem>& sys, const std::vector<double>& energy_grid,
    const std::string& label, Complex predicted,
    const std::function<SparseOperator(const std::shared_ptr<const FockSpace>&)>& make) {
    ErgodicReport report;
    report.observable = label;
    for (double e : energy_grid) {
        auto space = FockSpace::energy_cut(sys, e, Statistics::Boson);
        ErgodicRow row;
        row.E = e;
        row.N = static_cast<std::uint64_t>(space->dimension());
        row.tau = tau_average(make(space));
        row.predicted_limit = predicted;
        report.rows.push_back(row);
    }
    return report;
}

double time_average_defect(const std::shared_ptr<const FockSpace>& space,
                           const TrigPolynomial& f, double M) {
    SparseOperator t = toeplitz_operator(space, f);
    SparseOperator averaged = time_average(t, M);
    const Complex mean = f.bohr_mean();
    SparseOperator a = averaged - SparseOperator::identity(space).scaled(mean);
    return tau_average(a.adjoint() * a).real();
}

} // namespace kron
