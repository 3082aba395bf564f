#include "kronlab/thermal.hpp"

#include <cmath>

#include "kronlab/error.hpp"
#include "kronlab/linalg.hpp"

namespace kron {

ThermalContext::ThermalContext(std::shared_ptr<const FockSpace> space, double beta)
    : space_(std::move(space)), beta_(beta) {
    if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "beta must be positive");
    weights_.reserve(static_cast<std::size_t>(space_->dimension()));
    for (int i = 0; i < space_->dimension(); ++i) {
        const double w = std::exp(-beta * space_->state_energy(i));
        weights_.push_back(w);
        z_ += w;
        str_z_ += space_->parity(i) * w;
    }
    if (!(z_ > 0.0)) fail(ErrorCode::Internal, "partition sum must be positive");
}

Complex ThermalContext::gibbs(const SparseOperator& a) const {
    if (a.space() != space_) fail(ErrorCode::InvalidArgument, "operator bound to another space");
    Complex s = 0.0;
    for (int i = 0; i < space_->dimension(); ++i)
        s += a.entry(i, i) * weight(i);
    return s / z_;
}

Complex ThermalContext::skms(const SparseOperator& a) const {
    if (a.space() != space_) fail(ErrorCode::InvalidArgument, "operator bound to another space");
    Complex s = 0.0;
    for (int i = 0; i < space_->dimension(); ++i)
        s += space_->parity(i) * a.entry(i, i) * weight(i);
    return s;
}

SparseOperator ThermalContext::modular_shift(const SparseOperator& a) const {
    if (a.space() != space_) fail(ErrorCode::InvalidArgument, "operator bound to another space");
    // entry (r,c) picks up e^{-beta (E_r - E_c)}; guard the exponent range so
    // overflow cannot silently produce inf
    SparseOperator r(space_);
    for (int i = 0; i < a.dimension(); ++i) {
        for (const auto& [j, v] : a.row(i)) {
            const double x = -beta_ * (space_->state_energy(i) - space_->state_energy(j));
            if (x > 700.0)
                fail(ErrorCode::CapExceeded,
                     "modular shift overflow: beta * energy range exceeds exp() domain");
            r.add(i, j, v * std::exp(x));
        }
    }
    return r;
}

double ThermalContext::kms_defect(const SparseOperator& a, const SparseOperator& b) const {
    const Complex lhs = gibbs(a * b);
    const Complex rhs = gibbs(b * modular_shift(a));
    return std::abs(lhs - rhs);
}

double ThermalContext::twisted_kms_defect(const SparseOperator& a, const SparseOperator& b) const {
    const SparseOperator g = grading_operator(space_);
    const Complex lhs = skms(a * b);
    const Complex rhs = skms(g * b * g * modular_shift(a));
    return std::abs(lhs - rhs);
}

double ThermalContext::witten_index_factorized() const {
    if (space_->statistics() != Statistics::GradedProduct ||
        space_->truncation() != Truncation::OccupancyCut)
        fail(ErrorCode::InvalidArgument,
             "factorized index needs a graded occupancy-cut space");
    // per mode: (sum_{n=0}^{M} q^n)(1 - q) = 1 - q^{M+1} with q = e^{-beta w}
    double product = 1.0;
    for (int m = 0; m < space_->mode_count(); ++m)
        product *= -std::expm1(-beta_ * space_->mode_omega(m) * (space_->occupancy_limit() + 1));
    return product;
}

std::pair<SparseOperator, SparseOperator> parity_split(const SparseOperator& a) {
    const SparseOperator g = grading_operator(a.space());
    const SparseOperator conj = g * a * g;
    return {(a + conj).scaled(0.5), (a - conj).scaled(0.5)};
}

int parity_of(const SparseOperator& a, double tol) {
    auto [even, odd] = parity_split(a);
    const double scale = std::max(a.max_abs(), 1e-300);
    const bool has_even = even.max_abs() > tol * scale;
    const bool has_odd = odd.max_abs() > tol * scale;
    if (has_even && has_odd) return 0;
    return has_odd ? -1 : +1;
}

SparseOperator super_derivation(const SparseOperator& q, const SparseOperator& a) {
    const int p = parity_of(a);
    if (p == 0)
        fail(ErrorCode::InvalidArgument,
             "superderivation needs definite parity; split the input first");
    return p > 0 ? q * a - a * q : q * a + a * q;
}

int pre_skms_nullspace(const std::vector<double>& energies, const std::vector<double>& parities,
                       double beta, double rel_threshold, int max_dim) {
    const int d = static_cast<int>(energies.size());
    if (d < 1 || d > max_dim)
        fail(ErrorCode::InvalidArgument, "null-space dimension cap exceeded");
    if (static_cast<int>(parities.size()) != d)
        fail(ErrorCode::InvalidArgument, "parity vector length mismatch");
    // unknowns mu(E_il), flattened il -> i*d + l; constraints indexed by
    // pairs of matrix units (ij), (kl):
    //   delta_jk mu(E_il) = gamma_k gamma_l e^{-beta(E_i - E_j)} delta_li mu(E_kj)
    // Only constraints with j == k or l == i carry coefficients; zero rows do
    // not affect singular values and are skipped.
    std::vector<std::vector<std::pair<int, double>>> rows;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    std::vector<std::pair<int, double>> row;
                    if (j == k) row.emplace_back(i * d + l, 1.0);
                    if (l == i) {
                        const double shift =
                            std::exp(-beta * (energies[static_cast<std::size_t>(i)] -
                                              energies[static_cast<std::size_t>(j)]));
                        row.emplace_back(k * d + j,
                                         -parities[static_cast<std::size_t>(k)] *
                                             parities[static_cast<std::size_t>(l)] * shift);
                    }
                    if (!row.empty()) rows.push_back(std::move(row));
                }
    DenseMatrix sys(static_cast<int>(rows.size()), d * d);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        for (const auto& [c, v] : rows[static_cast<std::size_t>(r)]) sys.at(r, c) += v;
    return nullspace_dimension(sys, rel_threshold);
}

} // namespace kron
