#ifndef KRONLAB_LINALG_HPP
#define KRONLAB_LINALG_HPP

#include <complex>
#include <vector>

namespace kron {

// Row-major dense complex matrix, just large enough for the finite
// dimensional functional-equation ranks (n <= a few hundred).
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::complex<double>& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const std::complex<double>& at(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * cols_ + c];
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::complex<double>> a_;
};

// Singular values in descending order: Householder QR to the triangular
// factor, then one-sided Jacobi column orthogonalization. The one-sided form
// avoids Gram-matrix squaring, so near-null directions keep full precision.
std::vector<double> singular_values(const DenseMatrix& a);

// Dimension of the null space counted with a relative singular value
// threshold: #{ s_i <= threshold * s_max }.
int nullspace_dimension(const DenseMatrix& a, double rel_threshold);

} // namespace kron

#endif
