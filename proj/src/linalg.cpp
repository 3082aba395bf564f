#include "kronlab/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "kronlab/error.hpp"

namespace kron {

namespace {

// Householder reduction of a tall matrix to its upper-triangular factor;
// singular values are preserved, so the SVD can run on the square R.
DenseMatrix qr_upper_factor(DenseMatrix a) {
    const int m = a.rows(), n = a.cols();
    for (int k = 0; k < n && k < m - 1; ++k) {
        double norm2 = 0.0;
        for (int i = k; i < m; ++i) norm2 += std::norm(a.at(i, k));
        if (norm2 == 0.0) continue;
        const double norm = std::sqrt(norm2);
        const std::complex<double> x0 = a.at(k, k);
        const std::complex<double> phase =
            std::abs(x0) > 0.0 ? x0 / std::abs(x0) : std::complex<double>{1.0, 0.0};
        const std::complex<double> alpha = -phase * norm;
        // v = x - alpha e1, normalized
        std::vector<std::complex<double>> v(static_cast<std::size_t>(m - k));
        v[0] = x0 - alpha;
        double vnorm2 = std::norm(v[0]);
        for (int i = k + 1; i < m; ++i) {
            v[static_cast<std::size_t>(i - k)] = a.at(i, k);
            vnorm2 += std::norm(a.at(i, k));
        }
        if (vnorm2 == 0.0) continue;
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (auto& c : v) c *= inv;
        for (int j = k; j < n; ++j) {
            std::complex<double> dot = 0.0;
            for (int i = k; i < m; ++i) dot += std::conj(v[static_cast<std::size_t>(i - k)]) * a.at(i, j);
            dot *= 2.0;
            for (int i = k; i < m; ++i) a.at(i, j) -= dot * v[static_cast<std::size_t>(i - k)];
        }
    }
    const int r = std::min(m, n);
    DenseMatrix out(r, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = j >= i ? a.at(i, j) : 0.0;
    return out;
}

} // namespace

std::vector<double> singular_values(const DenseMatrix& a) {
    // one-sided Jacobi on the columns: no Gram-matrix squaring, so small
    // singular values survive at machine precision
    DenseMatrix r = a.rows() > a.cols() ? qr_upper_factor(a) : a;
    const int m = r.rows(), n = r.cols();
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                std::complex<double> apq = 0.0;
                for (int i = 0; i < m; ++i) {
                    app += std::norm(r.at(i, p));
                    aqq += std::norm(r.at(i, q));
                    apq += std::conj(r.at(i, p)) * r.at(i, q);
                }
                if (std::abs(apq) <= 1e-30 ||
                    std::abs(apq) <= 1e-16 * std::sqrt(app) * std::sqrt(aqq))
                    continue;
                rotated = true;
                const double phase = std::arg(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const std::complex<double> s = std::polar(t * c, phase);
                for (int i = 0; i < m; ++i) {
                    const std::complex<double> rip = r.at(i, p);
                    const std::complex<double> riq = r.at(i, q);
                    r.at(i, p) = c * rip - std::conj(s) * riq;
                    r.at(i, q) = s * rip + c * riq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (int i = 0; i < m; ++i) norm2 += std::norm(r.at(i, j));
        sv[static_cast<std::size_t>(j)] = std::sqrt(norm2);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

int nullspace_dimension(const DenseMatrix& a, double rel_threshold) {
    const std::vector<double> sv = singular_values(a);
    if (sv.empty()) return 0;
    const double cut = rel_threshold * sv.front();
    int dim = 0;
    for (double s : sv)
        if (s <= cut) ++dim;
    return dim;
}

} // namespace kron
