#ifndef KRONLAB_TRIGPOLY_HPP
#define KRONLAB_TRIGPOLY_HPP

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "kronlab/frequencies.hpp"

namespace kron {

using Complex = std::complex<double>;

// A point of the free abelian group Z[Omega_+]: finitely many integer
// exponents attached to mode positions. Stored normalized (sorted by mode,
// no zero entries) so that it can key a map and index arithmetic is exact.
class FourierIndex {
public:
    FourierIndex() = default;
    static FourierIndex single(int mode, int n = 1);
    static FourierIndex from_pairs(std::vector<std::pair<int, int>> entries);

    int exponent(int mode) const;
    const std::vector<std::pair<int, int>>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    int max_mode() const { return entries_.empty() ? -1 : entries_.back().first; }

    // frequency value sum n_omega * omega against a concrete system
    double value(const FrequencySystem& sys) const;

    FourierIndex operator+(const FourierIndex& o) const;
    FourierIndex operator-() const;
    bool operator<(const FourierIndex& o) const { return entries_ < o.entries_; }
    bool operator==(const FourierIndex& o) const { return entries_ == o.entries_; }

private:
    std::vector<std::pair<int, int>> entries_; // (mode, exponent), mode ascending
};

// Finite trigonometric polynomial sum f_eta e^{i eta x} with eta in
// Z[Omega_+]; the concrete form of the almost periodic function algebra.
// Coefficients below the prune threshold are dropped after arithmetic so
// supports stay finite under repeated operations.
class TrigPolynomial {
public:
    static constexpr double kPrune = 1e-15;

    TrigPolynomial() = default;
    explicit TrigPolynomial(std::shared_ptr<const FrequencySystem> sys) : sys_(std::move(sys)) {}

    static TrigPolynomial constant(std::shared_ptr<const FrequencySystem> sys, Complex c);
    // e^{+i omega_mode x} for n=1; general integer powers allowed
    static TrigPolynomial mode_exp(std::shared_ptr<const FrequencySystem> sys, int mode, int n = 1);

    const std::shared_ptr<const FrequencySystem>& system() const { return sys_; }
    const std::map<FourierIndex, Complex>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void set(const FourierIndex& idx, Complex c);
    Complex coefficient(const FourierIndex& idx) const;

    Complex bohr_mean() const;                       // zero-mode coefficient
    TrigPolynomial multiply(const TrigPolynomial& g) const;
    TrigPolynomial add(const TrigPolynomial& g) const;
    TrigPolynomial scale(Complex c) const;
    TrigPolynomial conjugate() const;
    TrigPolynomial flow(double t) const;             // coefficient phases e^{i t value}
    Complex evaluate(double x) const;
    double coeff_abs_sum() const;

    // hermitian symmetry predicate: f_{-eta} == conj(f_eta) within tol
    bool is_hermitian(double tol = 1e-12) const;

    std::string to_json() const;
    static TrigPolynomial from_json(std::shared_ptr<const FrequencySystem> sys,
                                    const std::string& text);

private:
    void prune();
    std::shared_ptr<const FrequencySystem> sys_;
    std::map<FourierIndex, Complex> terms_;
};

// Truncated almost periodic Dirac delta: sum of e^{+-i omega_k x} over the
// first K modes (2K unit terms).
TrigPolynomial delta_truncated(std::shared_ptr<const FrequencySystem> sys, int K);

} // namespace kron

#endif
