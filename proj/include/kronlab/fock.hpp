#ifndef KRONLAB_FOCK_HPP
#define KRONLAB_FOCK_HPP

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "kronlab/counting.hpp"
#include "kronlab/frequencies.hpp"
#include "kronlab/trigpoly.hpp"

namespace kron {

enum class Statistics { Boson, Fermion, GradedProduct };
enum class Truncation { EnergyCut, OccupancyCut };

// A finite truncation of a Fock space over a list of oscillator modes.
//
// Mode layout: `modes` entries, each a positive frequency. The positive-half
// space of the Kronecker flow uses modes omega_1..omega_K directly. Field
// theory on the even set Omega uses a doubled layout of 2K independent modes
// (positions 0..K-1 for Omega_+, K..2K-1 for Omega_-, both carrying |omega|).
//
// Truncations:
//   EnergyCut(E)    basis = occupations with energy <= E, ordered by energy
//                   then lexicographically; mirrors the counting enumeration.
//   OccupancyCut(M) basis = full grid 0..M per bosonic mode (0..1 fermionic),
//                   mixed-radix order; the tensor-product structure needed by
//                   supertrace factorization.
//
// For the graded product, a basis state is a pair (bosonic occupation,
// fermionic occupation) over the same mode list, and the grading operator is
// (-1)^{total fermionic occupancy}.
class FockSpace {
public:
    static std::shared_ptr<const FockSpace> energy_cut(
        std::shared_ptr<const FrequencySystem> sys, double e_max, Statistics stat,
        int modes = -1 /* -1: all modes with omega <= e_max */, bool doubled = false);
    static std::shared_ptr<const FockSpace> occupancy_cut(
        std::shared_ptr<const FrequencySystem> sys, int modes, int cutoff, Statistics stat,
        bool doubled = false);

    Statistics statistics() const { return stat_; }
    Truncation truncation() const { return trunc_; }
    double energy_limit() const { return e_max_; }
    int occupancy_limit() const { return cutoff_; }
    bool doubled() const { return doubled_; }

    const std::shared_ptr<const FrequencySystem>& system() const { return sys_; }
    int mode_count() const { return static_cast<int>(mode_omega_.size()); }
    double mode_omega(int m) const { return mode_omega_.at(static_cast<std::size_t>(m)); }

    int dimension() const { return static_cast<int>(energies_.size()); }
    double state_energy(int i) const { return energies_.at(static_cast<std::size_t>(i)); }

    bool has_bosons() const { return stat_ != Statistics::Fermion; }
    bool has_fermions() const { return stat_ != Statistics::Boson; }

    // occupancy accessors for basis state i
    int boson_occ(int i, int mode) const;
    int fermion_occ(int i, int mode) const;
    int fermion_total(int i) const;
    double parity(int i) const { return fermion_total(i) % 2 == 0 ? 1.0 : -1.0; }

    // index of the basis state reached by adding `delta` to the bosonic
    // occupancy of `mode`; -1 when the target leaves the basis
    int boson_shifted(int i, int mode, int delta) const;
    // fermionic flip 0<->1 on `mode`; always stays in the basis
    int fermion_flipped(int i, int mode) const;

    // True when every single raising step on the listed bosonic modes keeps
    // the state in the basis (with `margin` applications worth of headroom).
    bool is_protected(int i, const std::vector<int>& modes, int margin = 1) const;
    std::vector<bool> protected_mask(const std::vector<int>& modes, int margin = 1) const;

private:
    struct Key {
        std::vector<std::uint16_t> b, f;
        bool operator<(const Key& o) const { return std::tie(b, f) < std::tie(o.b, o.f); }
    };
    FockSpace() = default;
    void build_index();
    int lookup(const Key& k) const;

    Statistics stat_ = Statistics::Boson;
    Truncation trunc_ = Truncation::EnergyCut;
    double e_max_ = 0.0;
    int cutoff_ = 0;
    bool doubled_ = false;
    std::shared_ptr<const FrequencySystem> sys_;
    std::vector<double> mode_omega_;
    std::vector<Key> basis_;
    std::vector<double> energies_;
    std::map<Key, int> index_;
};

// Complex sparse matrix bound to a basis; rows hold sorted column->value maps.
class SparseOperator {
public:
    SparseOperator() = default;
    explicit SparseOperator(std::shared_ptr<const FockSpace> space)
        : space_(std::move(space)), rows_(space_ ? space_->dimension() : 0) {}

    static SparseOperator identity(std::shared_ptr<const FockSpace> space);
    static SparseOperator diagonal(std::shared_ptr<const FockSpace> space,
                                   const std::vector<Complex>& d);

    const std::shared_ptr<const FockSpace>& space() const { return space_; }
    int dimension() const { return static_cast<int>(rows_.size()); }

    void add(int row, int col, Complex v);
    Complex entry(int row, int col) const;
    const std::map<int, Complex>& row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }
    std::size_t nonzeros() const;

    SparseOperator operator*(const SparseOperator& o) const;
    SparseOperator operator+(const SparseOperator& o) const;
    SparseOperator operator-(const SparseOperator& o) const;
    SparseOperator scaled(Complex c) const;
    SparseOperator adjoint() const;

    SparseOperator commutator(const SparseOperator& o) const;     // [a,b]
    SparseOperator anticommutator(const SparseOperator& o) const; // [a,b]_+

    Complex diagonal_sum() const;
    double max_abs() const;
    // max over masked columns of the 1-norm of (this - o) applied to e_col
    double column_defect(const SparseOperator& o, const std::vector<bool>& mask) const;
    double column_defect(const SparseOperator& o) const;

    // coordinate dump (row, col, re, im) plus basis manifest
    std::string dump_coordinates() const;

private:
    void check_same_space(const SparseOperator& o) const;
    std::shared_ptr<const FockSpace> space_;
    std::vector<std::map<int, Complex>> rows_;
};

// ladder and field operators -------------------------------------------------

// Unilateral shift u_mode: e(eta) -> e(eta + delta_mode); rows leaving the
// basis are dropped, so u*u = I holds exactly on the protected subspace only.
SparseOperator shift_operator(std::shared_ptr<const FockSpace> space, int mode);

// a* e(eta) = sqrt(n_mode + 1) e(eta + delta_mode), a its adjoint.
std::pair<SparseOperator, SparseOperator> boson_ops(std::shared_ptr<const FockSpace> space,
                                                    int mode);

// Jordan-Wigner fermionic pair (b, b*): sign (-1)^{sum of occupancies on
// lower mode positions}; the literal per-mode raise/lower rule does not
// anticommute across modes, the string restores the canonical relations.
std::pair<SparseOperator, SparseOperator> fermion_ops(std::shared_ptr<const FockSpace> space,
                                                      int mode);

// T(f) = sum_idx f_idx prod_modes u_mode(n_mode) on a bosonic energy cut;
// per term, lowerings apply before raisings so a term survives iff every
// lowering is valid and the final occupation stays in the basis.
SparseOperator toeplitz_operator(std::shared_ptr<const FockSpace> space,
                                 const TrigPolynomial& f);

SparseOperator hamiltonian(std::shared_ptr<const FockSpace> space);      // diagonal energies
SparseOperator number_operator(std::shared_ptr<const FockSpace> space);  // fermionic F
SparseOperator grading_operator(std::shared_ptr<const FockSpace> space); // (-1)^F
SparseOperator evolution_operator(std::shared_ptr<const FockSpace> space, double t);

// Mode-truncated field and momentum at (x, t) over +-omega_1..+-omega_K on a
// doubled-layout bosonic (or graded) space:
//   phi = 2^{-1/2} sum |w|^{-1/2} (a*_w e^{it|w|} + a_{-w} e^{-it|w|}) e^{iwx}
//   pi  = i 2^{-1/2} sum |w|^{+1/2} (a*_w e^{it|w|} - a_{-w} e^{-it|w|}) e^{iwx}
std::pair<SparseOperator, SparseOperator> field_ops(std::shared_ptr<const FockSpace> space,
                                                    double x, double t, int K);

// Hermitian Majorana pair over the doubled fermionic modes:
//   psi_1 = sum_w (b*_w + b_{-w}) e^{-iwx},  psi_2 = i sum_w (b*_w - b_{-w}) e^{-iwx}
// satisfying [psi_i(x), psi_j(y)]_+ = 2 delta_ij delta_K(x-y) exactly.
std::pair<SparseOperator, SparseOperator> fermi_fields(std::shared_ptr<const FockSpace> space,
                                                       double x, int K);

// Supercharge Q = sum_modes sqrt(omega) (a* b + a b*); odd, Q^2 = H on the
// protected subspace.
SparseOperator supercharge(std::shared_ptr<const FockSpace> space, int K = -1);

// (1/M) int_0^M U(t) a U(-t) dt in closed form: entry (r,c) scaled by
// (e^{iM(E_r-E_c)} - 1)/(iM(E_r-E_c)), diagonal untouched.
SparseOperator time_average(const SparseOperator& a, double M);

} // namespace kron

#endif
