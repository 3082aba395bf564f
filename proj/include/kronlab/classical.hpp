#ifndef KRONLAB_CLASSICAL_HPP
#define KRONLAB_CLASSICAL_HPP

#include <memory>
#include <vector>

#include "kronlab/trigpoly.hpp"

namespace kron {

// General solution data of the almost periodic wave equation over the first
// K modes: two chirality coefficient families phi_1 (left movers, e^{iw(x+t)})
// and phi_2 (right movers, e^{iw(x-t)}), indexed over signed frequencies
// +-omega_1..+-omega_K. Index convention: 0..K-1 holds +omega_{k+1}, K..2K-1
// holds -omega_{k+1}.
class ClassicalField {
public:
    ClassicalField(std::shared_ptr<const FrequencySystem> sys, int modes);

    int modes() const { return K_; }
    const std::shared_ptr<const FrequencySystem>& system() const { return sys_; }

    // signed frequency at slot s (positive for s < K)
    double frequency(int slot) const;
    int conjugate_slot(int slot) const { return slot < K_ ? slot + K_ : slot - K_; }

    Complex& phi1(int slot) { return phi1_.at(static_cast<std::size_t>(slot)); }
    Complex& phi2(int slot) { return phi2_.at(static_cast<std::size_t>(slot)); }
    Complex phi1(int slot) const { return phi1_.at(static_cast<std::size_t>(slot)); }
    Complex phi2(int slot) const { return phi2_.at(static_cast<std::size_t>(slot)); }

    // conj(phi[w]) == phi[-w] for both families
    bool is_real(double tol = 1e-12) const;
    // project onto the real subspace: phi[-w] <- conj(phi[w]) symmetrized
    void symmetrize();

    // field and momentum at time t as trig polynomials in x
    std::pair<TrigPolynomial, TrigPolynomial> evolve(double t) const;

    // quadratic form sum over slots of w^2 (|phi1|^2 + |phi2|^2)
    double energy() const;

    bool zero(double tol = 1e-14) const;

private:
    std::shared_ptr<const FrequencySystem> sys_;
    int K_;
    std::vector<Complex> phi1_, phi2_;
};

// A linear observable is a finite combination of the action-angle variables:
// sum over slots of (c[slot] a_w + cbar[slot] abar_w).
struct LinearObservable {
    std::vector<Complex> a_coeff;    // multiplies a_w
    std::vector<Complex> abar_coeff; // multiplies conj(a_w)
};

// Action-angle variables a_w = sqrt(2) |w|^{1/2} x (phi_{1,-w} for w > 0,
// phi_{2,-w} for w < 0); a linear bijection with field data.
std::vector<Complex> to_action(const ClassicalField& f);
ClassicalField from_action(std::shared_ptr<const FrequencySystem> sys, int modes,
                           const std::vector<Complex>& a);

// canonical bracket on linear observables: {a_w, abar_w'} = delta,
// {a, a} = {abar, abar} = 0
Complex poisson(const LinearObservable& A, const LinearObservable& B);

// a_w as a LinearObservable (unit coefficient at one slot)
LinearObservable action_variable(int slot, int total_slots, bool conjugated);

// Rebuild phi(x, t) from action variables:
// phi = 2^{-1/2} sum_w |w|^{-1/2} (abar_w e^{it|w|} + a_{-w} e^{-it|w|}) e^{iwx}
TrigPolynomial field_from_action(std::shared_ptr<const FrequencySystem> sys, int modes,
                                 const std::vector<Complex>& a, double t);

} // namespace kron

#endif
