#include "kronlab/classical.hpp"

#include <cmath>

#include "kronlab/error.hpp"

namespace kron {

ClassicalField::ClassicalField(std::shared_ptr<const FrequencySystem> sys, int modes)
    : sys_(std::move(sys)), K_(modes) {
    if (K_ < 1 || K_ > sys_->count())
        fail(ErrorCode::InvalidArgument, "mode count out of range for system prefix");
    phi1_.assign(static_cast<std::size_t>(2 * K_), 0.0);
    phi2_.assign(static_cast<std::size_t>(2 * K_), 0.0);
}

double ClassicalField::frequency(int slot) const {
    if (slot < 0 || slot >= 2 * K_) fail(ErrorCode::InvalidArgument, "slot out of range");
    return slot < K_ ? sys_->omega(slot) : -sys_->omega(slot - K_);
}

bool ClassicalField::is_real(double tol) const {
    for (int s = 0; s < 2 * K_; ++s) {
        const int c = conjugate_slot(s);
        if (std::abs(std::conj(phi1(s)) - phi1(c)) > tol) return false;
        if (std::abs(std::conj(phi2(s)) - phi2(c)) > tol) return false;
    }
    return true;
}

void ClassicalField::symmetrize() {
    for (int s = 0; s < K_; ++s) {
        const int c = conjugate_slot(s);
        const Complex m1 = 0.5 * (phi1(s) + std::conj(phi1(c)));
        const Complex m2 = 0.5 * (phi2(s) + std::conj(phi2(c)));
        phi1(s) = m1; phi1(c) = std::conj(m1);
        phi2(s) = m2; phi2(c) = std::conj(m2);
    }
}

std::pair<TrigPolynomial, TrigPolynomial> ClassicalField::evolve(double t) const {
    // phi(x,t) = sum_w (phi1_w e^{iw(x+t)} + phi2_w e^{iw(x-t)})
    // pi(x,t)  = sum_w iw (phi1_w e^{iw(x+t)} - phi2_w e^{iw(x-t)})
    TrigPolynomial phi(sys_), pi(sys_);
    for (int s = 0; s < 2 * K_; ++s) {
        const double w = frequency(s);
        const int mode = s < K_ ? s : s - K_;
        const int expnt = s < K_ ? +1 : -1;
        const FourierIndex idx = FourierIndex::single(mode, expnt);
        const Complex left = phi1(s) * std::polar(1.0, w * t);
        const Complex right = phi2(s) * std::polar(1.0, -w * t);
        phi.set(idx, phi.coefficient(idx) + left + right);
        pi.set(idx, pi.coefficient(idx) + Complex{0.0, w} * (left - right));
    }
    return {phi, pi};
}

double ClassicalField::energy() const {
    double e = 0.0;
    for (int s = 0; s < 2 * K_; ++s) {
        const double w = frequency(s);
        e += w * w * (std::norm(phi1(s)) + std::norm(phi2(s)));
    }
    return e;
}

bool ClassicalField::zero(double tol) const {
    for (int s = 0; s < 2 * K_; ++s)
        if (std::abs(phi1(s)) > tol || std::abs(phi2(s)) > tol) return false;
    return true;
}

std::vector<Complex> to_action(const ClassicalField& f) {
    const int K = f.modes();
    std::vector<Complex> a(static_cast<std::size_t>(2 * K));
    const double root2 = std::sqrt(2.0);
    for (int s = 0; s < 2 * K; ++s) {
        const double w = f.frequency(s);
        const int minus = f.conjugate_slot(s);
        a[static_cast<std::size_t>(s)] =
            root2 * std::sqrt(std::abs(w)) * (w > 0.0 ? f.phi1(minus) : f.phi2(minus));
    }
    return a;
}

ClassicalField from_action(std::shared_ptr<const FrequencySystem> sys, int modes,
                           const std::vector<Complex>& a) {
    ClassicalField f(std::move(sys), modes);
    if (static_cast<int>(a.size()) != 2 * modes)
        fail(ErrorCode::InvalidArgument, "action vector length mismatch");
    for (int s = 0; s < 2 * modes; ++s) {
        const double w = f.frequency(s);
        const int minus = f.conjugate_slot(s);
        const Complex v = a[static_cast<std::size_t>(s)] / (std::sqrt(2.0) * std::sqrt(std::abs(w)));
        if (w > 0.0) f.phi1(minus) = v; else f.phi2(minus) = v;
    }
    // the actions carry the independent half of a real field; the other half
    // is determined by the reality condition
    for (int s = 0; s < modes; ++s) {
        f.phi1(s) = std::conj(f.phi1(s + modes));
        f.phi2(s + modes) = std::conj(f.phi2(s));
    }
    return f;
}

Complex poisson(const LinearObservable& A, const LinearObservable& B) {
    if (A.a_coeff.size() != B.a_coeff.size() || A.abar_coeff.size() != B.abar_coeff.size())
        fail(ErrorCode::InvalidArgument, "observable slot counts differ");
    Complex s = 0.0;
    for (std::size_t k = 0; k < A.a_coeff.size(); ++k)
        s += A.a_coeff[k] * B.abar_coeff[k] - B.a_coeff[k] * A.abar_coeff[k];
    return s;
}

LinearObservable action_variable(int slot, int total_slots, bool conjugated) {
    LinearObservable v;
    v.a_coeff.assign(static_cast<std::size_t>(total_slots), 0.0);
    v.abar_coeff.assign(static_cast<std::size_t>(total_slots), 0.0);
    if (conjugated)
        v.abar_coeff.at(static_cast<std::size_t>(slot)) = 1.0;
    else
        v.a_coeff.at(static_cast<std::size_t>(slot)) = 1.0;
    return v;
}

TrigPolynomial field_from_action(std::shared_ptr<const FrequencySystem> sys, int modes,
                                 const std::vector<Complex>& a, double t) {
    if (static_cast<int>(a.size()) != 2 * modes)
        fail(ErrorCode::InvalidArgument, "action vector length mismatch");
    TrigPolynomial phi(sys);
    for (int s = 0; s < 2 * modes; ++s) {
        const double w = s < modes ? sys->omega(s) : -sys->omega(s - modes);
        const int mode = s < modes ? s : s - modes;
        const int expnt = s < modes ? +1 : -1;
        const int minus = s < modes ? s + modes : s - modes;
        const double aw = std::abs(w);
        const Complex coeff =
            (std::conj(a[static_cast<std::size_t>(s)]) * std::polar(1.0, t * aw) +
             a[static_cast<std::size_t>(minus)] * std::polar(1.0, -t * aw)) /
            (std::sqrt(2.0) * std::sqrt(aw));
        const FourierIndex idx = FourierIndex::single(mode, expnt);
        phi.set(idx, phi.coefficient(idx) + coeff);
    }
    return phi;
}

} // namespace kron
