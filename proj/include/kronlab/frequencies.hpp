#ifndef KRONLAB_FREQUENCIES_HPP
#define KRONLAB_FREQUENCIES_HPP

#include <optional>
#include <string>
#include <vector>

namespace kron {

// A frequency system is the positive half Omega_+ of an even frequency set:
// a strictly increasing sequence of positive reals produced by a generator
// rule. Only a finite prefix is ever materialized; the generator rule allows
// consistent extension of the prefix on demand.
//
// Generators:
//   PrimeLog        omega_n = log p_n over ascending primes
//   Dispersion(m)   omega_n = sqrt(n^2 + m^2)
//   PowerLaw        omega_n = A n^alpha (1 + mu_n), alpha >= 1
//   Explicit        a fixed finite list (not extensible)
//
// The PowerLaw perturbation mu is restricted to named o(1) families so that
// decay is guaranteed by construction.
enum class SystemKind { PrimeLog, Dispersion, PowerLaw, Explicit };

enum class MuRule { Zero, InverseN, InverseLogN };

struct PowerLawParams {
    double A = 1.0;
    double alpha = 1.0;
    MuRule mu = MuRule::Zero;
    double c = 0.0; // mu_n = c/n or c/log(n+1)
};

struct AxiomReport {
    bool positivity = false;
    bool strictly_increasing = false;
    bool divergent_on_prefix = false;
    // Def-condition 4 (algebraic independence over Z) has no numerical test.
    std::string independence = "not-checkable";
    std::string detail;
    bool testable_pass() const {
        return positivity && strictly_increasing && divergent_on_prefix;
    }
};

class FrequencySystem {
public:
    static FrequencySystem prime_log(int count);
    static FrequencySystem dispersion(double mass, int count);
    static FrequencySystem power_law(const PowerLawParams& p, int count);
    static FrequencySystem explicit_list(std::vector<double> omegas);

    SystemKind kind() const { return kind_; }
    int count() const { return static_cast<int>(omegas_.size()); }
    double omega(int i) const { return omegas_.at(static_cast<std::size_t>(i)); }
    const std::vector<double>& omegas() const { return omegas_; }
    double mass() const { return mass_; }
    const PowerLawParams& power_params() const { return pl_; }

    // True for generator-backed systems; Explicit lists cannot grow.
    bool extensible() const { return kind_ != SystemKind::Explicit; }

    // Value-semantic prefix extension: returns a system with at least n
    // frequencies, identical on the shared prefix.
    FrequencySystem extended(int n) const;

    // Smallest prefix index (1-based count) with omega > bound, extending if
    // allowed; error if the prefix cannot cover the bound.
    int modes_below(double bound) const;

    AxiomReport check_axioms() const;

    std::string to_json() const;
    static FrequencySystem from_json(const std::string& text);

    // One-line descriptor, e.g. "powerlaw:A=1,alpha=1.5". Round-trips through
    // parse_descriptor.
    std::string descriptor() const;
    static FrequencySystem parse_descriptor(const std::string& text, int count);

private:
    FrequencySystem() = default;
    void validate_prefix() const;

    SystemKind kind_ = SystemKind::Explicit;
    std::vector<double> omegas_;
    double mass_ = 0.0;   // Dispersion
    PowerLawParams pl_;   // PowerLaw
};

// First n primes via a deterministic sieve.
std::vector<std::uint64_t> first_primes(int n);

// Report-only axiom check on a raw list; never throws, so candidate lists
// that violate the type invariants can still be examined.
AxiomReport check_axioms(const std::vector<double>& omegas, bool generator_backed = false);

} // namespace kron

#endif
