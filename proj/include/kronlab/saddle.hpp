#ifndef KRONLAB_SADDLE_HPP
#define KRONLAB_SADDLE_HPP

#include <memory>
#include <mutex>
#include <vector>

#include "kronlab/frequencies.hpp"

namespace kron {

// Gamma and Riemann zeta for real beta > 1 (zeta) and beta > 0 (gamma).
// Gamma: Lanczos rational approximation (g = 7), relative error well below
// 1e-12 on [1, 3]. Zeta: Euler-Maclaurin with the remainder kept below 1e-12.
double gamma_function(double beta);
double zeta_function(double beta);

struct PhiDerivatives {
    double phi;   // -sum log(1 - e^{-s omega_n})
    double phi1;  // first derivative, negative
    double phi2;  // second derivative, positive
    double phi3;  // third derivative, negative
};

struct SaddleResult {
    double E = 0.0;
    double sigma = 0.0;       // unique positive root of phi'(sigma) + E = 0
    double phi = 0.0, phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
    double log_n_tilde = 0.0; // sigma E + phi - log(2 pi sigma^2 phi'')/2
    double n_tilde = 0.0;     // may overflow to inf; log form is primary
};

struct GrowthCheck {
    bool pass = false;
    std::vector<double> sigma;
    std::vector<double> first;  // -sigma phi'(sigma)
    std::vector<double> second; // sigma^2 phi''(sigma)
    bool strictly_increasing = false;
    double growth = 0.0; // min over both sequences of last/first
    double growth_floor = 2.0;
};

struct BoundednessCheck {
    bool pass = false;
    std::vector<double> sigma;
    std::vector<double> values; // |sigma phi''' / phi''|
    double max_value = 0.0;
    double threshold = 0.0; // threshold_factor x value at largest sigma
};

// The no-nonreal-roots hypothesis fixes Delta first and then grants a
// zero-free triangle below some sigma_0(Delta); zeros at large sigma are
// compatible with it (the integer system has one near sigma = 1/2, x = 3.4
// at Delta = 4). The scan therefore passes when the small-sigma half of the
// grid is crossing-free and reports the clear threshold it found.
struct OscillationCheck {
    bool pass = false;        // no crossings on the small-sigma half of the grid
    int crossings = 0;        // total crossings seen anywhere in the scan
    double sigma_clear = 0.0; // largest sigma with a crossing-free tail below it
    double worst_sigma = 0.0, worst_x = 0.0;
    // limit comparison against C sigma^{-beta} x h(x), power-law systems only
    bool has_limit_ratio = false;
    double limit_ratio = 0.0; // at the smallest sigma of the grid, x = 1
};

// Series evaluator for theta, phi and its first three derivatives, and the
// boundary values Im phi'(sigma + i x sigma). Truncation is adaptive: the
// prefix is extended until a per-kind analytic tail bound falls below
// rel_tol times the partial sum. Explicit systems are finite sums (no tail).
class PhiEvaluator {
public:
    explicit PhiEvaluator(FrequencySystem sys, double rel_tol = 1e-12);

    const FrequencySystem& system() const { return sys_; }
    double rel_tol() const { return rel_tol_; }

    double theta(double s) const;
    PhiDerivatives phi(double s) const;
    double im_phi_prime(double sigma, double x) const;

    // Bracketing plus safeguarded Newton; residual |phi'(sigma)+E| <= 1e-10 E.
    SaddleResult solve_saddle(double E) const;

    GrowthCheck check_alpha(const std::vector<double>& sigma_grid,
                            double growth_floor = 2.0) const;
    BoundednessCheck check_beta(const std::vector<double>& sigma_grid,
                                double threshold_factor = 10.0) const;
    OscillationCheck check_gamma(double delta, const std::vector<double>& sigma_grid,
                                 int x_samples = 160) const;

private:
    int ensure_terms(double s, int moment) const; // returns usable term count
    mutable FrequencySystem sys_;
    mutable std::mutex mu_;
    double rel_tol_;
};

// Small-angle-free evaluation of h(x) = (1+x^2)^{-beta/2} sin(beta atan x)/x
// with the x -> 0 limit beta. This is the nonvanishing profile of the
// boundary values of phi' for power-law systems.
double oscillation_profile(double beta, double x);

// A^{-1/alpha} Gamma(beta) zeta(beta) / alpha with beta = 1 + 1/alpha.
double oscillation_constant(double A, double alpha);

} // namespace kron

#endif
