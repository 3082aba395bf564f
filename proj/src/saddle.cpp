#include "kronlab/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kronlab/error.hpp"

namespace kron {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Bernoulli numbers B_2 .. B_14.
constexpr double kBernoulli[7] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                                  5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0};

// Per-mode series terms, stable at both ends of the sigma omega range.
struct ModeTerms {
    double t0; // e^{-s w}
    double f;  // -log(1 - e^{-s w})
    double f1; // w e^{-s w}/(1 - e^{-s w}) = w/(e^{s w}-1)
    double f2; // w^2 e^{s w}/(e^{s w}-1)^2
    double f3; // w^3 e^{s w}(e^{s w}+1)/(e^{s w}-1)^3
};

ModeTerms mode_terms(double s, double w) {
    ModeTerms m;
    const double sw = s * w;
    m.t0 = std::exp(-sw);
    if (sw > 36.0) {
        // q = e^{-sw} < 2.4e-16: expansions in q are exact to double precision
        const double q = m.t0;
        m.f = q;
        m.f1 = w * q;
        m.f2 = w * w * q;
        m.f3 = w * w * w * q;
        return m;
    }
    const double em = std::expm1(sw); // e^{sw} - 1, accurate for small sw
    const double ep = em + 1.0;       // e^{sw}
    m.f = -std::log(-std::expm1(-sw));
    m.f1 = w / em;
    m.f2 = w * w * ep / (em * em);
    m.f3 = w * w * w * ep * (ep + 1.0) / (em * em * em);
    return m;
}

} // namespace

double gamma_function(double z) {
    if (!(z > 0.0)) fail(ErrorCode::InvalidArgument, "gamma requires positive argument");
    if (z < 0.5)
        return kPi / (std::sin(kPi * z) * gamma_function(1.0 - z));
    z -= 1.0;
    double x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double zeta_function(double s) {
    if (!(s > 1.0)) fail(ErrorCode::InvalidArgument, "zeta requires s > 1");
    const int N = 20;
    double sum = 0.0;
    for (int n = 1; n < N; ++n) sum += std::pow(n, -s);
    const double Ns = std::pow(N, -s);
    sum += 0.5 * Ns;
    sum += static_cast<double>(N) * Ns / (s - 1.0);
    // Euler-Maclaurin corrections; the truncation error is bounded by the
    // first omitted term, far below 1e-12 for s in (1, 60] with N = 20.
    double rising = s;        // s (s+1) ... (s+2k-2)
    double npow = Ns / N;     // N^{-s-2k+1}
    double fact = 2.0;        // (2k)!
    for (int k = 1; k <= 7; ++k) {
        sum += kBernoulli[k - 1] / fact * rising * npow;
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        npow /= static_cast<double>(N) * N;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

double oscillation_profile(double beta, double x) {
    if (x == 0.0) return beta;
    return std::pow(1.0 + x * x, -0.5 * beta) * std::sin(beta * std::atan(x)) / x;
}

double oscillation_constant(double A, double alpha) {
    const double beta = 1.0 + 1.0 / alpha;
    return std::pow(A, -1.0 / alpha) * gamma_function(beta) * zeta_function(beta) / alpha;
}

PhiEvaluator::PhiEvaluator(FrequencySystem sys, double rel_tol)
    : sys_(std::move(sys)), rel_tol_(rel_tol) {
    if (!(rel_tol > 0.0)) fail(ErrorCode::InvalidArgument, "rel_tol must be positive");
}

// Tail bound for sum_{n>M} omega_n^j e^{-s omega_n} divided through by extra
// boundary factors; conservative closed forms per generator kind.
namespace {

double upper_incomplete_style(double a, double z) {
    // Gamma(a, z) <= 2 z^{a-1} e^{-z} for z >= 2 max(a-1, 1); caller ensures.
    return 2.0 * std::pow(z, a - 1.0) * std::exp(-z);
}

double tail_bound(const FrequencySystem& sys, int j, double s, int M) {
    const double wM = sys.omega(M - 1);
    switch (sys.kind()) {
        case SystemKind::Explicit:
            return 0.0;
        case SystemKind::PowerLaw: {
            const auto& p = sys.power_params();
            double mu_mag = 0.0;
            if (p.mu == MuRule::InverseN) mu_mag = std::abs(p.c) / (M + 1.0);
            if (p.mu == MuRule::InverseLogN) mu_mag = std::abs(p.c) / std::log(M + 2.0);
            const double lo = 1.0 - mu_mag, hi = 1.0 + mu_mag;
            if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
            const double c = s * p.A * lo;
            const double a = j + 1.0 / p.alpha;
            const double z = c * std::pow(M, p.alpha);
            if (z < 2.0 * std::max(a, 2.0) || std::pow(M, p.alpha) * c < 2.0 * j)
                return std::numeric_limits<double>::infinity();
            const double env = std::pow(p.A * hi, j);
            return env / p.alpha * std::pow(c, -a) * upper_incomplete_style(a, z);
        }
        case SystemKind::Dispersion: {
            const double m = sys.mass();
            // omega_n in [n, n+m]; geometric domination beyond M
            const double base = M + 1.0 + m;
            const double rho = j / base - s;
            if (!(rho < 0.0)) return std::numeric_limits<double>::infinity();
            return std::exp(-s * (M + 1.0)) * std::pow(base, j) / (-std::expm1(rho));
        }
        case SystemKind::PrimeLog: {
            if (!(s > 1.0)) return std::numeric_limits<double>::infinity();
            const double L = wM; // log p_M
            const double a = j + 1.0;
            const double z = (s - 1.0) * L;
            if (z < 2.0 * std::max(a, 2.0)) return std::numeric_limits<double>::infinity();
            return std::pow(s - 1.0, -a) * upper_incomplete_style(a, z);
        }
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace

// caller must hold mu_
int PhiEvaluator::ensure_terms(double s, int moment) const {
    if (!(s > 0.0)) fail(ErrorCode::InvalidArgument, "series require s > 0");
    if (sys_.kind() == SystemKind::PrimeLog && !(s > 1.0))
        fail(ErrorCode::Divergent, "prime-log series diverge for s <= 1");
    if (sys_.kind() == SystemKind::Explicit) return sys_.count();
    // smallest power of two M with tail bound below tolerance, so summation
    // cost tracks the requested s rather than the largest prefix seen so far
    for (int M = 16;; M *= 2) {
        if (M > sys_.count()) sys_ = sys_.extended(M);
        const double bound = tail_bound(sys_, moment, s, M);
        // compare against a crude positive lower bound on the sum: first term
        const double w0 = sys_.omega(0);
        const double lead = std::pow(w0, moment) * std::exp(-s * w0);
        if (bound <= rel_tol_ * std::max(lead, std::numeric_limits<double>::min())) return M;
        if (M >= (1 << 25))
            fail(ErrorCode::CapExceeded,
                 "series truncation cap exceeded (s too small for this system)");
    }
}

namespace {

// mu(n) by trial factorization; n stays below ~100 here
int moebius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

// sum over primes of p^{-s} through log zeta: sum_n mu(n)/n log zeta(ns).
// Converges geometrically, unlike the raw sum over primes.
double prime_zeta(double s) {
    double sum = 0.0;
    for (int n = 1;; ++n) {
        const double ns = n * s;
        if (ns > 64.0) break; // log zeta(ns) < 1e-19
        const int mu = moebius(n);
        if (mu == 0) continue;
        sum += mu * std::log(zeta_function(ns)) / n;
    }
    return sum;
}

} // namespace

double PhiEvaluator::theta(double s) const {
    if (sys_.kind() == SystemKind::PrimeLog) {
        if (!(s > 0.0)) fail(ErrorCode::InvalidArgument, "series require s > 0");
        if (!(s > 1.0)) fail(ErrorCode::Divergent, "prime-log series diverge for s <= 1");
        return prime_zeta(s);
    }
    std::lock_guard<std::mutex> lock(mu_);
    const int M = ensure_terms(s, 0);
    double sum = 0.0;
    for (int n = M - 1; n >= 0; --n) sum += std::exp(-s * sys_.omega(n));
    return sum;
}

PhiDerivatives PhiEvaluator::phi(double s) const {
    std::lock_guard<std::mutex> lock(mu_);
    const int M = ensure_terms(s, 3);
    PhiDerivatives d{0.0, 0.0, 0.0, 0.0};
    for (int n = M - 1; n >= 0; --n) { // ascending magnitude for stable sums
        const ModeTerms m = mode_terms(s, sys_.omega(n));
        d.phi += m.f;
        d.phi1 -= m.f1;
        d.phi2 += m.f2;
        d.phi3 -= m.f3;
    }
    return d;
}

double PhiEvaluator::im_phi_prime(double sigma, double x) const {
    std::lock_guard<std::mutex> lock(mu_);
    const int M = ensure_terms(sigma, 1);
    if (x == 0.0) return 0.0;
    double sum = 0.0;
    for (int n = M - 1; n >= 0; --n) {
        const double w = sys_.omega(n);
        const double q = std::exp(-sigma * w);
        const double th = x * sigma * w;
        const double denom = 1.0 + q * q - 2.0 * q * std::cos(th);
        sum += w * q * std::sin(th) / denom;
    }
    return sum;
}

SaddleResult PhiEvaluator::solve_saddle(double E) const {
    if (!(E > 0.0)) fail(ErrorCode::InvalidArgument, "saddle point requires E > 0");
    const double sigma_min = 1e-12, sigma_max = 1e6;
    // -phi' decreases from +inf (sigma -> 0) to 0 (sigma -> inf); bracket the
    // root of f = phi' + E starting from a unit guess.
    double lo = 1.0, hi = 1.0;
    auto f = [&](double sigma) { return phi(sigma).phi1 + E; };
    double flo = f(lo);
    if (flo < 0.0) { // -phi'(1) > E: root to the right
        hi = lo;
        double fhi = flo;
        while (fhi < 0.0) {
            hi *= 4.0;
            if (hi > sigma_max)
                fail(ErrorCode::NoBracket, "saddle bracket not found below sigma = 1e6");
            fhi = f(hi);
        }
        lo = hi / 4.0;
    } else {
        while (flo > 0.0) {
            hi = lo;
            lo /= 4.0;
            if (lo < sigma_min)
                fail(ErrorCode::NoBracket, "saddle bracket not found above sigma = 1e-12");
            flo = f(lo);
        }
    }
    // safeguarded Newton with bisection fallback
    double sigma = 0.5 * (lo + hi);
    PhiDerivatives d = phi(sigma);
    const double tol = 1e-10 * E;
    for (int it = 0; it < 200; ++it) {
        const double resid = d.phi1 + E;
        if (std::abs(resid) <= tol) break;
        if (resid > 0.0) hi = sigma; else lo = sigma;
        double step = sigma - resid / d.phi2;
        if (!(step > lo && step < hi)) step = 0.5 * (lo + hi);
        sigma = step;
        d = phi(sigma);
    }
    SaddleResult r;
    r.E = E;
    r.sigma = sigma;
    r.phi = d.phi; r.phi1 = d.phi1; r.phi2 = d.phi2; r.phi3 = d.phi3;
    r.log_n_tilde = sigma * E + d.phi - 0.5 * std::log(2.0 * kPi * sigma * sigma * d.phi2);
    r.n_tilde = std::exp(r.log_n_tilde);
    return r;
}

GrowthCheck PhiEvaluator::check_alpha(const std::vector<double>& grid, double growth_floor) const {
    if (grid.size() < 2) fail(ErrorCode::InvalidArgument, "growth check needs >= 2 grid points");
    GrowthCheck g;
    g.growth_floor = growth_floor;
    g.sigma = grid;
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end(), std::greater<>()); // decreasing sigma
    g.sigma = sorted;
    for (double s : sorted) {
        const PhiDerivatives d = phi(s);
        g.first.push_back(-s * d.phi1);
        g.second.push_back(s * s * d.phi2);
    }
    g.strictly_increasing = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (!(g.first[i] > g.first[i - 1]) || !(g.second[i] > g.second[i - 1]))
            g.strictly_increasing = false;
    }
    const double g1 = g.first.back() / g.first.front();
    const double g2 = g.second.back() / g.second.front();
    g.growth = std::min(g1, g2);
    g.pass = g.strictly_increasing && g.growth >= growth_floor;
    return g;
}

BoundednessCheck PhiEvaluator::check_beta(const std::vector<double>& grid,
                                          double threshold_factor) const {
    if (grid.empty()) fail(ErrorCode::InvalidArgument, "boundedness check needs a grid");
    BoundednessCheck b;
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    b.sigma = sorted;
    for (double s : sorted) {
        const PhiDerivatives d = phi(s);
        b.values.push_back(std::abs(s * d.phi3 / d.phi2));
    }
    b.max_value = *std::max_element(b.values.begin(), b.values.end());
    b.threshold = threshold_factor * b.values.front();
    b.pass = b.max_value <= b.threshold;
    return b;
}

OscillationCheck PhiEvaluator::check_gamma(double delta, const std::vector<double>& grid,
                                           int x_samples) const {
    if (!(delta > 0.0) || x_samples < 2)
        fail(ErrorCode::InvalidArgument, "oscillation scan needs delta > 0 and >= 2 samples");
    OscillationCheck c;
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end(), std::greater<>()); // decreasing sigma
    std::vector<bool> clean;
    // Im phi'(sigma + i x sigma) is odd in x; scanning x > 0 covers the triangle.
    for (double s : sorted) {
        bool row_clean = true;
        double prev = 0.0;
        bool have_prev = false;
        for (int i = 1; i <= x_samples; ++i) {
            const double x = delta * i / x_samples;
            const double v = im_phi_prime(s, x);
            if (have_prev && ((prev > 0.0 && v < 0.0) || (prev < 0.0 && v > 0.0) || v == 0.0)) {
                row_clean = false;
                ++c.crossings;
                c.worst_sigma = s;
                c.worst_x = x;
            }
            prev = v;
            have_prev = true;
        }
        clean.push_back(row_clean);
    }
    // largest sigma whose whole tail (all smaller grid sigmas) is clean
    c.sigma_clear = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        bool tail_clean = true;
        for (std::size_t j = i; j < sorted.size(); ++j) tail_clean = tail_clean && clean[j];
        if (tail_clean) { c.sigma_clear = sorted[i]; break; }
    }
    // pass when zeros do not persist toward sigma -> 0: the small-sigma half
    // of the grid must be crossing-free
    c.pass = c.sigma_clear > 0.0 && c.sigma_clear >= sorted[sorted.size() / 2];
    if (sys_.kind() == SystemKind::PowerLaw) {
        const auto& p = sys_.power_params();
        const double beta = 1.0 + 1.0 / p.alpha;
        const double s = *std::min_element(grid.begin(), grid.end());
        const double predicted =
            oscillation_constant(p.A, p.alpha) * std::pow(s, -beta) * oscillation_profile(beta, 1.0);
        c.has_limit_ratio = true;
        c.limit_ratio = im_phi_prime(s, 1.0) / predicted;
    }
    return c;
}

} // namespace kron
