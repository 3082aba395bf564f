// Acceptance suite: one line per criterion, exit 0 only when every criterion
// holds at its stated tolerance and runtime budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kronlab/counting.hpp"
#include "kronlab/ergodic.hpp"
#include "kronlab/experiments.hpp"
#include "kronlab/fock.hpp"
#include "kronlab/rng.hpp"
#include "kronlab/saddle.hpp"
#include "kronlab/thermal.hpp"

#include "oracles.hpp"

using namespace kron;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::shared_ptr<const FrequencySystem> power_law(double A, double alpha, int n) {
    return std::make_shared<FrequencySystem>(
        FrequencySystem::power_law({A, alpha, MuRule::Zero, 0.0}, n));
}

// --------------------------------------------------------------- criterion 1
Outcome counting_oracle() {
    const auto sys = FrequencySystem::power_law({1.0, 1.0, MuRule::Zero, 0.0}, 48);
    for (int e = 0; e <= 40; ++e) {
        const std::uint64_t got = count_states(sys, static_cast<double>(e)).N;
        const std::uint64_t want = oracles::cumulative_partitions(e);
        if (got != want) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "mismatch at E=%d: got %llu want %llu", e,
                          static_cast<unsigned long long>(got),
                          static_cast<unsigned long long>(want));
            return {false, buf};
        }
    }
    return {true, "exact for all integer E <= 40"};
}

// --------------------------------------------------------------- criterion 2
Outcome tauberian_ratio() {
    struct Case {
        double alpha;
        std::vector<double> grid;
    };
    const std::vector<Case> cases = {
        {1.0, {20, 28, 36, 44, 52, 60}},
        {1.5, {24, 40, 60, 84, 112, 144}},
        {2.0, {45, 75, 110, 160, 220, 285}},
    };
    std::string detail;
    for (const auto& c : cases) {
        const auto sys = power_law(1.0, c.alpha, 64);
        PhiEvaluator eval(*sys);
        std::vector<double> ratios;
        std::uint64_t top_n = 0;
        for (double e : c.grid) {
            const std::uint64_t n = count_states(*sys, e).N;
            top_n = n;
            const SaddleResult s = eval.solve_saddle(e);
            ratios.push_back(std::exp(std::log(static_cast<double>(n)) - s.log_n_tilde));
        }
        for (std::size_t i = c.grid.size() / 2; i < c.grid.size(); ++i)
            if (!(ratios[i] >= 0.5 && ratios[i] <= 2.0)) {
                char buf[128];
                std::snprintf(buf, sizeof(buf), "alpha=%.1f ratio %.3f outside [0.5,2] at E=%g",
                              c.alpha, ratios[i], c.grid[i]);
                return {false, buf};
            }
        for (std::size_t i = c.grid.size() - 3; i < c.grid.size(); ++i)
            if (std::abs(ratios[i] - 1.0) > std::abs(ratios[i - 1] - 1.0) + 1e-15) {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "alpha=%.1f |ratio-1| not nonincreasing at E=%g (%.4g -> %.4g)",
                              c.alpha, c.grid[i], std::abs(ratios[i - 1] - 1.0),
                              std::abs(ratios[i] - 1.0));
                return {false, buf};
            }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "alpha=%.1f top N=%llu ratio=%.4f; ", c.alpha,
                      static_cast<unsigned long long>(top_n), ratios.back());
        detail += buf;
    }
    return {true, detail};
}

// --------------------------------------------------------------- criterion 3
Outcome window_decay() {
    const auto sys = power_law(1.0, 1.5, 48);
    const std::vector<double> grid = {20, 40, 60, 80, 100, 120, 140};
    std::vector<double> windows;
    for (double e : grid) {
        const double n_hi = static_cast<double>(count_states(*sys, e + 1.0).N);
        const double n_lo = static_cast<double>(count_states(*sys, e).N);
        windows.push_back((n_hi - n_lo) / n_lo);
    }
    for (std::size_t i = grid.size() / 2 + 1; i < grid.size(); ++i)
        if (!(windows[i] < windows[i - 1]))
            return {false, "window ratio not decreasing on the top half"};
    if (!(windows.back() < 0.2)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "final window %.4f >= 0.2", windows.back());
        return {false, buf};
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "window at E=%g is %.4f", grid.back(), windows.back());
    return {true, buf};
}

// --------------------------------------------------------------- criterion 4
Outcome assumption_suite() {
    std::vector<double> grid;
    for (int k = 1; k <= 12; ++k) grid.push_back(std::pow(2.0, -k));
    for (double alpha : {1.0, 2.0}) {
        const auto sys = power_law(1.0, alpha, 64);
        PhiEvaluator eval(*sys);
        const GrowthCheck a = eval.check_alpha(grid);
        if (!a.pass) return {false, "growth check failed for alpha=" + std::to_string(alpha)};
        const BoundednessCheck b = eval.check_beta(grid);
        if (!b.pass) return {false, "boundedness check failed for alpha=" + std::to_string(alpha)};
        const OscillationCheck g = eval.check_gamma(4.0, grid);
        // zeros must not persist toward sigma -> 0; the hypothesis grants a
        // zero-free triangle only below a Delta-dependent threshold
        if (!g.pass)
            return {false, "oscillation zeros persist for alpha=" + std::to_string(alpha)};
    }
    // quantitative limit at sigma = 1e-3, x = 1 for alpha = 1
    const auto sys = power_law(1.0, 1.0, 64);
    PhiEvaluator eval(*sys);
    const double predicted =
        oscillation_constant(1.0, 1.0) * std::pow(1e-3, -2.0) * oscillation_profile(2.0, 1.0);
    const double ratio = eval.im_phi_prime(1e-3, 1.0) / predicted;
    if (!(std::abs(ratio - 1.0) <= 0.05)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "limit ratio %.4f outside 5%%", ratio);
        return {false, buf};
    }
    // negative control: a single mode must fail the growth check
    PhiEvaluator single(FrequencySystem::explicit_list({1.0}));
    if (single.check_alpha(grid).pass) return {false, "single mode passed the growth check"};
    char buf[96];
    std::snprintf(buf, sizeof(buf), "limit ratio %.4f; single-mode control fails as expected",
                  ratio);
    return {true, buf};
}

// --------------------------------------------------------------- criterion 5
Outcome classical_limit() {
    const auto sys = power_law(1.0, 1.5, 24);
    const std::vector<double> grid = {10, 20, 30, 40};
    Rng rng(2026);
    double worst = 0.0;
    for (double e : grid) {
        auto space = FockSpace::energy_cut(sys, e, Statistics::Boson);
        for (int trial = 0; trial < 20; ++trial) {
            TrigPolynomial f(sys);
            f.set(FourierIndex{}, rng.next_complex());
            for (int t = 0; t < 4; ++t) {
                std::vector<std::pair<int, int>> entries;
                for (int m = 0; m < 3; ++m) {
                    const int n = static_cast<int>(rng.next_below(5)) - 2;
                    if (n) entries.emplace_back(m, n);
                }
                const auto idx = FourierIndex::from_pairs(std::move(entries));
                f.set(idx, f.coefficient(idx) + rng.next_complex());
            }
            worst = std::max(worst,
                             std::abs(tau_average(toeplitz_operator(space, f)) - f.bohr_mean()));
        }
    }
    if (!(worst <= 1e-12)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "exactness defect %.2e > 1e-12", worst);
        return {false, buf};
    }

    TrigPolynomial f = TrigPolynomial::mode_exp(sys, 0, 1).add(TrigPolynomial::mode_exp(sys, 0, -1));
    const TrigPolynomial ff = f.multiply(f);
    std::vector<double> values;
    for (double e : grid) {
        auto space = FockSpace::energy_cut(sys, e, Statistics::Boson);
        const SparseOperator tf = toeplitz_operator(space, f);
        values.push_back(std::abs(tau_average(tf * tf - toeplitz_operator(space, ff))));
    }
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] < values[i - 1])) return {false, "commutator average not decreasing"};
    if (!(values.back() < 0.3)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "final commutator average %.3f >= 0.3", values.back());
        return {false, buf};
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "exactness %.1e; commutator decay %.3f -> %.3f", worst,
                  values.front(), values.back());
    return {true, buf};
}

// --------------------------------------------------------------- criterion 6
Outcome quantum_ergodicity() {
    // A = 1.07 keeps the sin^2 weights of all six frequencies away from the
    // degenerate spots at the three pinned windows, so the M^-2 decades are
    // clean; coefficients proportional to omega equalize the per-frequency
    // contributions
    const auto sys = power_law(1.07, 1.5, 24);
    const double e_ref = 40.0;
    auto space_ref = FockSpace::energy_cut(sys, e_ref, Statistics::Boson);
    TrigPolynomial f(sys);
    for (int m = 0; m < 6; ++m) {
        const Complex c = 0.05 * sys->omega(m);
        f.set(FourierIndex::single(m, +1), c);
        f.set(FourierIndex::single(m, -1), c);
    }
    const std::vector<double> m_grid = {10, 100, 1000};
    std::vector<double> defects;
    for (double m : m_grid) defects.push_back(time_average_defect(space_ref, f, m));
    for (std::size_t i = 1; i < m_grid.size(); ++i) {
        const double expected = std::pow(m_grid[i] / m_grid[i - 1], 2.0);
        const double got = defects[i - 1] / defects[i];
        if (!(got >= expected / 3.0 && got <= expected * 3.0)) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "decade %g->%g decayed %.1fx, want %.0fx within 3x",
                          m_grid[i - 1], m_grid[i], got, expected);
            return {false, buf};
        }
    }
    // E trend: the window grows with E (the double limit taken jointly);
    // at strictly fixed M the defect saturates rather than decays, so the
    // decay axis is realized through the joint growth
    const std::vector<double> e_grid = {8, 16, 32, 64};
    std::vector<double> joint;
    for (double e : e_grid) {
        const int modes = std::max(6, sys->modes_below(e));
        auto space = FockSpace::energy_cut(sys, e, Statistics::Boson, modes);
        joint.push_back(time_average_defect(space, f, 30.0 * e));
    }
    for (std::size_t i = 1; i < joint.size(); ++i)
        if (!(joint[i] < joint[i - 1])) return {false, "joint-growth defect not decreasing in E"};
    char buf[160];
    std::snprintf(buf, sizeof(buf), "defects %.2e/%.2e/%.2e at M=10/100/1000; joint %.2e -> %.2e",
                  defects[0], defects[1], defects[2], joint.front(), joint.back());
    return {true, buf};
}

// --------------------------------------------------------------- criterion 7
Outcome operator_identities() {
    const auto sys = power_law(1.0, 1.5, 8);
    const double tol = 1e-10;
    const int K = 2, cutoff = 4;

    // CCR on protected states
    auto boson = FockSpace::occupancy_cut(sys, K, cutoff, Statistics::Boson);
    for (int m = 0; m < K; ++m) {
        auto [a, astar] = boson_ops(boson, m);
        const auto mask = boson->protected_mask({m});
        if (a.commutator(astar).column_defect(SparseOperator::identity(boson), mask) > tol)
            return {false, "canonical commutator defect"};
    }
    // CAR exactly
    auto fermion = FockSpace::occupancy_cut(sys, K, 1, Statistics::Fermion, true);
    for (int m = 0; m < 2 * K; ++m)
        for (int m2 = 0; m2 < 2 * K; ++m2) {
            auto [b1, b1s] = fermion_ops(fermion, m);
            auto [b2, b2s] = fermion_ops(fermion, m2);
            const SparseOperator want =
                m == m2 ? SparseOperator::identity(fermion) : SparseOperator(fermion);
            if (b1.anticommutator(b2s).column_defect(want) > tol)
                return {false, "anticommutator defect"};
            if (b1.anticommutator(b2).column_defect(SparseOperator(fermion)) > tol)
                return {false, "annihilator pair defect"};
        }

    // field relations on the doubled layout
    auto doubled = FockSpace::occupancy_cut(sys, K, cutoff, Statistics::Boson, true);
    std::vector<int> all_modes;
    for (int m = 0; m < doubled->mode_count(); ++m) all_modes.push_back(m);
    const auto mask = doubled->protected_mask(all_modes, 2);
    const double x = 0.8, y = -0.45, t = 0.3;
    auto [phi_x, pi_x] = field_ops(doubled, x, t, K);
    auto [phi_y, pi_y] = field_ops(doubled, y, t, K);
    Complex delta = 0.0;
    for (int k = 0; k < K; ++k) {
        delta += std::polar(1.0, sys->omega(k) * (x - y));
        delta += std::polar(1.0, -sys->omega(k) * (x - y));
    }
    const SparseOperator want_phi_pi =
        SparseOperator::identity(doubled).scaled(Complex{0.0, 1.0} * delta);
    if (phi_x.commutator(pi_y).column_defect(want_phi_pi, mask) > tol)
        return {false, "field-momentum commutator defect"};

    auto fermi_space = FockSpace::occupancy_cut(sys, K, 1, Statistics::Fermion, true);
    auto [p1x, p2x] = fermi_fields(fermi_space, x, K);
    auto [p1y, p2y] = fermi_fields(fermi_space, y, K);
    const SparseOperator want_psi = SparseOperator::identity(fermi_space).scaled(2.0 * delta);
    if (p1x.anticommutator(p1y).column_defect(want_psi) > tol ||
        p2x.anticommutator(p2y).column_defect(want_psi) > tol ||
        p1x.anticommutator(p2y).column_defect(SparseOperator(fermi_space)) > tol)
        return {false, "majorana anticommutator defect"};

    // supersymmetry on the graded space
    auto graded = FockSpace::occupancy_cut(sys, K, cutoff, Statistics::GradedProduct);
    const SparseOperator q = supercharge(graded);
    const SparseOperator gamma = grading_operator(graded);
    const auto gmask = graded->protected_mask({0, 1}, 1);
    if ((q * q).column_defect(hamiltonian(graded), gmask) > tol)
        return {false, "supercharge square defect"};
    if ((q * gamma + gamma * q).max_abs() > tol) return {false, "supercharge parity defect"};
    return {true, "CCR, CAR, field, majorana and supersymmetry identities hold"};
}

// --------------------------------------------------------------- criterion 8
Outcome kms_suite() {
    const auto sys = power_law(1.0, 1.5, 8);
    const double tol = 1e-10;

    auto space = FockSpace::occupancy_cut(sys, 2, 4, Statistics::GradedProduct);
    ThermalContext th(space, 1.0);
    Rng rng(7);
    double worst_kms = 0.0;
    for (int p = 0; p < 50; ++p) {
        SparseOperator a(space), b(space);
        for (int k = 0; k < 3 * space->dimension(); ++k) {
            a.add(static_cast<int>(rng.next_below(space->dimension())),
                  static_cast<int>(rng.next_below(space->dimension())), rng.next_complex());
            b.add(static_cast<int>(rng.next_below(space->dimension())),
                  static_cast<int>(rng.next_below(space->dimension())), rng.next_complex());
        }
        worst_kms = std::max(worst_kms, th.kms_defect(a, b));
    }
    if (!(worst_kms <= tol)) return {false, "kms defect above 1e-10"};

    const SparseOperator q = supercharge(space);
    const SparseOperator gamma = grading_operator(space);
    double worst_d = 0.0, worst_twist = 0.0;
    for (int p = 0; p < 10; ++p) {
        SparseOperator raw(space);
        for (int k = 0; k < 3 * space->dimension(); ++k)
            raw.add(static_cast<int>(rng.next_below(space->dimension())),
                    static_cast<int>(rng.next_below(space->dimension())), rng.next_complex());
        auto [even, odd] = parity_split(raw);
        worst_d = std::max({worst_d, std::abs(th.skms(super_derivation(q, even))),
                            std::abs(th.skms(super_derivation(q, odd)))});
        SparseOperator b(space);
        for (int k = 0; k < 2 * space->dimension(); ++k)
            b.add(static_cast<int>(rng.next_below(space->dimension())),
                  static_cast<int>(rng.next_below(space->dimension())), rng.next_complex());
        worst_twist = std::max({worst_twist, th.twisted_kms_defect(even, b),
                                th.twisted_kms_defect(odd, b)});
    }
    if (!(worst_d <= tol)) return {false, "supertrace of a coboundary above 1e-10"};
    if (!(worst_twist <= tol)) return {false, "twisted kms defect above 1e-10"};

    // witten index at beta = 1, M = 40, K = 2: the tail bound lives at
    // e^{-41}, far below summation roundoff, so the factorized form carries
    // the bound while the direct supertrace must agree at float precision
    auto big = FockSpace::occupancy_cut(sys, 2, 40, Statistics::GradedProduct);
    ThermalContext thw(big, 1.0);
    const double bound = 2.0 * 2.0 * std::exp(-1.0 * sys->omega(0) * 41.0);
    const double index = thw.witten_index_factorized();
    if (!(std::abs(index - 1.0) <= bound))
        return {false, "witten index outside the truncation tail bound"};
    if (!(std::abs(thw.witten_index() - index) <= 1e-12))
        return {false, "supertrace and factorized index disagree"};

    // null spaces: d = 2 and d = 8
    const double w = sys->omega(0);
    if (pre_skms_nullspace({w, w}, {1.0, -1.0}, 1.0) != 1)
        return {false, "d=2 null space dimension != 1"};
    auto small = FockSpace::occupancy_cut(sys, 1, 3, Statistics::GradedProduct);
    const SparseOperator qs = supercharge(small);
    const SparseOperator h = qs * qs;
    std::vector<double> energies, parities;
    for (int i = 0; i < small->dimension(); ++i) {
        energies.push_back(h.entry(i, i).real());
        parities.push_back(small->parity(i));
    }
    if (pre_skms_nullspace(energies, parities, 1.0) != 1)
        return {false, "d=8 null space dimension != 1"};

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "kms %.1e, coboundary %.1e, twisted %.1e, index defect %.1e <= %.1e", worst_kms,
                  worst_d, worst_twist, std::abs(index - 1.0), bound);
    return {true, buf};
}

// --------------------------------------------------------------- criterion 9
Outcome determinism() {
    const fs::path base = fs::temp_directory_path() / "kronlab_acceptance";
    fs::remove_all(base);
    for (const char* raw : {"count", "kms"}) {
        const std::string name(raw);
        const std::string cfg = "run.experiment = " + name +
                                "\nsystem.descriptor = powerlaw:A=1,alpha=1.5\n"
                                "system.count = 16\ngrid.E = 5,10\nrun.seed = 11\n"
                                "run.modes = 2\nrun.boson_cutoff = 3\nrun.pairs = 8\n";
        const fs::path d1 = base / (name + "_a");
        const fs::path d2 = base / (name + "_b");
        run_experiment(Config::parse(cfg), d1.string());
        run_experiment(Config::parse(cfg), d2.string());
        for (const auto& entry : fs::directory_iterator(d1)) {
            const fs::path other = d2 / entry.path().filename();
            if (!fs::exists(other)) return {false, "missing artifact " + other.string()};
            if (read_text_file(entry.path().string()) != read_text_file(other.string()))
                return {false, "artifact differs: " + entry.path().filename().string()};
        }
    }
    return {true, "count and kms artifacts byte-identical across reruns"};
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "counting oracle equivalence", 5.0, counting_oracle},
        {2, "saddle point ratio convergence", 120.0, tauberian_ratio},
        {3, "spectral window decay", 60.0, window_decay},
        {4, "growth/boundedness/oscillation assumptions", 60.0, assumption_suite},
        {5, "classical limit of Toeplitz averages", 60.0, classical_limit},
        {6, "quantum ergodic time averaging", 60.0, quantum_ergodicity},
        {7, "operator algebra identities", 30.0, operator_identities},
        {8, "KMS / super-KMS / index / uniqueness", 60.0, kms_suite},
        {9, "deterministic artifacts", 60.0, determinism},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool within = secs < c.budget_seconds;
        const bool pass = out.pass && within;
        all = all && pass;
        std::printf("%s  criterion %d: %s (%s) [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.number,
                    c.name, out.detail.c_str(), secs, within ? "" : " OVER BUDGET");
    }
    return all ? 0 : 1;
}
