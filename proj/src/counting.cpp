#include "kronlab/counting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "kronlab/error.hpp"

namespace kron {

namespace {

int thread_budget(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("KRONLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

// Counts lattice points over modes [0, top] with the given budget. Modes are
// walked from the largest omega down; the smallest mode is closed in O(1).
[[noreturn]] void fail_cap(std::uint64_t cap) {
    fail(ErrorCode::CapExceeded,
         "state count exceeds the configured cap of " + std::to_string(cap) +
             " (run.cap raises it)");
}

std::uint64_t count_rec(const std::vector<double>& w, int top, double budget,
                        std::uint64_t cap, std::uint64_t& visited) {
    if (top == 0) return static_cast<std::uint64_t>(std::floor(budget / w[0])) + 1;
    std::uint64_t total = 0;
    double remaining = budget;
    while (remaining >= 0.0) {
        total += count_rec(w, top - 1, remaining, cap, visited);
        if (++visited > cap || total > cap) fail_cap(cap);
        remaining -= w[static_cast<std::size_t>(top)];
    }
    return total;
}

void enumerate_rec(const std::vector<double>& w, int top, double budget,
                   Occupation& occ, std::vector<Occupation>& out, std::uint64_t cap) {
    if (top < 0) {
        out.push_back(occ);
        if (out.size() > cap) fail_cap(cap);
        return;
    }
    double remaining = budget;
    std::uint16_t n = 0;
    while (remaining >= 0.0) {
        occ.counts[static_cast<std::size_t>(top)] = n;
        enumerate_rec(w, top - 1, remaining, occ, out, cap);
        remaining -= w[static_cast<std::size_t>(top)];
        ++n;
    }
    occ.counts[static_cast<std::size_t>(top)] = 0;
}

// Effective mode list covering E, plus the inclusion slack.
struct Prepared {
    std::vector<double> omegas;
    double budget;
};

// Effective mode list covering E. Generator-backed prefixes are extended
// until the last frequency exceeds the budget, so no unmaterialized mode can
// contribute; explicit lists denote the entire positive frequency set and
// need no coverage.
Prepared prepare(const FrequencySystem& sys, double E, const CountOptions& opt) {
    const double slack = opt.boundary_eps * std::max(1.0, std::abs(E));
    const double budget = E + slack;
    FrequencySystem covered = sys;
    if (sys.extensible())
        while (covered.omegas().back() <= budget) {
            if (covered.count() > 16'777'216)
                fail(ErrorCode::CapExceeded,
                     "mode materialization cap exceeded while covering E");
            covered = covered.extended(covered.count() * 2);
        }
    int k = 0;
    while (k < covered.count() && covered.omega(k) <= budget) ++k;
    Prepared p;
    p.omegas.assign(covered.omegas().begin(), covered.omegas().begin() + k);
    p.budget = budget;
    return p;
}

} // namespace

CountResult count_states(const FrequencySystem& sys, double E, const CountOptions& opt) {
    CountResult r;
    r.E = E;
    if (E < 0.0) { r.N = 0; return r; }
    Prepared p = prepare(sys, E, opt);
    if (p.omegas.empty()) { r.N = 1; return r; } // vacuum only
    const int top = static_cast<int>(p.omegas.size()) - 1;
    if (top == 0) {
        r.N = static_cast<std::uint64_t>(std::floor(p.budget / p.omegas[0])) + 1;
        return r;
    }
    // Partition by the occupancy of the largest mode; subtree counts are
    // merged by exact integer addition, so the result is independent of the
    // partitioning.
    std::vector<double> budgets;
    for (double rem = p.budget; rem >= 0.0; rem -= p.omegas.back()) budgets.push_back(rem);
    const int threads = std::min<int>(thread_budget(opt.threads), static_cast<int>(budgets.size()));
    std::vector<std::uint64_t> partial(budgets.size(), 0);
    std::atomic<bool> failed{false};
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        std::uint64_t visited = 0;
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= budgets.size() || failed.load()) return;
            try {
                partial[i] = count_rec(p.omegas, top - 1, budgets[i], opt.cap, visited);
            } catch (const Error&) {
                failed.store(true);
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) fail_cap(opt.cap);
    std::uint64_t total = 0;
    for (std::uint64_t c : partial) {
        total += c;
        if (total > opt.cap) fail_cap(opt.cap);
    }
    r.N = total;
    return r;
}

std::vector<Occupation> enumerate_occupations(const FrequencySystem& sys, double E,
                                              const CountOptions& opt) {
    if (E < 0.0) return {};
    Prepared p = prepare(sys, E, opt);
    Occupation occ;
    occ.counts.assign(p.omegas.size(), 0);
    std::vector<Occupation> out;
    if (p.omegas.empty()) {
        out.push_back(occ);
        return out;
    }
    enumerate_rec(p.omegas, static_cast<int>(p.omegas.size()) - 1, p.budget, occ, out, opt.cap);
    const FrequencySystem covered =
        sys.count() >= static_cast<int>(p.omegas.size()) ? sys : sys.extended(static_cast<int>(p.omegas.size()));
    std::stable_sort(out.begin(), out.end(), [&](const Occupation& a, const Occupation& b) {
        double ea = a.energy(covered), eb = b.energy(covered);
        if (ea != eb) return ea < eb;
        return a.counts < b.counts;
    });
    return out;
}

CountResult spectrum_up_to(const FrequencySystem& sys, double E, const CountOptions& opt) {
    CountResult r;
    r.E = E;
    std::vector<SpectrumLine> lines;
    if (E < 0.0) { r.N = 0; r.enumerated = lines; return r; }
    auto occs = enumerate_occupations(sys, E, opt);
    const double tie = opt.tie_eps * std::max(1.0, std::abs(E));
    const FrequencySystem* use = &sys;
    FrequencySystem ext = sys;
    if (!occs.empty() && occs.back().counts.size() > static_cast<std::size_t>(sys.count())) {
        ext = sys.extended(static_cast<int>(occs.back().counts.size()));
        use = &ext;
    }
    for (const auto& occ : occs) {
        double e = occ.energy(*use);
        if (!lines.empty() && std::abs(e - lines.back().energy) <= tie)
            ++lines.back().multiplicity;
        else
            lines.push_back({e, 1});
    }
    r.N = occs.size();
    r.enumerated = std::move(lines);
    return r;
}

double window_ratio(const FrequencySystem& sys, double E, double delta, const CountOptions& opt) {
    if (delta < 0.0) fail(ErrorCode::InvalidArgument, "window width must be nonnegative");
    const std::uint64_t n_hi = count_states(sys, E, opt).N;
    if (n_hi == 0) fail(ErrorCode::InvalidArgument, "window ratio undefined for N(E) = 0");
    const std::uint64_t n_lo = count_states(sys, E - delta, opt).N;
    return static_cast<double>(n_hi - n_lo) / static_cast<double>(n_hi);
}

} // namespace kron
