#ifndef KRONLAB_COUNTING_HPP
#define KRONLAB_COUNTING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "kronlab/frequencies.hpp"

namespace kron {

// An occupation is a finitely supported assignment mode -> nonnegative
// integer; its energy is sum n_omega * omega. Occupations with energy <= E
// are exactly the lattice points of N[Omega_+] in [0, E].
struct Occupation {
    std::vector<std::uint16_t> counts; // dense over modes 0..K-1, trailing zeros allowed

    double energy(const FrequencySystem& sys) const {
        double e = 0.0;
        for (std::size_t i = 0; i < counts.size(); ++i)
            e += static_cast<double>(counts[i]) * sys.omega(static_cast<int>(i));
        return e;
    }
    int total() const {
        int t = 0;
        for (auto c : counts) t += c;
        return t;
    }
    bool operator==(const Occupation& o) const { return counts == o.counts; }
    bool operator<(const Occupation& o) const { return counts < o.counts; }
};

struct SpectrumLine {
    double energy;
    std::uint64_t multiplicity;
};

struct CountResult {
    double E = 0.0;
    std::uint64_t N = 0;
    std::optional<std::vector<SpectrumLine>> enumerated;
};

struct CountOptions {
    std::uint64_t cap = 100'000'000; // abort when N would exceed this
    // Inclusion slack for the boundary energy <= E; scaled by max(1,|E|).
    double boundary_eps = 1e-9;
    // Multiplicity tie tolerance; scaled by max(1,|E|).
    double tie_eps = 1e-12;
    int threads = 0; // 0: use KRONLAB_THREADS environment cap or hardware
};

// Number of occupations with energy <= E (vacuum included, so N >= 1 for
// E >= 0; N = 0 for E < 0). Depth-first over modes in decreasing omega with
// budget pruning. Generator-backed prefixes are extended until the last
// frequency exceeds E; explicit lists are taken as the whole frequency set.
// Prime-log systems count ideals: N(E) ~ e^E, so the cap hits quickly beyond
// small E.
CountResult count_states(const FrequencySystem& sys, double E, const CountOptions& opt = {});

// As count_states but retains the sorted (energy, multiplicity) list.
CountResult spectrum_up_to(const FrequencySystem& sys, double E, const CountOptions& opt = {});

// All occupations with energy <= E in canonical order: ascending energy,
// ties broken lexicographically by occupancy vector. Vacuum first.
std::vector<Occupation> enumerate_occupations(const FrequencySystem& sys, double E,
                                              const CountOptions& opt = {});

// (N(E) - N(E - delta)) / N(E), in [0, 1].
double window_ratio(const FrequencySystem& sys, double E, double delta,
                    const CountOptions& opt = {});

} // namespace kron

#endif
