#ifndef KRONLAB_RNG_HPP
#define KRONLAB_RNG_HPP

#include <complex>
#include <cstdint>

namespace kron {

// splitmix64; self-contained so that seeded streams are identical on every
// platform (std:: distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [lo,hi)
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // uniform integer in [0,n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    std::complex<double> next_complex() {
        return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    }

private:
    std::uint64_t state_;
};

} // namespace kron

#endif
