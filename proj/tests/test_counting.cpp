#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>

#include "kronlab/counting.hpp"
#include "kronlab/error.hpp"
#include "kronlab/saddle.hpp"

#include "oracles.hpp"

using namespace kron;

namespace {

FrequencySystem integers(int n) {
    return FrequencySystem::power_law({1.0, 1.0, MuRule::Zero, 0.0}, n);
}

} // namespace

TEST_CASE("single mode counting") {
    const auto sys = FrequencySystem::explicit_list({2.0});
    CHECK(count_states(sys, 7.0).N == 4); // E = 3.5 w: occupancies 0..3
    CHECK(count_states(sys, -1.0).N == 0);
    CHECK(count_states(sys, 0.0).N == 1);
    const auto spec = spectrum_up_to(sys, 4.0);
    REQUIRE(spec.enumerated.has_value());
    REQUIRE(spec.enumerated->size() == 3);
    CHECK((*spec.enumerated)[0].energy == doctest::Approx(0.0));
    CHECK((*spec.enumerated)[1].energy == doctest::Approx(2.0));
    CHECK((*spec.enumerated)[2].energy == doctest::Approx(4.0));
    for (const auto& line : *spec.enumerated) CHECK(line.multiplicity == 1);
}

TEST_CASE("integer system matches the partition oracle") {
    const auto sys = integers(45);
    CHECK(count_states(sys, 5.0).N == 19);
    for (int e = 0; e <= 40; ++e)
        CHECK(count_states(sys, static_cast<double>(e)).N == oracles::cumulative_partitions(e));
}

TEST_CASE("negative energy has no states") {
    for (const auto& sys : {integers(8), FrequencySystem::prime_log(8)})
        CHECK(count_states(sys, -1.0).N == 0);
}

TEST_CASE("two mode spectrum by hand") {
    const auto sys = FrequencySystem::explicit_list({1.0, 2.0});
    const auto spec = spectrum_up_to(sys, 2.0);
    REQUIRE(spec.enumerated.has_value());
    const auto& lines = *spec.enumerated;
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].energy == doctest::Approx(0.0));
    CHECK(lines[0].multiplicity == 1);
    CHECK(lines[1].energy == doctest::Approx(1.0));
    CHECK(lines[1].multiplicity == 1);
    CHECK(lines[2].energy == doctest::Approx(2.0));
    CHECK(lines[2].multiplicity == 2); // 2 = omega_2 and 1+1
    CHECK(spec.N == 4);
}

TEST_CASE("generic power law spectra have no ties") {
    // alpha = 1.5 has exact ties (4^{3/2} = 8 = 8 omega_1); a non-rational
    // exponent gives the generic unique-representation picture
    const auto sys = FrequencySystem::power_law({1.0, 1.51, MuRule::Zero, 0.0}, 16);
    const auto spec = spectrum_up_to(sys, 12.0);
    REQUIRE(spec.enumerated.has_value());
    for (const auto& line : *spec.enumerated) CHECK(line.multiplicity == 1);
}

TEST_CASE("rational power law energies do tie") {
    const auto sys = FrequencySystem::power_law({1.0, 1.5, MuRule::Zero, 0.0}, 16);
    const auto spec = spectrum_up_to(sys, 9.0);
    bool found_tie = false;
    for (const auto& line : *spec.enumerated)
        if (line.multiplicity > 1) found_tie = true;
    CHECK(found_tie); // omega_4 = 8 = 8 omega_1
}

TEST_CASE("count is nondecreasing and consistent with enumeration") {
    const auto sys = FrequencySystem::power_law({1.0, 1.5, MuRule::Zero, 0.0}, 16);
    std::uint64_t prev = 0;
    for (double e : {0.0, 2.0, 5.0, 9.0, 14.0, 20.0}) {
        const auto r = count_states(sys, e);
        CHECK(r.N >= prev);
        prev = r.N;
        const auto spec = spectrum_up_to(sys, e);
        std::uint64_t total = 0;
        for (const auto& line : *spec.enumerated) total += line.multiplicity;
        CHECK(total == r.N);
    }
}

TEST_CASE("partitioned search is independent of thread count") {
    const auto sys = integers(40);
    CountOptions serial;
    serial.threads = 1;
    CountOptions wide;
    wide.threads = 7;
    for (double e : {10.0, 25.0, 33.0})
        CHECK(count_states(sys, e, serial).N == count_states(sys, e, wide).N);
}

TEST_CASE("window ratio edges") {
    const auto sys = integers(24);
    CHECK(window_ratio(sys, 12.0, 0.0) == doctest::Approx(0.0));
    CHECK(window_ratio(sys, 12.0, 20.0) == doctest::Approx(1.0)); // empty lower window
    CHECK_THROWS_AS(window_ratio(sys, 12.0, -1.0), Error);
}

TEST_CASE("window ratio decreases along an energy grid") {
    const auto sys = FrequencySystem::power_law({1.0, 1.5, MuRule::Zero, 0.0}, 24);
    double prev = 1.0;
    for (double e : {10.0, 20.0, 30.0, 40.0}) {
        const double r = window_ratio(sys, e, 1.0);
        CHECK(r <= prev);
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
        prev = r;
    }
}

TEST_CASE("explicit lists are complete frequency sets") {
    const auto sys = FrequencySystem::explicit_list({1.0, 2.0});
    // n1 + 2 n2 <= 3: (0,0) (1,0) (2,0) (3,0) (0,1) (1,1)
    CHECK(count_states(sys, 3.0).N == 6);
    // n1 + 2 n2 <= 5
    CHECK(count_states(sys, 5.0).N == 12);
}

TEST_CASE("cap aborts the search") {
    const auto sys = integers(64);
    CountOptions opt;
    opt.cap = 100;
    CHECK_THROWS_AS(count_states(sys, 30.0, opt), Error);
}

TEST_CASE("prime log counting stays exact at small energies") {
    const auto sys = FrequencySystem::prime_log(16);
    // by hand: energies 0, log2, log3, 2log2, log5, log2+log3, ... <= log(6):
    // lattice points are logs of the integers 1..6 (unique factorization)
    CHECK(count_states(sys, std::log(6.0)).N == 6);
    CHECK(count_states(sys, std::log(30.0)).N == 30);
}

TEST_CASE("laplace transform of the spectral measure matches e^phi") {
    // cross check against the zeta-product side: e^{phi(s)} equals the
    // truncated spectral sum plus a tail below 1e-10 at this E
    const auto sys = FrequencySystem::power_law({1.0, 1.5, MuRule::Zero, 0.0}, 24);
    const double s = 1.0, s0 = 0.5, E = 56.0;
    PhiEvaluator eval(sys);
    const double tail_bound = std::exp(-(s - s0) * E + eval.phi(s0).phi);
    REQUIRE(tail_bound < 1e-10);
    const auto spec = spectrum_up_to(sys, E);
    double lhs = 0.0;
    for (const auto& line : *spec.enumerated)
        lhs += static_cast<double>(line.multiplicity) * std::exp(-s * line.energy);
    const double rhs = std::exp(eval.phi(s).phi);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * rhs);
}
