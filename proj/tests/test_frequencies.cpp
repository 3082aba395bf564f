#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kronlab/error.hpp"
#include "kronlab/frequencies.hpp"

using namespace kron;

TEST_CASE("prime log prefix") {
    const auto sys = FrequencySystem::prime_log(4);
    REQUIRE(sys.count() == 4);
    CHECK(sys.omega(0) == doctest::Approx(0.693147).epsilon(1e-6));
    CHECK(sys.omega(1) == doctest::Approx(1.098612).epsilon(1e-6));
    CHECK(sys.omega(2) == doctest::Approx(1.609438).epsilon(1e-6));
    CHECK(sys.omega(3) == doctest::Approx(1.945910).epsilon(1e-6));
}

TEST_CASE("dispersion prefix and exact mass relation") {
    const double m = 3.14159265358979323846;
    const auto sys = FrequencySystem::dispersion(m, 3);
    CHECK(sys.omega(0) == doctest::Approx(std::sqrt(1 + m * m)).epsilon(1e-14));
    CHECK(sys.omega(1) == doctest::Approx(std::sqrt(4 + m * m)).epsilon(1e-14));
    CHECK(sys.omega(2) == doctest::Approx(std::sqrt(9 + m * m)).epsilon(1e-14));
    const auto longer = FrequencySystem::dispersion(m, 64);
    for (int n = 0; n < longer.count(); ++n) {
        const double w = longer.omega(n);
        CHECK(w * w - (n + 1.0) * (n + 1.0) == doctest::Approx(m * m).epsilon(1e-12));
    }
}

TEST_CASE("power law with zero perturbation is the integer system") {
    const auto sys = FrequencySystem::power_law({1.0, 1.0, MuRule::Zero, 0.0}, 5);
    for (int n = 0; n < 5; ++n) CHECK(sys.omega(n) == doctest::Approx(n + 1.0));
}

TEST_CASE("prefix stability under extension") {
    for (const auto& sys :
         {FrequencySystem::prime_log(8), FrequencySystem::dispersion(2.5, 8),
          FrequencySystem::power_law({0.7, 1.5, MuRule::InverseN, 0.3}, 8)}) {
        const auto longer = sys.extended(21);
        REQUIRE(longer.count() >= 21);
        for (int i = 0; i < sys.count(); ++i) CHECK(longer.omega(i) == sys.omega(i));
    }
}

TEST_CASE("axiom report on good and bad lists") {
    const auto good = check_axioms({1.0, 2.0, 3.0});
    CHECK(good.positivity);
    CHECK(good.strictly_increasing);
    CHECK(good.independence == "not-checkable");
    CHECK(good.testable_pass());

    const auto dup = check_axioms({1.0, 1.0, 2.0});
    CHECK(dup.positivity);
    CHECK_FALSE(dup.strictly_increasing);
    CHECK_FALSE(dup.testable_pass());

    const auto neg = check_axioms({-1.0, 2.0});
    CHECK_FALSE(neg.positivity);
}

TEST_CASE("member axiom report matches the free function") {
    const auto sys = FrequencySystem::power_law({1.0, 2.0, MuRule::Zero, 0.0}, 6);
    const auto r = sys.check_axioms();
    CHECK(r.testable_pass());
    CHECK(r.divergent_on_prefix);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(FrequencySystem::prime_log(0), Error);
    CHECK_THROWS_AS(FrequencySystem::dispersion(-1.0, 3), Error);
    CHECK_THROWS_AS(FrequencySystem::power_law({1.0, 0.5, MuRule::Zero, 0.0}, 3), Error);
    CHECK_THROWS_AS(FrequencySystem::power_law({-1.0, 1.0, MuRule::Zero, 0.0}, 3), Error);
    // c = -2 makes 1 + mu_1 negative: rejected by the positivity invariant
    CHECK_THROWS_AS(FrequencySystem::power_law({1.0, 1.0, MuRule::InverseN, -2.0}, 3), Error);
    CHECK_THROWS_AS(FrequencySystem::explicit_list({1.0, 1.0}), Error);
    CHECK_THROWS_AS(FrequencySystem::explicit_list({2.0, 1.0}), Error);
    CHECK_THROWS_AS(FrequencySystem::explicit_list({}), Error);
}

TEST_CASE("explicit lists cannot extend") {
    const auto sys = FrequencySystem::explicit_list({1.0, 4.0});
    CHECK_THROWS_AS(sys.extended(5), Error);
    CHECK_THROWS_AS(sys.modes_below(10.0), Error);
    CHECK(sys.modes_below(3.0) == 1);
}

TEST_CASE("json round trip") {
    for (const auto& sys :
         {FrequencySystem::prime_log(5), FrequencySystem::dispersion(1.5, 5),
          FrequencySystem::power_law({2.0, 1.25, MuRule::InverseLogN, 0.1}, 5),
          FrequencySystem::explicit_list({0.5, 1.25, 9.0})}) {
        const auto back = FrequencySystem::from_json(sys.to_json());
        REQUIRE(back.count() == sys.count());
        CHECK(back.kind() == sys.kind());
        for (int i = 0; i < sys.count(); ++i) CHECK(back.omega(i) == sys.omega(i));
    }
}

TEST_CASE("descriptor round trip") {
    const auto sys = FrequencySystem::parse_descriptor("powerlaw:A=2,alpha=1.5,mu=inverse_n,c=0.25", 6);
    CHECK(sys.kind() == SystemKind::PowerLaw);
    CHECK(sys.omega(0) == doctest::Approx(2.0 * 1.25));
    const auto again = FrequencySystem::parse_descriptor(sys.descriptor(), 6);
    for (int i = 0; i < 6; ++i) CHECK(again.omega(i) == sys.omega(i));
    CHECK_THROWS_AS(FrequencySystem::parse_descriptor("fourier:x=1", 4), Error);
}

TEST_CASE("modes below a bound extends generator systems") {
    const auto sys = FrequencySystem::power_law({1.0, 1.0, MuRule::Zero, 0.0}, 4);
    CHECK(sys.modes_below(10.5) == 10);
    CHECK(sys.modes_below(0.5) == 0);
}
