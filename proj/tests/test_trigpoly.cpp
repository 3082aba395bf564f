#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>

#include "kronlab/error.hpp"
#include "kronlab/rng.hpp"
#include "kronlab/trigpoly.hpp"

using namespace kron;

namespace {

std::shared_ptr<const FrequencySystem> integer_system(int n = 8) {
    return std::make_shared<FrequencySystem>(
        FrequencySystem::power_law({1.0, 1.0, MuRule::Zero, 0.0}, n));
}

std::shared_ptr<const FrequencySystem> generic_system(int n = 8) {
    return std::make_shared<FrequencySystem>(
        FrequencySystem::power_law({1.0, 1.5, MuRule::Zero, 0.0}, n));
}

TrigPolynomial random_poly(const std::shared_ptr<const FrequencySystem>& sys, Rng& rng,
                           int terms) {
    TrigPolynomial f(sys);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::pair<int, int>> e;
        for (int m = 0; m < 3; ++m) {
            const int n = static_cast<int>(rng.next_below(5)) - 2;
            if (n) e.emplace_back(m, n);
        }
        const auto idx = FourierIndex::from_pairs(std::move(e));
        f.set(idx, f.coefficient(idx) + rng.next_complex());
    }
    return f;
}

} // namespace

TEST_CASE("bohr mean reads the zero mode") {
    auto sys = generic_system();
    CHECK(TrigPolynomial::constant(sys, 1.0).bohr_mean() == Complex{1.0, 0.0});
    CHECK(TrigPolynomial::mode_exp(sys, 0).bohr_mean() == Complex{0.0, 0.0});
    auto f = TrigPolynomial::constant(sys, 3.0)
                 .add(TrigPolynomial::mode_exp(sys, 0, +1).scale(2.0))
                 .add(TrigPolynomial::mode_exp(sys, 0, -1).scale(2.0));
    CHECK(f.bohr_mean() == Complex{3.0, 0.0});
}

TEST_CASE("multiplication is index convolution") {
    auto sys = generic_system();
    auto e_plus = TrigPolynomial::mode_exp(sys, 0, +1);
    auto e_minus = TrigPolynomial::mode_exp(sys, 0, -1);
    const auto unit = e_plus.multiply(e_minus);
    CHECK(unit.term_count() == 1);
    CHECK(unit.bohr_mean() == Complex{1.0, 0.0});

    const auto one_plus = TrigPolynomial::constant(sys, 1.0).add(e_plus);
    const auto sq = one_plus.multiply(one_plus);
    CHECK(sq.coefficient(FourierIndex{}) == Complex{1.0, 0.0});
    CHECK(sq.coefficient(FourierIndex::single(0, 1)) == Complex{2.0, 0.0});
    CHECK(sq.coefficient(FourierIndex::single(0, 2)) == Complex{1.0, 0.0});
    CHECK(sq.term_count() == 3);
}

TEST_CASE("parseval via term-pair oracle on random polynomials") {
    auto sys = generic_system();
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_poly(sys, rng, 5);
        // oracle: expand bohr_mean(f conj(f)) by matching term pairs directly
        double expected = 0.0;
        for (const auto& [idx, c] : f.terms()) expected += std::norm(c);
        const Complex got = f.multiply(f.conjugate()).bohr_mean();
        CHECK(got.real() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(got.imag()) < 1e-12);
    }
}

TEST_CASE("multiplication is commutative and associative") {
    auto sys = integer_system();
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_poly(sys, rng, 4);
        const auto g = random_poly(sys, rng, 4);
        const auto h = random_poly(sys, rng, 3);
        const auto fg = f.multiply(g), gf = g.multiply(f);
        for (const auto& [idx, c] : fg.terms())
            CHECK(std::abs(gf.coefficient(idx) - c) < 1e-12);
        const auto left = f.multiply(g).multiply(h);
        const auto right = f.multiply(g.multiply(h));
        for (const auto& [idx, c] : left.terms())
            CHECK(std::abs(right.coefficient(idx) - c) < 1e-12);
    }
}

TEST_CASE("kronecker flow phases coefficients") {
    auto sys = generic_system();
    const double w0 = sys->omega(0);
    const auto f = TrigPolynomial::mode_exp(sys, 0);
    const double t = 0.83;
    const auto moved = f.flow(t);
    CHECK(std::abs(moved.coefficient(FourierIndex::single(0, 1)) - std::polar(1.0, w0 * t)) <
          1e-15);
    // flow at t = 0 is the identity
    const auto same = f.flow(0.0);
    CHECK(std::abs(same.coefficient(FourierIndex::single(0, 1)) - 1.0) < 1e-15);
}

TEST_CASE("flow group law and mean invariance") {
    auto sys = generic_system();
    Rng rng(5);
    const auto f = random_poly(sys, rng, 6);
    const double s = 0.37, t = -1.21;
    const auto once = f.flow(s).flow(t);
    const auto direct = f.flow(s + t);
    for (const auto& [idx, c] : once.terms())
        CHECK(std::abs(direct.coefficient(idx) - c) < 1e-12);
    for (double tt : {0.0, 0.5, 2.0, -3.0})
        CHECK(std::abs(f.flow(tt).bohr_mean() - f.bohr_mean()) < 1e-15);
}

TEST_CASE("truncated delta and the frequency projection") {
    auto sys = generic_system();
    const auto d1 = delta_truncated(sys, 1);
    CHECK(d1.term_count() == 2);
    CHECK(d1.coefficient(FourierIndex::single(0, +1)) == Complex{1.0, 0.0});
    CHECK(d1.coefficient(FourierIndex::single(0, -1)) == Complex{1.0, 0.0});
    CHECK(d1.bohr_mean() == Complex{0.0, 0.0});

    // convolution against the delta keeps exactly the single-mode terms:
    // mean_y delta(x-y) f(y) has coefficient f_eta at eta iff eta is in the
    // delta's support
    const auto dK = delta_truncated(sys, 3);
    Rng rng(7);
    auto f = random_poly(sys, rng, 6);
    f.set(FourierIndex::single(1, +1), {0.25, -0.5}); // guarantee an in-set term
    TrigPolynomial projected(sys);
    for (const auto& [idx, c] : dK.terms()) projected.set(idx, c * f.coefficient(idx));
    for (const auto& [idx, c] : f.terms()) {
        const bool single_mode = idx.entries().size() == 1 && std::abs(idx.entries()[0].second) == 1;
        const Complex expect = single_mode && idx.max_mode() < 3 ? c : Complex{0.0, 0.0};
        CHECK(std::abs(projected.coefficient(idx) - expect) < 1e-15);
    }
    CHECK_THROWS_AS(delta_truncated(sys, 0), Error);
    CHECK_THROWS_AS(delta_truncated(sys, sys->count() + 1), Error);
}

TEST_CASE("evaluation") {
    auto sys = generic_system();
    CHECK(TrigPolynomial::constant(sys, 1.0).evaluate(1.7) == Complex{1.0, 0.0});
    CHECK(TrigPolynomial::mode_exp(sys, 0).evaluate(0.0) == Complex{1.0, 0.0});
    Rng rng(13);
    const auto f = random_poly(sys, rng, 6);
    for (double x : {0.0, 0.5, 3.1, -7.7})
        CHECK(std::abs(f.evaluate(x)) <= f.coeff_abs_sum() + 1e-12);
}

TEST_CASE("hermitian polynomials evaluate to real values") {
    auto sys = generic_system();
    Rng rng(17);
    auto f = random_poly(sys, rng, 5);
    auto sym = f.add(f.conjugate());
    CHECK(sym.is_hermitian());
    for (double x : {0.2, 1.0, -2.5})
        CHECK(std::abs(sym.evaluate(x).imag()) <= 1e-12 * sym.coeff_abs_sum());
    CHECK_FALSE(TrigPolynomial::mode_exp(sys, 0).is_hermitian());
}

TEST_CASE("system mismatch is rejected") {
    auto a = generic_system();
    auto b = generic_system();
    const auto f = TrigPolynomial::constant(a, 1.0);
    const auto g = TrigPolynomial::constant(b, 1.0);
    CHECK_THROWS_AS(f.multiply(g), Error);
    CHECK_THROWS_AS(f.add(g), Error);
}

TEST_CASE("json round trip") {
    auto sys = generic_system();
    Rng rng(23);
    const auto f = random_poly(sys, rng, 6);
    const auto back = TrigPolynomial::from_json(sys, f.to_json());
    CHECK(back.term_count() == f.term_count());
    for (const auto& [idx, c] : f.terms()) CHECK(std::abs(back.coefficient(idx) - c) < 1e-15);
}

TEST_CASE("prune keeps supports finite") {
    auto sys = generic_system();
    auto f = TrigPolynomial::mode_exp(sys, 0).scale(1e-20);
    CHECK(f.term_count() == 0);
}
