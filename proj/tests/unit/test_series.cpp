#include "helpers.hpp"

#include "qbfs/sampling.hpp"
#include "qbfs/series.hpp"

#include <doctest.h>

#include <cmath>

using namespace qbfs;
using namespace qbfs::test;

TEST_SUITE("series") {
  TEST_CASE("two unit terms under C = 2") {
    const auto w = tightness_witness();
    const auto report = prefix_sum_inequality_check(w, lebesgue(0.5));
    CHECK(report.passed);
    CHECK(report.rhs.back() == doctest::Approx(6.0));
    CHECK(report.lhs.back() == doctest::Approx(4.0));
    const std::vector<StepFunction> single{running_example()};
    CHECK(prefix_sum_inequality_check(single, lebesgue(0.5)).passed);
  }

  TEST_CASE("random five-term sums") {
    Sampler rng(89);
    for (const auto& sel : {"lp:p=0.5", "lp:p=0.25", "lorentz:p=2,q=0.5", "lp:p=2"}) {
      const auto X = parse_norm(sel);
      for (int i = 0; i < 20; ++i) {
        std::vector<StepFunction> terms;
        for (int k = 0; k < 5; ++k) terms.push_back(rng.step_function({}));
        CHECK(prefix_sum_inequality_check(terms, X).passed);
      }
    }
  }

  TEST_CASE("geometric series sums to a third") {
    const auto X = lebesgue(0.5);
    const auto gen = geometric_generator(q(1, 4), StepFunction::indicator(iv(q(0), q(1))), X);
    REQUIRE(gen.limit.has_value());
    CHECK(equal_ae(*gen.limit, StepFunction::constant(iv(q(0), q(1)), ComplexRational(q(1, 3)))));
    const auto cert = riesz_fischer_sum(gen, X, 20);
    CHECK(cert.passed());
    for (int M = 0; M <= 20; ++M) {
      // ‖f − s_M‖_{1/2} = 4^{-M-1}/3.
      CHECK(cert.remainder_norms[M] == doctest::Approx(std::pow(4.0, -M - 1) / 3.0).epsilon(1e-12));
      CHECK(cert.remainder_norms[M] <= cert.tail_bounds[M]);
    }
    CHECK(equal_ae(*gen.limit - cert.partial_sums.back(), gen.remainder(20)));
  }

  TEST_CASE("geometric ratio too large is refused") {
    CHECK_THROWS_AS(geometric_generator(q(1, 2), StepFunction::indicator(iv(q(0), q(1))), lebesgue(0.5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(disjoint_generator(lebesgue(0.5)), std::invalid_argument);
    CHECK_THROWS_AS(parse_generator("geometric:rate=1", lebesgue(1.0)), std::invalid_argument);
  }

  TEST_CASE("single term series") {
    const auto gen = single_term_generator(running_example());
    const auto cert = riesz_fischer_sum(gen, lebesgue(0.5), 5);
    CHECK(cert.passed());
    for (double r : cert.remainder_norms) CHECK(r == 0.0);
  }

  TEST_CASE("disjoint supports under L^1") {
    const auto X = lebesgue(1.0);
    const auto cert = riesz_fischer_sum(disjoint_generator(X), X, 20);
    CHECK(cert.passed());
    for (int M = 0; M <= 20; ++M) {
      REQUIRE(cert.exact_remainders[M].has_value());
      CHECK(*cert.exact_remainders[M] == pow2(-M));
    }
    // Pointwise sum on (n, n+1) is 2^{-n}.
    const auto& s = cert.partial_sums.back();
    for (int n = 0; n <= 20; ++n) CHECK(s.value_at(std::vector<Rational>{q(2 * n + 1, 2)}) == ComplexRational(pow2(-n)));
  }

  TEST_CASE("Cauchy subsequence extraction") {
    const auto X = lebesgue(0.5);
    const auto cert = riesz_fischer_sum(geometric_generator(q(1, 8), StepFunction::indicator(iv(q(0), q(1))), X), X, 24);
    const auto ex = extract_cauchy_subsequence(cert.partial_sums, X, 6);
    CHECK(ex.verified);
    REQUIRE(ex.indices.size() == 6);
    for (std::size_t n = 0; n + 1 < ex.indices.size(); ++n) {
      CHECK(ex.indices[n] < ex.indices[n + 1]);
      CHECK(ex.gaps[n] <= std::pow(4.0, -static_cast<double>(n) - 2.0));
    }
  }

  TEST_CASE("Fatou checks") {
    const auto f = running_example();
    const auto X = lebesgue(0.5);
    const auto mono = fatou_checks(truncation_family(f, 4), f, X);
    CHECK(mono.monotone_family);
    CHECK(mono.passed());
    CHECK(mono.norms.back() == doctest::Approx(X(f)));
    const std::vector<StepFunction> constant(5, f);
    const auto same = fatou_checks(constant, f, X);
    CHECK(same.passed());
    CHECK(same.liminf == doctest::Approx(X(f)));
    const auto bump = fatou_checks(sliding_bump_family(10), StepFunction(1), lebesgue(1.0));
    CHECK(bump.passed());
    CHECK_FALSE(bump.monotone_family);
    CHECK(bump.limit_norm == 0.0);
    CHECK(bump.liminf == 1.0);
  }

  TEST_CASE("spikes have unit norm and the required mass") {
    const Rational C(2);
    const auto X = lebesgue(0.5);
    for (int n = 0; n <= 10; ++n) {
      const auto g = spike(n, C);
      CHECK(X(g) == doctest::Approx(1.0).epsilon(1e-12));
      Rational rate(1);
      for (int i = 0; i <= n; ++i) rate *= 4;
      CHECK(integrate_abs(g) == (n + 1) * rate);
      CHECK(integrate_abs(g) > n * rate);
    }
  }

  TEST_CASE("resonance witness on spikes") {
    const auto X = lebesgue(0.5);
    const Rational C(X.modulus);
    const Functional integral = [](const StepFunction& g) { return integrate_abs(g); };
    const auto w = resonance_witness([&](int n) { return spike(n, C); }, integral, X, 10);
    CHECK(w.passed());
    CHECK(w.norm_bound <= 1.0 + 1e-12);
    for (int k = 0; k <= 10; ++k) CHECK(w.lower_bounds[k] == Rational(k + 1));
    // ∫f over the prefix is Σ (n+1).
    CHECK(w.phi_f == Rational(66));
    const auto f0 = StepFunction::indicator(iv(q(0), q(1)));
    const Functional pairing = [f0](const StepFunction& g) { return integrate_abs_product(f0, g); };
    CHECK(resonance_witness([&](int n) { return spike(n, C); }, pairing, X, 10).passed());
  }

  TEST_CASE("resonance refuses a constant sequence") {
    const auto X = lebesgue(0.5);
    const Functional integral = [](const StepFunction& g) { return integrate_abs(g); };
    CHECK_THROWS_AS(resonance_witness([](int) { return spike(0, Rational(2)); }, integral, X, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(resonance_witness([](int) { return StepFunction::constant(iv(q(0), q(1)), ComplexRational(4)); },
                                      integral, X, 3),
                    std::invalid_argument);
  }
}
