#include "helpers.hpp"

#include "qbfs/quasinorm.hpp"
#include "qbfs/rearrangement.hpp"
#include "qbfs/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace qbfs;
using namespace qbfs::test;

namespace {

// ‖f‖_{p,q}^q = (p/q) Σ_j μ_j^{q/p} (v_j^q − v_{j+1}^q), from the distribution-function form.
double lorentz_via_distribution(const StepFunction& f, double p, double q) {
  const auto mu = distribution_function(f);
  const auto& levels = mu.levels();
  double total = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const double v = to_double(levels[j]);
    const double next = j + 1 < levels.size() ? to_double(levels[j + 1]) : 0.0;
    // μ is constant on [next, v) and equals the measure where |f| ≥ v.
    const double m = to_double(mu(Rational((levels[j] + (j + 1 < levels.size() ? levels[j + 1] : Rational(0))) / 2)));
    total += std::pow(m, q / p) * (std::pow(v, q) - std::pow(next, q));
  }
  return std::pow(p / q * total, 1.0 / q);
}

double lp_direct(const StepFunction& f, double p) {
  double s = 0.0;
  for (const auto& piece : f.pieces()) s += std::pow(piece.value.modulus_double(), p) * to_double(piece.region.measure());
  return std::pow(s, 1.0 / p);
}

}  // namespace

TEST_SUITE("quasinorm") {
  TEST_CASE("Lebesgue examples") {
    const auto X = lebesgue(0.5);
    CHECK(X(StepFunction::indicator(iv(q(0), q(1)))) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(X(running_example()) == doctest::Approx(13.928203230275509).epsilon(1e-14));
    CHECK(X(StepFunction(1)) == 0.0);
    CHECK(lebesgue(1.0)(running_example()) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(supremum()(running_example()) == 3.0);
  }

  TEST_CASE("Lorentz examples") {
    const auto X = lorentz(2.0, 0.5);
    CHECK(X(StepFunction::indicator(iv(q(3), q(4)))) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(X(StepFunction(1)) == 0.0);
    CHECK(X.modulus == doctest::Approx(2.0).epsilon(1e-15));
    // L^{p,p} = L^p.
    Sampler rng(2);
    for (int i = 0; i < 20; ++i) {
      const auto f = rng.step_function({});
      CHECK(lorentz(2.0, 2.0)(f) == doctest::Approx(lp_direct(f, 2.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("Lorentz norm agrees with the distribution-function formula") {
    Sampler rng(29);
    SampleOptions opt;
    opt.complex_values = false;
    for (const auto& [p, qq] : std::vector<std::pair<double, double>>{{2.0, 0.5}, {0.5, 1.0}, {3.0, 2.0}, {1.0, 4.0}}) {
      const auto X = lorentz(p, qq);
      for (int i = 0; i < 30; ++i) {
        const auto f = rng.step_function(opt);
        CHECK(X(f) == doctest::Approx(lorentz_via_distribution(f, p, qq)).epsilon(1e-11));
      }
    }
  }

  TEST_CASE("Lebesgue norm agrees with direct summation") {
    Sampler rng(31);
    SampleOptions opt;
    opt.dimension = 2;
    for (double p : {0.25, 0.5, 1.0, 2.0}) {
      const auto X = lebesgue(p);
      for (int i = 0; i < 20; ++i) {
        const auto f = rng.step_function(opt);
        CHECK(X(f) == doctest::Approx(lp_direct(f, p)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("moduli and Aoki-Rolewicz exponents") {
    CHECK(lp_modulus(2.0) == 1.0);
    CHECK(lp_modulus(0.5) == doctest::Approx(2.0));
    CHECK(lp_modulus(0.25) == doctest::Approx(8.0));
    CHECK(aoki_rolewicz_exponent(1.0) == doctest::Approx(1.0));
    CHECK(aoki_rolewicz_exponent(2.0) == doctest::Approx(0.5));
    for (double p : {0.25, 0.5, 0.75}) CHECK(aoki_rolewicz_exponent(lp_modulus(p)) == doctest::Approx(p));
    CHECK_THROWS_AS(aoki_rolewicz_exponent(0.5), std::invalid_argument);
  }

  TEST_CASE("norm selectors") {
    CHECK(parse_norm("lp:p=0.5").modulus == doctest::Approx(2.0));
    CHECK(parse_norm("lorentz:p=2,q=0.5").family == "lorentz");
    CHECK(parse_norm("lorentz:p=2,q=0.5,C=4").modulus == 4.0);
    CHECK(parse_norm("linf").family == "linf");
    CHECK_THROWS_AS(parse_norm("banach:p=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_norm("lp:r=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_norm("lp:p=-1"), std::invalid_argument);
  }

  TEST_CASE("axioms hold on random samples") {
    const auto samples = sample_set(7, 40);
    for (const auto& sel : {"lp:p=0.25", "lp:p=0.5", "lp:p=1", "lp:p=2", "lorentz:p=2,q=0.5", "linf"}) {
      const auto X = parse_norm(sel);
      const auto report = check_quasinorm_axioms(X, samples);
      INFO(sel);
      for (const auto& c : report.checks) {
        INFO(c.id << " " << c.witness);
        CHECK(c.passed);
      }
      CHECK(report.empirical_modulus <= X.modulus * (1.0 + 1e-12));
    }
  }

  TEST_CASE("disjoint equal-norm pair attains 2^{1/p-1}") {
    const auto w = tightness_witness();
    for (double p : {0.25, 0.5}) {
      const auto X = lebesgue(p);
      CHECK(X(w[0] + w[1]) / (X(w[0]) + X(w[1])) == doctest::Approx(std::pow(2.0, 1.0 / p - 1.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("r-subadditivity with the Aoki-Rolewicz exponent") {
    const auto samples = sample_set(13, 64);
    for (const auto& sel : {"lp:p=0.5", "lorentz:p=2,q=0.5"}) {
      const auto report = check_r_subadditivity(parse_norm(sel), samples, 4, 4.0);
      CHECK(report.passed);
    }
  }

  TEST_CASE("tail threshold meets its contract") {
    Sampler rng(37);
    for (const auto& sel : {"lp:p=0.5", "lorentz:p=2,q=0.5"}) {
      const auto X = parse_norm(sel);
      for (int i = 0; i < 10; ++i) {
        const auto f = rng.step_function({});
        const double eps = 1e-3;
        const Rational N = X.tail_threshold(f, eps);
        const Box window(std::vector<Interval>(1, Interval{-N, N}));
        CHECK(X(restrict_level(f, N, true)) < eps);
        CHECK(X(restrict_complement(f, std::span<const Box>(&window, 1))) < eps);
      }
    }
  }
}
