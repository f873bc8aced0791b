#include "helpers.hpp"

#include "qbfs/dilation.hpp"
#include "qbfs/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace qbfs;
using namespace qbfs::test;

namespace {

// λ(G_parity ∩ (0, x)) by summing blocks one at a time down to 2^{-200}; the
// remainder below is at most 2^{-200}.
Rational block_sum(const Rational& x, int parity) {
  Rational total(0);
  for (int m = -8; m < 200; ++m) {
    if (((m % 2) != 0) != (parity == 1)) continue;
    const Rational lo = pow2(-m - 1);
    const Rational hi = std::min(pow2(-m), x);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

}  // namespace

TEST_SUITE("dilation") {
  TEST_CASE("dilation example") {
    const auto d = dilate(running_example(), q(2));
    CHECK(equal_ae(d, step({{q(0), q(1, 2), q(3)}, {q(1, 2), q(3, 2), q(1)}})));
    const auto profile = nonincreasing_rearrangement(running_example());
    CHECK(dilate_profile(profile, q(2)) == nonincreasing_rearrangement(d));
  }

  TEST_CASE("shift map examples") {
    CHECK(shift_map(q(3, 8)) == q(5, 24));
    CHECK(lacunary_block(q(3, 8)) == 1);
    CHECK(lacunary_block(q(1, 2)) == 1);
    CHECK(lacunary_block(q(1)) == 0);
    CHECK(lacunary_mass_below(q(1), 1) == q(1, 3));
    CHECK(lacunary_mass_below(q(1), 2) == q(2, 3));
  }

  TEST_CASE("lacunary mass agrees with block summation") {
    Sampler rng(53);
    const Rational slack = pow2(-199);
    for (int i = 0; i < 200; ++i) {
      const Rational x = ratio(rng.integer(1, 4095), 1024);
      for (int parity : {1, 2}) {
        const Rational exact = lacunary_mass_below(x, parity);
        const Rational brute = block_sum(x, parity);
        CHECK(exact >= brute);
        CHECK(exact - brute <= slack);
      }
      const int m = lacunary_block(x);
      CHECK(shift_map(x) == lacunary_mass_below(x, (m % 2 != 0) ? 1 : 2));
    }
  }

  TEST_CASE("lacunary restriction of an indicator") {
    const auto g = nonincreasing_rearrangement(StepFunction::indicator(iv(q(0), q(1))));
    for (int parity : {1, 2}) {
      const auto r = lacunary_restrict(g, parity).rearrangement();
      CHECK(r.support_measure() == lacunary_mass_below(q(1), parity));
    }
    std::vector<Rational> points;
    for (int j = 1; j < 64; ++j) points.push_back(q(j, 64));
    const auto report = lacunary_inequality_check(g, points, points);
    CHECK(report.passed);
    CHECK(report.worst_margin >= 0);
    CHECK(lacunary_inequality_check(RearrangementProfile(), points).passed);
  }

  TEST_CASE("lacunary inequality on random profiles") {
    Sampler rng(59);
    for (int i = 0; i < 50; ++i) {
      const auto g = rng.profile();
      std::vector<Rational> points;
      for (int j = 0; j < 200; ++j) points.push_back(ratio(rng.integer(1, 1 << 14), 1 << 12));
      const auto report = lacunary_inequality_check(g, points, points);
      INFO(report.counterexample);
      CHECK(report.passed);
    }
  }

  TEST_CASE("splitting operator preserves the lacunary profile") {
    const auto f = running_example();
    for (int parity : {1, 2}) {
      const auto s = splitting_operator(f, 1, parity);
      const auto direct = lacunary_restrict(nonincreasing_rearrangement(f), parity).rearrangement();
      CHECK(s.rearrangement() == direct);
      CHECK(splitting_operator(f, 2, parity).rearrangement() == direct);
    }
    CHECK(splitting_operator(StepFunction(1), 1, 1).rearrangement().is_zero());
  }

  TEST_CASE("dilation bound values") {
    CHECK(dilation_bound(1, 2.0, 0.5) == doctest::Approx(42.784685562260975).epsilon(1e-12));
    // At a = b the bound is 2C·2C.
    CHECK(dilation_bound(1, 2.0, 2.0 / 3.0) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(dilation_bound(1, 2.0, 1.0) == 1.0);
    CHECK(dilation_bound(3, 1.0, 4.0) == 1.0);
    CHECK_THROWS_AS(dilation_bound(1, 2.0, 0.0), std::invalid_argument);
  }

  TEST_CASE("expanding dilations never increase r.i. norms") {
    const auto samples = sample_set(61, 40);
    for (const auto& sel : {"lp:p=0.5", "lorentz:p=2,q=0.5", "linf"}) {
      const auto X = parse_norm(sel);
      for (const auto& a : {q(1), q(3, 2), q(4)}) CHECK(empirical_dilation_ratio(X, a, samples).ratio <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("Lebesgue dilation closed form") {
    const auto samples = sample_set(67, 30);
    for (double p : {0.25, 0.5, 1.0, 2.0}) {
      const auto X = lebesgue(p);
      for (const auto& f : samples) {
        const double expected = std::pow(0.3, -1.0 / p) * X(f);
        CHECK(X(dilate(f, q(3, 10))) == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("sweep over a grid") {
    const auto samples = sample_set(71, 50);
    const auto sweep = dilation_sweep(lorentz(2.0, 0.5), 1, parse_grid("0.1:1.0:0.1"), samples);
    CHECK(sweep.rows.size() == 10);
    CHECK(sweep.passed());
    CHECK(parse_grid("0.5,0.25").size() == 2);
    CHECK_THROWS_AS(parse_grid("1:0:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0,1"), std::invalid_argument);
  }
}
