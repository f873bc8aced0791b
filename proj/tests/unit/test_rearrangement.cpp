#include "helpers.hpp"

#include "qbfs/rearrangement.hpp"
#include "qbfs/sampling.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qbfs;
using namespace qbfs::test;

namespace {

// μ_f(s) by summing the measures of pieces with |v|² > s².
Rational brute_distribution(const StepFunction& f, const Rational& s) {
  Rational total(0);
  for (const auto& p : f.pieces()) {
    if (p.value.norm2() > s * s) total += p.region.measure();
  }
  return total;
}

// f*(t) = inf{s ≥ 0 : μ_f(s) ≤ t}, searched over the candidate levels.
Rational brute_rearrangement(const StepFunction& f, const Rational& t) {
  std::vector<Rational> levels{Rational(0)};
  for (const auto& p : f.pieces()) levels.push_back(*p.value.modulus());
  std::sort(levels.begin(), levels.end());
  for (const auto& s : levels) {
    if (brute_distribution(f, s) <= t) return s;
  }
  return levels.back();
}

}  // namespace

TEST_SUITE("rearrangement") {
  TEST_CASE("distribution function of the running example") {
    const auto mu = distribution_function(running_example());
    CHECK(mu(q(0)) == q(3));
    CHECK(mu(q(1, 2)) == q(3));
    CHECK(mu(q(1)) == q(1));
    CHECK(mu(q(2)) == q(1));
    CHECK(mu(q(3)) == q(0));
    CHECK(distribution_function(StepFunction(1))(q(0)) == q(0));
    const auto ind = distribution_function(StepFunction::indicator(iv(q(0), q(5, 4))));
    CHECK(ind(q(0)) == q(5, 4));
    CHECK(ind(q(1)) == q(0));
  }

  TEST_CASE("rearrangement of the running example") {
    const auto r = nonincreasing_rearrangement(running_example());
    CHECK(r.breakpoints() == std::vector<Rational>{q(0), q(1), q(3)});
    CHECK(r.values() == std::vector<Rational>{q(3), q(1)});
    CHECK(r(q(1, 2)) == q(3));
    CHECK(r(q(2)) == q(1));
    CHECK(r(q(3)) == q(0));
    const auto ind = nonincreasing_rearrangement(StepFunction::indicator(iv(q(2), q(9, 4))));
    CHECK(ind.breakpoints() == std::vector<Rational>{q(0), q(1, 4)});
  }

  TEST_CASE("symmetric rearrangement has the same profile") {
    const auto f = running_example();
    CHECK(rearrangement_of(radial_rearrangement(f)) == nonincreasing_rearrangement(f));
    const auto star = materialize_radial_1d(radial_rearrangement(f));
    CHECK(star.value_at(std::vector<Rational>{q(1, 4)}) == ComplexRational(3));
    CHECK(star.value_at(std::vector<Rational>{q(-1, 4)}) == ComplexRational(3));
    CHECK(star.value_at(std::vector<Rational>{q(1)}) == ComplexRational(1));
  }

  TEST_CASE("profiles agree with brute-force distribution") {
    Sampler rng(17);
    SampleOptions opt;
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = rng.step_function(opt);
      const auto r = nonincreasing_rearrangement(f);
      for (const auto& t : r.breakpoints()) CHECK(r(t) == brute_rearrangement(f, t));
      for (std::size_t j = 0; j + 1 < r.breakpoints().size(); ++j) {
        const Rational mid = (r.breakpoints()[j] + r.breakpoints()[j + 1]) / 2;
        CHECK(r(mid) == brute_rearrangement(f, mid));
      }
      for (const auto& v : r.values()) {
        CHECK(r.distribution(v) == brute_distribution(f, v));
        CHECK(distribution_function(f)(v) == brute_distribution(f, v));
      }
      CHECK(nonincreasing_rearrangement(r.to_step_function()) == r);
    }
  }

  TEST_CASE("two-dimensional profiles are equimeasurable") {
    Sampler rng(19);
    SampleOptions opt;
    opt.dimension = 2;
    for (int trial = 0; trial < 40; ++trial) {
      const auto f = rng.step_function(opt);
      const auto r = nonincreasing_rearrangement(f);
      CHECK(r.support_measure() == f.support_measure());
      CHECK(rearrangement_of(radial_rearrangement(f)) == r);
    }
  }

  TEST_CASE("Hardy-Littlewood inequality") {
    Sampler rng(23);
    SampleOptions opt;
    for (int trial = 0; trial < 60; ++trial) {
      const auto f = rng.step_function(opt);
      const auto g = rng.step_function(opt);
      const Rational lhs = integrate_abs_product(f, g);
      const Rational rhs = integrate_abs_product(nonincreasing_rearrangement(f).to_step_function(),
                                                 nonincreasing_rearrangement(g).to_step_function());
      CHECK(lhs <= rhs);
    }
  }

  TEST_CASE("profile dilation divides breakpoints") {
    const auto r = nonincreasing_rearrangement(running_example()).dilated(q(2));
    CHECK(r.breakpoints() == std::vector<Rational>{q(0), q(1, 2), q(3, 2)});
    CHECK(r.values() == std::vector<Rational>{q(3), q(1)});
  }

  TEST_CASE("malformed profiles are rejected") {
    CHECK_THROWS_AS(RearrangementProfile::from_parts({q(0), q(1)}, {q(1), q(2)}), std::invalid_argument);
    CHECK_THROWS_AS(RearrangementProfile::from_parts({q(0), q(2), q(1)}, {q(2), q(1)}), std::invalid_argument);
  }
}
