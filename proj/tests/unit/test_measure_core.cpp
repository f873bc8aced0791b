#include "helpers.hpp"

#include "qbfs/sampling.hpp"
#include "qbfs/serialization.hpp"

#include <doctest.h>

using namespace qbfs;
using namespace qbfs::test;

namespace {

// Counts cells of the 2^{-bits} grid covered by some box; exact for boxes on that grid.
Rational grid_count_measure(const std::vector<Box>& boxes, int bits, const Rational& lo, const Rational& hi) {
  const Rational h = pow2(-bits);
  const std::size_t n = boxes.front().dimension();
  const auto cells = floor_int((hi - lo) / h);
  Rational total(0);
  std::vector<std::int64_t> idx(n, 0);
  while (true) {
    std::vector<Rational> centre;
    for (auto i : idx) centre.push_back(lo + h * i + h / 2);
    for (const auto& b : boxes) {
      if (b.contains_point(centre)) {
        total += pow2(-bits * static_cast<int>(n));
        break;
      }
    }
    std::size_t d = 0;
    while (d < n && ++idx[d] == cells) idx[d++] = 0;
    if (d == n) break;
  }
  return total;
}

}  // namespace

TEST_SUITE("measure_core") {
  TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("0.1") == q(1, 10));
    CHECK(parse_rational("-3/4") == q(-3, 4));
    CHECK(parse_rational("2") == q(2));
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK(pow2(-3) == q(1, 8));
    CHECK(exact_sqrt(q(9, 4)) == q(3, 2));
    CHECK_FALSE(exact_sqrt(q(2)).has_value());
  }

  TEST_CASE("complex moduli stay rational on Pythagorean values") {
    const ComplexRational z(q(3, 5), q(4, 5));
    REQUIRE(z.modulus().has_value());
    CHECK(*z.modulus() == q(1));
    CHECK_FALSE(ComplexRational(q(1), q(1)).modulus().has_value());
  }

  TEST_CASE("cube and box measures") {
    CHECK(DyadicCube{1, {0}}.measure() == q(1, 2));
    const std::vector<Box> two{iv(q(0), q(1)), iv(q(1), q(3))};
    CHECK(union_measure(two) == q(3));
    DyadicComplex c(2, 2);
    for (std::int64_t a = 0; a < 5; ++a) c.insert({2, {a, 0}});
    CHECK(c.size() == 5);
    CHECK(c.measure() == q(5, 16));
  }

  TEST_CASE("union measure agrees with grid counting") {
    Sampler rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Box> boxes;
      const auto count = rng.integer(1, 5);
      for (std::int64_t i = 0; i < count; ++i) {
        std::vector<Interval> sides;
        for (int d = 0; d < 2; ++d) {
          const auto a = rng.integer(0, 14);
          sides.push_back({q(a, 4), q(rng.integer(a + 1, 16), 4)});
        }
        boxes.emplace_back(std::move(sides));
      }
      CHECK(union_measure(boxes) == grid_count_measure(boxes, 2, q(0), q(4)));
      const auto disjoint = disjointify(boxes);
      Rational sum(0);
      for (const auto& b : disjoint) sum += b.measure();
      CHECK(sum == union_measure(boxes));
    }
  }

  TEST_CASE("box subtraction partitions the difference") {
    const Box a = box2(q(0), q(4), q(0), q(4));
    const Box b = box2(q(1), q(2), q(3), q(6));
    const auto rest = a.subtract(b);
    Rational sum(0);
    for (const auto& r : rest) {
      sum += r.measure();
      CHECK_FALSE(r.overlaps(b));
    }
    CHECK(sum == a.measure() - a.intersect(b).measure());
  }

  TEST_CASE("pointwise algebra examples") {
    const StepFunction f = running_example();
    CHECK(equal_ae(f + StepFunction(1), f));
    const auto product = pointwise_combine(step({{q(0), q(1), q(3)}}), StepFunction::indicator(iv(q(0), q(2))),
                                           CombineOp::multiply);
    CHECK(equal_ae(product, step({{q(0), q(1), q(3)}})));
    const auto sum = StepFunction::indicator(iv(q(0), q(2))) + StepFunction::indicator(iv(q(1), q(3)));
    CHECK(equal_ae(sum, step({{q(0), q(1), q(1)}, {q(1), q(2), q(2)}, {q(2), q(3), q(1)}})));
    CHECK(scale(f, 0).is_zero());
    CHECK(equal_ae(abs(step({{q(0), q(1), q(-2)}})), step({{q(0), q(1), q(2)}})));
    const Box e = iv(q(2), q(4));
    CHECK(equal_ae(restrict(f, std::span<const Box>(&e, 1)), step({{q(2), q(3), q(1)}})));
  }

  TEST_CASE("integration examples") {
    CHECK(integrate(StepFunction::indicator(iv(q(0), q(1)))) == ComplexRational(1));
    CHECK(integrate(running_example()) == ComplexRational(5));
    CHECK(integrate_abs_product(step({{q(0), q(2), q(2)}}), StepFunction::indicator(iv(q(1), q(3)))) == q(2));
  }

  TEST_CASE("overlapping pieces are rejected") {
    std::vector<Piece> pieces{{iv(q(0), q(2)), ComplexRational(1)}, {iv(q(1), q(3)), ComplexRational(1)}};
    CHECK_THROWS_AS(StepFunction::from_pieces(1, pieces), std::invalid_argument);
  }

  TEST_CASE("combination matches pointwise evaluation") {
    Sampler rng(5);
    SampleOptions opt;
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = rng.step_function(opt);
      const auto g = rng.step_function(opt);
      const auto s = f + g;
      const auto d = f - g;
      const auto m = pointwise_combine(f, g, CombineOp::multiply);
      for (int i = 0; i < 20; ++i) {
        // Odd multiples of 2^{-6} avoid every breakpoint on the 2^{-3} grid.
        const Rational x = q(2 * rng.integer(0, 127) + 1, 64);
        const std::vector<Rational> pt{x};
        CHECK(s.value_at(pt) == f.value_at(pt) + g.value_at(pt));
        CHECK(d.value_at(pt) == f.value_at(pt) - g.value_at(pt));
        CHECK(m.value_at(pt) == f.value_at(pt) * g.value_at(pt));
      }
      CHECK(integrate(s) == integrate(f) + integrate(g));
    }
  }

  TEST_CASE("dilation moves breakpoints") {
    const auto d = dilate(running_example(), q(2));
    CHECK(equal_ae(d, step({{q(0), q(1, 2), q(3)}, {q(1, 2), q(3, 2), q(1)}})));
  }

  TEST_CASE("serialization round trips") {
    Sampler rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = rng.step_function({});
      const Json j = to_json(f);
      CHECK(equal_ae(step_function_from_json(j), f));
      CHECK(step_function_from_json(Json::parse(j.dump())).size() == f.size());
    }
    CHECK(rational_from_json(to_json(q(-7, 3))) == q(-7, 3));
    CHECK(to_json(DyadicCube{2, {1}}.box()).contains("k"));
  }

  TEST_CASE("sampling is deterministic per seed") {
    const auto a = sample_set(42, 10);
    const auto b = sample_set(42, 10);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(equal_ae(a[i], b[i]));
  }
}
