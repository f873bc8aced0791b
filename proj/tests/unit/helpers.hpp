#pragma once

#include "qbfs/step_function.hpp"

#include <initializer_list>
#include <tuple>

namespace qbfs::test {

inline Rational q(long num, long den = 1) { return ratio(num, den); }

inline Box iv(const Rational& lo, const Rational& hi) { return Box::interval(lo, hi); }

inline Box box2(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
  return Box({Interval{x0, x1}, Interval{y0, y1}});
}

/// One-dimensional step function from (lo, hi, value) triples.
inline StepFunction step(std::initializer_list<std::tuple<Rational, Rational, ComplexRational>> parts) {
  std::vector<Piece> pieces;
  for (const auto& [lo, hi, v] : parts) pieces.push_back({Box::interval(lo, hi), v});
  return StepFunction::from_pieces(1, std::move(pieces));
}

/// 3χ_(0,1) + χ_(1,3), the running example.
inline StepFunction running_example() { return step({{q(0), q(1), q(3)}, {q(1), q(3), q(1)}}); }

}  // namespace qbfs::test
