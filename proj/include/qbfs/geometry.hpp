#pragma once

#include "qbfs/rational.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace qbfs {

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi > lo ? Rational(hi - lo) : Rational(0); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-parallel box ∏ (lo_i, hi_i). Boundaries carry no mass, so open and
/// closed boxes are identified wherever only measure matters.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> sides);

  /// One-dimensional interval (lo, hi).
  static Box interval(Rational lo, Rational hi);

  std::size_t dimension() const { return sides_.size(); }
  const std::vector<Interval>& sides() const { return sides_; }
  const Interval& side(std::size_t i) const { return sides_[i]; }

  /// True when some side has non-positive length.
  bool degenerate() const;
  Rational measure() const;

  /// Intersection box (possibly degenerate).
  Box intersect(const Box& other) const;
  /// Interiors intersect, i.e. the intersection has positive measure.
  bool overlaps(const Box& other) const;
  /// Closures intersect.
  bool touches(const Box& other) const;
  bool contains(const Box& other) const;
  bool contains_point(std::span<const Rational> x) const;

  /// this \ other as at most 2n pairwise disjoint non-degenerate boxes.
  std::vector<Box> subtract(const Box& other) const;

  /// Minkowski sum with the open sup-norm ball of radius r.
  Box inflated(const Rational& r) const;
  /// Image under x ↦ x / a.
  Box scaled_down(const Rational& a) const;

  friend bool operator==(const Box&, const Box&) = default;
  friend bool operator<(const Box& a, const Box& b);

 private:
  std::vector<Interval> sides_;
};

std::string to_string(const Box& b);

/// Exact Lebesgue measure of a finite union of boxes (overlaps allowed).
Rational union_measure(std::span<const Box> boxes);

/// Rewrites a box list as pairwise disjoint boxes with the same union.
std::vector<Box> disjointify(std::span<const Box> boxes);

/// The dyadic cube Q_{k,a} = ∏ (a_i / 2^k, (a_i + 1) / 2^k).
struct DyadicCube {
  int order = 0;
  std::vector<std::int64_t> corner;

  std::size_t dimension() const { return corner.size(); }
  Box box() const;
  /// Exactly 2^{-k n}.
  Rational measure() const;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

/// Union of whole dyadic cells of one order: ∏ [lo_i / 2^k, hi_i / 2^k].
struct DyadicBox {
  int order = 0;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;

  static DyadicBox from_cube(const DyadicCube& q);
  std::size_t dimension() const { return lo.size(); }
  Box box() const;
  DyadicBox refined_to(int finer_order) const;
};

/// Finite union of same-order dyadic cubes.
class DyadicComplex {
 public:
  DyadicComplex(int order, std::size_t dimension);

  int order() const { return order_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return corners_.size(); }
  bool empty() const { return corners_.empty(); }

  /// Inserts Q_{k,a}; the order must match and duplicates are ignored.
  void insert(const DyadicCube& q);
  bool contains(const DyadicCube& q) const;

  std::vector<DyadicCube> cubes() const;
  std::vector<Box> boxes() const;
  /// count · 2^{-k n}.
  Rational measure() const;

 private:
  int order_;
  std::size_t dimension_;
  std::set<std::vector<std::int64_t>> corners_;
};

}  // namespace qbfs
