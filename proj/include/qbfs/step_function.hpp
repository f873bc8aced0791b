#pragma once

#include "qbfs/geometry.hpp"
#include "qbfs/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace qbfs {

struct Piece {
  Box region;
  ComplexRational value;
};

/// A compactly supported function taking finitely many values on pairwise
/// disjoint boxes, zero elsewhere. Pieces with zero value or zero measure are
/// dropped on construction, so the stored pieces describe the support exactly.
class StepFunction {
 public:
  explicit StepFunction(std::size_t dimension = 1);

  /// Validates dimensions and pairwise disjointness (up to null sets).
  /// Throws std::invalid_argument naming the first overlapping pair.
  static StepFunction from_pieces(std::size_t dimension, std::vector<Piece> pieces);

  static StepFunction indicator(const Box& region);
  static StepFunction constant(const Box& region, ComplexRational value);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool is_zero() const { return pieces_.empty(); }
  bool is_real() const;

  /// Value at a point off all region boundaries.
  ComplexRational value_at(std::span<const Rational> x) const;

  std::vector<Box> support() const;
  Rational support_measure() const;
  /// Smallest box containing the support; throws for the zero function.
  Box bounding_box() const;

  /// Largest |value|^2, exact.
  Rational max_norm2() const;

  /// Canonical form: pieces sorted, adjacent 1-D intervals with equal values merged.
  StepFunction simplified() const;

 private:
  std::size_t dimension_;
  std::vector<Piece> pieces_;

  friend struct StepFunctionAccess;
};

enum class CombineOp { add, subtract, multiply, max, min };

/// Exact pointwise combination on the common refinement. max/min require
/// real-valued inputs.
StepFunction pointwise_combine(const StepFunction& f, const StepFunction& g, CombineOp op);

StepFunction operator+(const StepFunction& f, const StepFunction& g);
StepFunction operator-(const StepFunction& f, const StepFunction& g);

StepFunction scale(const StepFunction& f, const ComplexRational& a);
/// |f|. Throws std::domain_error if some |value| is irrational.
StepFunction abs(const StepFunction& f);
/// f · χ_E with E a finite union of boxes (overlaps allowed).
StepFunction restrict(const StepFunction& f, std::span<const Box> region_set);
/// f · χ_{R^n \ E}.
StepFunction restrict_complement(const StepFunction& f, std::span<const Box> region_set);
/// f · χ_{{|f| > level}}, or {|f| <= level} when `above` is false.
StepFunction restrict_level(const StepFunction& f, const Rational& level, bool above);
/// Image under the dilation x ↦ f(a x).
StepFunction dilate(const StepFunction& f, const Rational& a);

/// Exact Lebesgue measure of a union of boxes. Inverted boxes (lo > hi) and
/// mixed dimensions are rejected.
Rational measure(std::span<const Box> region_set);

ComplexRational integrate(const StepFunction& f);
/// ∫ |f|. Throws std::domain_error if some |value| is irrational.
Rational integrate_abs(const StepFunction& f);
/// ∫ |f g| via the common refinement.
Rational integrate_abs_product(const StepFunction& f, const StepFunction& g);

/// |f| ≤ |g| almost everywhere (compares squared moduli exactly).
bool dominated(const StepFunction& f, const StepFunction& g);
/// f = g almost everywhere.
bool equal_ae(const StepFunction& f, const StepFunction& g);
/// Measure of supp f ∩ supp g.
Rational support_overlap(const StepFunction& f, const StepFunction& g);

std::string to_string(const StepFunction& f);

struct Atom {
  std::string label;
  Rational weight;
};

/// The underlying measure space. Atomic spaces are realised as consecutive
/// unit-free intervals of length equal to the atom weights, which is an
/// isometric model for every functional that only sees values and measures.
class MeasureSpaceDescriptor {
 public:
  enum class Kind { interval, euclidean, atomic };

  static MeasureSpaceDescriptor interval(Rational length);
  static MeasureSpaceDescriptor euclidean(std::size_t dimension);
  static MeasureSpaceDescriptor atomic(std::vector<Atom> atoms);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  /// Total measure; zero stands for "infinite" (Euclidean space).
  const Rational& total_measure() const { return total_; }

  /// Cells carrying the atoms, in order.
  std::vector<Box> atom_cells() const;
  /// Step function with the given value on each atom.
  StepFunction embed(std::span<const ComplexRational> atom_values) const;
  /// Support of f lies inside the space.
  bool admits(const StepFunction& f) const;

 private:
  MeasureSpaceDescriptor(Kind kind, std::size_t dimension) : kind_(kind), dimension_(dimension) {}

  Kind kind_;
  std::size_t dimension_;
  std::vector<Atom> atoms_;
  Rational total_;
};

}  // namespace qbfs
