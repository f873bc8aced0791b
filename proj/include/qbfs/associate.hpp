#pragma once

#include "qbfs/quasinorm.hpp"
#include "qbfs/step_function.hpp"

#include <string>
#include <vector>

namespace qbfs {

/// Finite class of test functions g: constant on the cells obtained by
/// splitting every piece of f into 2^refine_level slabs along the first axis,
/// with values in {0, 1, ..., value_grid}.
struct SearchClass {
  int refine_level = 0;
  int value_grid = 2;
  /// Single-cell indicators, always worth trying for p < 1.
  bool concentration = true;
  /// Continuous pattern search started from the best grid candidate.
  bool polish = true;
  /// Adds g ∝ |f|^{p'-1} for L^p, p > 1.
  bool dual_alignment = false;
  /// Above this many grid vectors the grid is walked by coordinate ascent instead.
  std::size_t max_candidates = 600000;
};

struct AssociateEvaluation {
  double value = 0.0;
  bool infinite = false;
  /// Maximizer within the class; the reported value is its own ratio.
  StepFunction witness;
  std::string witness_description;
  SearchClass search;
  std::size_t candidates = 0;
  bool exhaustive = true;
};

/// sup over the class of ∫|f g| / ‖g‖_X, with 0/0 = 0 and a/0 = ∞.
AssociateEvaluation associate_norm(const StepFunction& f, const QuasinormSpec& X, const SearchClass& search);

/// ∫ |f g| in floating point (complex moduli need not be rational).
double pairing(const StepFunction& f, const StepFunction& g);

struct HolderReport {
  bool passed = true;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs, minimised over everything checked.
  double slack = 0.0;
  std::string witness;
};

/// ∫|fg| ≤ ‖g‖_X · ‖f‖_{X'} for one g, using the searched associate value.
HolderReport holder_check(const StepFunction& f, const StepFunction& g, const QuasinormSpec& X,
                          const AssociateEvaluation& eval, double tolerance = 1e-12);
/// The same inequality for every grid candidate of the evaluation's class.
HolderReport holder_check_class(const StepFunction& f, const QuasinormSpec& X, const AssociateEvaluation& eval,
                                double tolerance = 1e-12);

struct SecondAssociateReport {
  bool passed = true;
  double second_associate = 0.0;
  double norm = 0.0;
  bool indicators_finite = true;
  std::string witness_description;
};

/// Searched ‖f‖_{X''} ≤ ‖f‖_X + tolerance. The inner associate search always
/// contains |f| itself, which makes the searched ‖h‖_{X'} ≥ ∫|fh| / ‖f‖_X and
/// keeps the inequality sound although ‖h‖_{X'} is only a lower bound.
SecondAssociateReport second_associate_lower_bound(const StepFunction& f, const QuasinormSpec& X,
                                                   const SearchClass& search, double tolerance = 1e-9);

}  // namespace qbfs
