#pragma once

#include "qbfs/geometry.hpp"
#include "qbfs/quasinorm.hpp"
#include "qbfs/step_function.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qbfs {

/// Finite union of closed dyadic boxes.
struct CompactDyadicSet {
  std::size_t dimension = 1;
  std::vector<DyadicBox> boxes;

  std::vector<Box> closed_boxes() const;
  Rational measure() const;
};

/// Interior of a finite union of closed dyadic boxes.
struct OpenDyadicSet {
  std::size_t dimension = 1;
  std::vector<DyadicBox> boxes;

  std::vector<Box> closure_boxes() const;
};

struct CoverResult {
  DyadicComplex omega{0, 1};
  int order = 0;
  /// Sup-metric distance from K to the complement of G, as the largest dyadic radius found.
  Rational distance_to_complement;
  /// Radius of the inflation H̃ = K ⊕ r with λ(H̃ \ K) < ε.
  Rational inflation_radius;
  Rational excess_measure;
  Rational missed_measure;
  bool inside_g = false;
  bool covers_k = false;
  bool small_excess = false;
  bool cubes_meet_k = false;

  bool verified() const { return inside_g && covers_k && small_excess && cubes_meet_k; }
};

/// Complex Ω of order k ≥ k0 with Ω ⊆ G, λ(K \ Ω) = 0, λ(Ω \ K) < ε and
/// every member cube meeting K. Throws std::invalid_argument when K ⊄ G or
/// K touches the complement of G.
CoverResult dyadic_cover(const CompactDyadicSet& K, const OpenDyadicSet& G, const Rational& eps, int k0);

/// Σ a_i χ_{Q_i} with dyadic cubes Q_i of possibly different orders.
struct RationalSimpleFunction {
  std::size_t dimension = 1;
  std::vector<std::pair<DyadicCube, ComplexRational>> terms;

  StepFunction to_step_function() const;
};

/// Present when every piece of f is a finite union of dyadic cubes.
std::optional<RationalSimpleFunction> as_rational_simple(const StepFunction& f);

enum class SetSequence { shrink_to_null, escape_to_infinity, level_sets };

SetSequence parse_set_sequence(const std::string& name);
std::string to_string(SetSequence s);

/// f χ_{E_k} for the canonical sequences: E_k = anchor + [0, 2^{-k}]ⁿ,
/// E_k = ℝⁿ \ (−2^k, 2^k)ⁿ, or E_k = {|f| > 2^k}.
StepFunction restrict_to_set(const StepFunction& f, SetSequence seq, int k, const std::vector<Rational>& anchor);

enum class ACVerdict { absolutely_continuous, not_absolutely_continuous, inconclusive };
std::string to_string(ACVerdict v);

struct ACWitness {
  StepFunction f;
  SetSequence sequence = SetSequence::shrink_to_null;
  std::vector<Rational> anchor;
  std::vector<double> norms;
  bool monotone = true;
  ACVerdict verdict = ACVerdict::inconclusive;
  /// For a negative verdict: every ‖f χ_{E_k}‖ exceeds this.
  double epsilon = 0.0;
};

/// Evaluates ‖f χ_{E_k}‖ for k = 0..depth. The anchor defaults to the lower
/// corner of f's first piece.
ACWitness ac_test(const StepFunction& f, const QuasinormSpec& X, SetSequence seq, int depth,
                  std::optional<std::vector<Rational>> anchor = std::nullopt);

struct ApproximationTrace {
  double eps = 0.0;
  Rational N;
  double L = 0.0;
  Rational delta;
  Rational Delta;
  int k0 = 0;
  int order = 0;
  std::size_t cubes = 0;
  /// ‖(f − s)χ_K‖, ‖f χ_{E0}‖, ‖f χ_{E1}‖, ‖f χ_{E\K}‖, ‖s χ_{ℝⁿ\K}‖.
  double term_k = 0.0;
  double term_e0 = 0.0;
  double term_e1 = 0.0;
  double term_e_minus_k = 0.0;
  double term_s_outside = 0.0;
  /// C T_K + C⁵ T_{E0} + C⁴ T_{E1} + C³ T_{E\K} + C² T_s.
  double combined = 0.0;
  double measured = 0.0;
  double certified = 0.0;
  bool shortcut = false;

  bool within_budgets() const;
};

struct Approximation {
  RationalSimpleFunction s;
  ApproximationTrace trace;
};

/// (2C + C² + C³ + C⁴ + C⁵)·ε.
double certified_constant(double C);

/// Builds s ∈ 𝒮 with ‖f − s‖_X ≤ (2C + C² + C³ + C⁴ + C⁵)ε. X must be
/// rearrangement invariant and f must pass the absolute-continuity test.
Approximation approximate_simple(const StepFunction& f, const QuasinormSpec& X, double eps);

struct SplitResult {
  std::vector<int> indices;
  std::vector<StepFunction> parts;
  std::vector<double> norms;
  bool disjoint = true;
  bool dominated = true;
  bool above_eps = true;

  bool verified() const { return disjoint && dominated && above_eps; }
};

/// f_i = |f|(χ_{E_{k_i}} − χ_{E_{k_{i+1}}}) with the smallest admissible k_{i+1}.
SplitResult non_ac_split(const StepFunction& f, const QuasinormSpec& X, SetSequence seq, double eps, int count,
                         int horizon = 64, std::optional<std::vector<Rational>> anchor = std::nullopt);

}  // namespace qbfs
