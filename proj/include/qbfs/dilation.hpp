#pragma once

#include "qbfs/quasinorm.hpp"
#include "qbfs/rearrangement.hpp"
#include "qbfs/step_function.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qbfs {

/// D_a on a profile in measure: t ↦ g(c t), i.e. breakpoints divided by c.
/// For f on ℝⁿ the profile of D_a f is dilate_profile(f*, aⁿ).
RearrangementProfile dilate_profile(const RearrangementProfile& g, const Rational& c);

/// Blocks B_m = (2^{-m-1}, 2^{-m}). G_1 collects odd m, G_2 even m.
bool in_lacunary_set(int m, int parity);
/// Left endpoint 2^{-m-1} of the block containing x > 0, with its index m.
int lacunary_block(const Rational& x);
/// λ(G_parity ∩ (0, x)), exact (the infinite tail below x is a geometric series).
Rational lacunary_mass_below(const Rational& x, int parity);
/// t_x = x − (2/3)·2^{-m-1} for x in block m.
Rational shift_map(const Rational& x);

struct LacunaryRestriction {
  int parity = 1;
  /// Materialized blocks m_min..m_max.
  int m_min = 0;
  int m_max = 0;
  /// g · χ_{G_parity} on [2^{-m_max-1}, ∞), exact.
  StepFunction restricted{1};
  /// λ(G_parity ∩ (0, 2^{-m_max-1})) and the constant value of g there.
  Rational tail_measure;
  Rational tail_value;

  /// Exact (g χ_{G_parity})*, including the unmaterialized tail.
  RearrangementProfile rearrangement() const;
};

/// R_parity g = g χ_{G_parity}. `depth` blocks are materialized below the
/// first breakpoint of g; g must be constant on the remaining tail.
LacunaryRestriction lacunary_restrict(const RearrangementProfile& g, int parity, int depth = 40);

struct SplitCarrier {
  int parity = 1;
  std::size_t dimension = 1;
  double alpha = 2.0;
  std::optional<Rational> alpha_exact;
  LacunaryRestriction restriction;

  /// S_i f in x (n = 1 only): x ↦ R_i f*(2|x|), even step function.
  StepFunction materialize() const;
  /// (S_i f)*: for n = 1 by rearranging the materialized function, else via
  /// the annulus measures of x ↦ α_n|x|ⁿ.
  RearrangementProfile rearrangement() const;
};

/// S_i f(x) = [R_i f*](α_n |x|ⁿ), stored symbolically.
SplitCarrier splitting_operator(const StepFunction& f, std::size_t n, int parity, int depth = 40);

struct LacunaryInequalityReport {
  bool passed = true;
  std::size_t points = 0;
  /// min over checked t of g(3t/2) − (R_i g)*(t).
  Rational worst_margin;
  std::string counterexample;
  bool shift_map_ok = true;
};

/// (R_i g)*(t) ≤ g(3t/2) for both parities at the given t, at the midpoints
/// between all breakpoints of either side, and the shift-map identity
/// t_x = λ(G_i ∩ (0,x)) at every given x.
LacunaryInequalityReport lacunary_inequality_check(const RearrangementProfile& g, std::span<const Rational> samples,
                          std::span<const Rational> shift_points = {});

/// 1 for a ≥ 1; 2C a^{log(2C)/log b} with b = (2/3)^{1/n} for 0 < a < 1.
double dilation_bound(std::size_t n, double C, double a);

struct DilationRatio {
  double ratio = 0.0;
  std::size_t witness = 0;
};

/// max over samples of ‖D_a f‖_X / ‖f‖_X (zero samples skipped).
DilationRatio empirical_dilation_ratio(const QuasinormSpec& X, const Rational& a, std::span<const StepFunction> samples);

struct SweepRow {
  Rational a;
  double empirical_ratio = 0.0;
  double bound = 0.0;
  bool within_bound = true;
};

struct DilationSweep {
  std::vector<SweepRow> rows;
  /// ‖D_a f‖ non-increasing along the grid for every sample.
  bool monotone = true;
  std::string monotonicity_witness;
  bool passed() const;
};

/// Runs the grid in increasing a; asserts the bound and monotonicity.
DilationSweep dilation_sweep(const QuasinormSpec& X, std::size_t n, std::vector<Rational> grid,
                             std::span<const StepFunction> samples, double tolerance = 1e-9);

/// "0.1:1.0:0.1" (inclusive) or a comma list, all exact rationals.
std::vector<Rational> parse_grid(const std::string& text);

}  // namespace qbfs
