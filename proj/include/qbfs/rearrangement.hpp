#pragma once

#include "qbfs/rational.hpp"
#include "qbfs/step_function.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qbfs {

/// s ↦ μ_f(s) = μ{|f| > s} for a step function f. Stored as the distinct
/// levels v_1 > … > v_m of |f| with the measure of each level set.
class DistributionFunction {
 public:
  DistributionFunction() = default;
  DistributionFunction(std::vector<Rational> levels, std::vector<Rational> level_measures);

  /// μ_f(s); right-continuous, non-increasing.
  Rational operator()(const Rational& s) const;

  /// Distinct levels, strictly decreasing.
  const std::vector<Rational>& levels() const { return levels_; }
  const std::vector<Rational>& level_measures() const { return measures_; }

  /// The same function as a 1-D step function in s on [0, v_1).
  StepFunction as_step_function() const;

  friend bool operator==(const DistributionFunction&, const DistributionFunction&) = default;

 private:
  std::vector<Rational> levels_;
  std::vector<Rational> measures_;
};

/// Exact non-increasing rearrangement f* on (0, ∞): value v_j on
/// [t_{j-1}, t_j), zero from t_m on.
class RearrangementProfile {
 public:
  RearrangementProfile() : breakpoints_{Rational(0)} {}

  /// Builds the canonical profile from (|value|, measure) pairs. Values are
  /// sorted decreasingly and ties merged; zero values and null measures drop.
  static RearrangementProfile from_levels(std::vector<std::pair<Rational, Rational>> levels);
  /// Direct construction; throws unless breakpoints increase from 0 and
  /// values strictly decrease and stay positive.
  static RearrangementProfile from_parts(std::vector<Rational> breakpoints, std::vector<Rational> values);

  /// t_0 = 0 < t_1 < … < t_m.
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  /// v_1 > … > v_m > 0.
  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool is_zero() const { return values_.empty(); }
  const Rational& support_measure() const { return breakpoints_.back(); }

  /// f*(t), t ≥ 0.
  Rational operator()(const Rational& t) const;
  double at(double t) const;

  /// μ{f* > s}.
  Rational distribution(const Rational& s) const;
  DistributionFunction distribution_function() const;

  /// Profile of t ↦ g(c t): breakpoints divided by c.
  RearrangementProfile dilated(const Rational& c) const;

  /// The profile as a 1-D step function on (0, t_m).
  StepFunction to_step_function() const;

  friend bool operator==(const RearrangementProfile&, const RearrangementProfile&) = default;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
};

/// λ^n of the unit ball: π^{n/2} / Γ(n/2 + 1).
double unit_ball_volume(std::size_t n);
/// The same constant when it is rational (n = 1 gives 2).
std::optional<Rational> unit_ball_volume_exact(std::size_t n);

/// x ↦ f*(α_n |x|^n), carried symbolically through the stored profile.
struct RadialProfile {
  RearrangementProfile profile;
  std::size_t dimension = 1;
  double alpha = 2.0;
  std::optional<Rational> alpha_exact;

  double operator()(std::span<const double> x) const;
};

DistributionFunction distribution_function(const StepFunction& f);
RearrangementProfile nonincreasing_rearrangement(const StepFunction& f);
RadialProfile radial_rearrangement(const StepFunction& f);
/// f^★ on the real line (n = 1, α_1 = 2) as an explicit even step function.
StepFunction materialize_radial_1d(const RadialProfile& r);
/// (f^★)*: for n = 1 by rearranging the materialized function, otherwise from
/// the annulus measures λ^n{t_{j-1} < α_n|x|^n < t_j} = t_j − t_{j-1}.
RearrangementProfile rearrangement_of(const RadialProfile& r);

}  // namespace qbfs
