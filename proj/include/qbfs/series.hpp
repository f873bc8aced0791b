#pragma once

#include "qbfs/quasinorm.hpp"
#include "qbfs/step_function.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qbfs {

struct PrefixSumReport {
  bool passed = true;
  /// ‖Σ_0^N x_n‖ and Σ_0^N C^{n+1}‖x_n‖ for every prefix N.
  std::vector<double> lhs;
  std::vector<double> rhs;
  double worst_slack = 0.0;
  int counterexample_prefix = -1;
};

/// ‖Σ_{n≤N} x_n‖ ≤ Σ_{n≤N} C^{n+1}‖x_n‖ for every prefix N, with relative tolerance.
PrefixSumReport prefix_sum_inequality_check(std::span<const StepFunction> terms, const QuasinormSpec& X, double tolerance = 1e-9);

/// Series Σ f_n given by a term generator and an analytic weighted tail.
struct SeriesGenerator {
  std::string name;
  std::size_t dimension = 1;
  std::function<StepFunction(int)> term;
  /// Σ_{n>M} C^{n+1}‖f_n‖.
  std::function<double(int)> weighted_tail;
  /// f − s_M in closed form, when available.
  std::function<StepFunction(int)> remainder;
  /// Exact ‖f − s_M‖ when the norm allows it.
  std::function<std::optional<Rational>(int)> exact_remainder_norm;
  std::optional<StepFunction> limit;
};

/// f_n = r^{n+1} h with limit r/(1−r)·h. Throws when C·r ≥ 1.
SeriesGenerator geometric_generator(const Rational& ratio, const StepFunction& h, const QuasinormSpec& X);
/// f_n = 2^{-n} χ_(n,n+1). Throws when C ≥ 2.
SeriesGenerator disjoint_generator(const QuasinormSpec& X);
/// f_0 = h, f_n = 0 afterwards.
SeriesGenerator single_term_generator(const StepFunction& h);
/// "geometric:ratio=0.25", "disjoint" or "single".
SeriesGenerator parse_generator(const std::string& text, const QuasinormSpec& X);

struct SeriesCertificate {
  double C = 1.0;
  int prefix = 0;
  std::vector<StepFunction> terms;
  std::vector<double> term_norms;
  double weighted_prefix = 0.0;
  /// tail_bounds[M] = Σ_{n>M} C^{n+1}‖f_n‖.
  std::vector<double> tail_bounds;
  std::vector<StepFunction> partial_sums;
  std::optional<StepFunction> limit;
  /// ‖f − s_M‖ for M = 0..prefix.
  std::vector<double> remainder_norms;
  std::vector<std::optional<Rational>> exact_remainders;
  /// ‖s_N − s_M‖ with N = prefix.
  std::vector<double> cauchy;
  /// ‖t_M‖ with t_M = Σ_{n≤M} |f_n|.
  std::vector<double> t_norms;
  bool remainder_monotone = true;
  bool remainder_within_tail = true;
  bool cauchy_within_tail = true;
  bool t_monotone = true;
  bool prefix_inequality_holds = true;

  bool passed() const {
    return remainder_monotone && remainder_within_tail && cauchy_within_tail && t_monotone && prefix_inequality_holds;
  }
};

SeriesCertificate riesz_fischer_sum(const SeriesGenerator& gen, const QuasinormSpec& X, int prefix,
                                    double tolerance = 1e-9);

struct CauchyExtraction {
  std::vector<std::size_t> indices;
  /// ‖x_{k_{n+1}} − x_{k_n}‖ against (2C)^{-n-2}.
  std::vector<double> gaps;
  std::vector<double> targets;
  /// Σ C^{n+1}‖y_n‖ over the telescoping differences y_n.
  double weighted_sum = 0.0;
  bool verified = true;
};

/// Subsequence k_n with ‖x_i − x_j‖ ≤ (2C)^{-n-2} for all i, j ≥ k_n in the prefix.
CauchyExtraction extract_cauchy_subsequence(std::span<const StepFunction> xs, const QuasinormSpec& X,
                                            std::size_t count);

struct FatouReport {
  std::vector<double> norms;
  double limit_norm = 0.0;
  double liminf = 0.0;
  /// |f_k| ≤ |f_{k+1}| a.e. along the family.
  bool monotone_family = false;
  bool monotone_part = true;
  bool liminf_part = true;
  std::string witness;

  bool passed() const { return monotone_part && liminf_part; }
};

/// For monotone families: ‖f_k‖ non-decreasing and reaching ‖f‖ (when f_k = f
/// eventually). Always: ‖f‖ ≤ liminf ‖f_k‖, with liminf taken over the last half.
FatouReport fatou_checks(std::span<const StepFunction> family, const StepFunction& limit, const QuasinormSpec& X,
                         double tolerance = 1e-9);

/// f χ_{(−k,k)ⁿ} for k = 1..count.
std::vector<StepFunction> truncation_family(const StepFunction& f, int count);
/// χ_(k,k+1) for k = 0..count−1; pointwise limit 0.
std::vector<StepFunction> sliding_bump_family(int count);

using Functional = std::function<Rational(const StepFunction&)>;

struct ResonanceWitness {
  Rational C;
  int prefix = 0;
  std::vector<StepFunction> generators;
  std::vector<double> generator_norms;
  std::vector<Rational> phi_generators;
  /// Σ_{n≤prefix} (2C)^{-n-1}|g_n|.
  StepFunction f{1};
  Rational phi_f;
  /// Σ_{n≤prefix} C^{n+1}‖(2C)^{-n-1}g_n‖ and the bound 2^{-prefix-1} on the rest.
  double weighted_prefix = 0.0;
  double weighted_tail = 0.0;
  /// weighted prefix + tail bounds ‖f‖ for the full series.
  double norm_bound = 0.0;
  double constant = 1.0;
  /// (2C)^{-k-1}Φ(g_k) per k.
  std::vector<Rational> lower_bounds;
  bool dominates = true;
  bool phi_bounds = true;
  bool divergence = true;
  std::string log;

  bool passed() const { return dominates && phi_bounds && divergence; }
};

/// Builds f = Σ (2C)^{-n-1}|g_n| and certifies Φ(f) ≥ (2C)^{-k-1}Φ(g_k) ≥ k/constant.
/// Φ must be monotone on non-negative functions. Throws std::invalid_argument
/// when ‖g_n‖ > 1 or Φ(g_n) ≤ n(2C)^{n+1} for some n ≤ prefix.
ResonanceWitness resonance_witness(const std::function<StepFunction(int)>& generator, const Functional& phi,
                                   const QuasinormSpec& X, int prefix, double constant = 1.0);

/// g_n = R²χ_(0,1/R) with R = (n+1)(2C)^{n+1}: ‖g_n‖_{1/2} = 1 and ∫g_n = R.
StepFunction spike(int n, const Rational& C);

}  // namespace qbfs
