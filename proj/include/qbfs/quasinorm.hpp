#pragma once

#include "qbfs/rearrangement.hpp"
#include "qbfs/step_function.hpp"

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qbfs {

/// Evaluates the quasinorm of a function given as |values| on cells of given measure.
using CellEvaluator = std::function<double(std::span<const double> magnitudes, std::span<const double> measures)>;
/// Smallest threshold N with ‖f χ_{|f|>N}‖ < ε and ‖f χ_{|x|∞>N}‖ < ε.
using TailOracle = std::function<Rational(const StepFunction& f, double eps)>;

struct QuasinormSpec {
  std::string name;
  std::string family;
  std::map<std::string, double> params;
  double modulus = 1.0;
  bool rearrangement_invariant = true;
  std::function<double(const StepFunction&)> evaluate;
  std::function<double(const RearrangementProfile&)> evaluate_profile;
  CellEvaluator evaluate_cells;
  TailOracle tail_threshold;

  double operator()(const StepFunction& f) const { return evaluate(f); }
  double param(const std::string& key) const;
};

double lp_norm(const StepFunction& f, double p);
double lorentz_norm(const StepFunction& f, double p, double q);
double lorentz_norm(const RearrangementProfile& profile, double p, double q);
double sup_norm(const StepFunction& f);

/// max(1, 2^{1/p - 1}).
double lp_modulus(double p);
/// 2^{1/min(p,q,1) - 1} · 2^{max(0, 1/p - 1/q)}.
double lorentz_default_modulus(double p, double q);

QuasinormSpec lebesgue(double p);
/// modulus <= 0 selects lorentz_default_modulus.
QuasinormSpec lorentz(double p, double q, double modulus = 0.0);
QuasinormSpec supremum();

/// "lp:p=0.5", "lorentz:p=2,q=0.5[,C=4]", "linf". Throws std::invalid_argument.
QuasinormSpec parse_norm(const std::string& selector);

/// Doubling then bisection over integer N, using the spec's own evaluator.
Rational bisect_tail_threshold(const QuasinormSpec& spec, const StepFunction& f, double eps);

/// r = 1 / log2(2C); throws for C < 1.
double aoki_rolewicz_exponent(double C);

struct AxiomCheck {
  std::string id;
  std::string anchor;
  bool passed = true;
  std::size_t cases = 0;
  double worst = 0.0;
  std::string witness;
};

struct AxiomReport {
  std::string norm;
  double modulus = 1.0;
  std::vector<AxiomCheck> checks;
  /// max ‖f+g‖ / (‖f‖+‖g‖) over sampled pairs.
  double empirical_modulus = 0.0;
  std::string empirical_witness;
  /// Largest ∫_E |f| / ‖f‖ seen per sampled set E; diagnostic only.
  double p5_worst_constant = 0.0;

  bool passed() const;
  const AxiomCheck& check(const std::string& id) const;
};

struct AxiomOptions {
  double tolerance = 1e-12;
  std::size_t max_pairs = 0;
};

/// Homogeneity, definiteness, C-triangle inequality, lattice property, Fatou
/// along truncations, finiteness on indicators, plus a (P5) diagnostic.
AxiomReport check_quasinorm_axioms(const QuasinormSpec& spec, std::span<const StepFunction> samples,
                                   const AxiomOptions& options = {});

struct SubadditivityReport {
  double exponent = 1.0;
  double worst_ratio = 0.0;
  bool passed = true;
};

/// ‖Σ x_i‖^r ≤ K Σ ‖x_i‖^r over consecutive sample groups of the given size.
SubadditivityReport check_r_subadditivity(const QuasinormSpec& spec, std::span<const StepFunction> samples,
                                          std::size_t group, double K);

}  // namespace qbfs
