#include "qbfs/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qbfs {

namespace {

bool within(double value, double bound, double tolerance) { return value <= bound * (1.0 + tolerance) + tolerance; }

bool is_l1(const QuasinormSpec& X) { return X.family == "lp" && X.params.count("p") && X.param("p") == 1.0; }

Rational rational_modulus(const QuasinormSpec& X) { return Rational(X.modulus); }

}  // namespace

PrefixSumReport prefix_sum_inequality_check(std::span<const StepFunction> terms, const QuasinormSpec& X, double tolerance) {
  PrefixSumReport report;
  if (terms.empty()) return report;
  StepFunction sum(terms.front().dimension());
  double rhs = 0.0;
  double weight = 1.0;
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < terms.size(); ++n) {
    sum = sum + terms[n];
    weight *= X.modulus;
    rhs += weight * X(terms[n]);
    const double lhs = X(sum);
    report.lhs.push_back(lhs);
    report.rhs.push_back(rhs);
    const double slack = rhs - lhs;
    report.worst_slack = std::min(report.worst_slack, slack);
    if (!within(lhs, rhs, tolerance) && report.passed) {
      report.passed = false;
      report.counterexample_prefix = static_cast<int>(n);
    }
  }
  return report;
}

SeriesGenerator geometric_generator(const Rational& ratio, const StepFunction& h, const QuasinormSpec& X) {
  if (ratio <= 0 || ratio >= 1) throw std::invalid_argument("geometric ratio must lie in (0, 1)");
  const double cr = X.modulus * to_double(ratio);
  if (cr >= 1.0) {
    throw std::invalid_argument("weighted tail diverges: C*ratio = " + std::to_string(cr) + " >= 1");
  }
  const double hn = X(h);
  SeriesGenerator g;
  g.name = "geometric:ratio=" + ratio.get_str();
  g.dimension = h.dimension();
  g.term = [ratio, h](int n) {
    Rational r = 1;
    for (int i = 0; i <= n; ++i) r *= ratio;
    return scale(h, r);
  };
  g.weighted_tail = [hn, cr](int M) { return hn * std::pow(cr, M + 2) / (1.0 - cr); };
  g.remainder = [ratio, h](int M) {
    Rational r = 1;
    for (int i = 0; i < M + 2; ++i) r *= ratio;
    return scale(h, Rational(r / (1 - ratio)));
  };
  g.limit = scale(h, Rational(ratio / (1 - ratio)));
  return g;
}

SeriesGenerator disjoint_generator(const QuasinormSpec& X) {
  const double C = X.modulus;
  if (C >= 2.0) throw std::invalid_argument("weighted tail diverges: C = " + std::to_string(C) + " >= 2");
  if (!X.rearrangement_invariant) throw std::invalid_argument("disjoint generator needs a rearrangement-invariant norm");
  constexpr int depth = 48;
  const double unit = X(StepFunction::indicator(Box::interval(0, 1)));
  SeriesGenerator g;
  g.name = "disjoint";
  g.term = [](int n) { return StepFunction::constant(Box::interval(n, n + 1), ComplexRational(pow2(-n))); };
  // Σ_{n>M} C^{n+1} 2^{-n} ‖χ_(0,1)‖.
  g.weighted_tail = [unit, C](int M) { return unit * C * std::pow(C / 2.0, M + 1) / (1.0 - C / 2.0); };
  g.remainder = [term = g.term](int M) {
    StepFunction r(1);
    for (int n = M + 1; n <= M + depth; ++n) r = r + term(n);
    return r;
  };
  if (is_l1(X)) {
    // Additivity over disjoint supports: the truncated remainder plus the exact geometric rest.
    g.exact_remainder_norm = [rem = g.remainder](int M) -> std::optional<Rational> {
      return integrate_abs(rem(M)) + pow2(-(M + depth));
    };
  }
  return g;
}

SeriesGenerator single_term_generator(const StepFunction& h) {
  SeriesGenerator g;
  g.name = "single";
  g.dimension = h.dimension();
  g.term = [h](int n) { return n == 0 ? h : StepFunction(h.dimension()); };
  g.weighted_tail = [](int) { return 0.0; };
  g.remainder = [h](int) { return StepFunction(h.dimension()); };
  g.limit = h;
  return g;
}

SeriesGenerator parse_generator(const std::string& text, const QuasinormSpec& X) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::map<std::string, std::string> args;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string part;
    while (std::getline(ss, part, ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("generator argument '" + part + "' lacks '='");
      args[part.substr(0, eq)] = part.substr(eq + 1);
    }
  }
  const StepFunction unit = StepFunction::indicator(Box::interval(0, 1));
  if (kind == "geometric") {
    Rational ratio(1, 4);
    for (const auto& [k, v] : args) {
      if (k != "ratio") throw std::invalid_argument("unknown generator argument '" + k + "'");
      ratio = parse_rational(v);
    }
    return geometric_generator(ratio, unit, X);
  }
  if (!args.empty()) throw std::invalid_argument("generator '" + kind + "' takes no arguments");
  if (kind == "disjoint") return disjoint_generator(X);
  if (kind == "single") return single_term_generator(unit);
  throw std::invalid_argument("unknown generator '" + kind + "'");
}

SeriesCertificate riesz_fischer_sum(const SeriesGenerator& gen, const QuasinormSpec& X, int prefix,
                                    double tolerance) {
  if (prefix < 0) throw std::invalid_argument("prefix must be non-negative");
  const double tail = gen.weighted_tail(prefix);
  if (!std::isfinite(tail)) throw std::invalid_argument("tail condition unverifiable for generator " + gen.name);
  SeriesCertificate cert;
  cert.C = X.modulus;
  cert.prefix = prefix;
  cert.limit = gen.limit;
  std::vector<double> weighted;
  double weight = 1.0;
  for (int n = 0; n <= prefix; ++n) {
    cert.terms.push_back(gen.term(n));
    cert.term_norms.push_back(X(cert.terms.back()));
    weight *= cert.C;
    weighted.push_back(weight * cert.term_norms.back());
    cert.weighted_prefix += weighted.back();
  }
  cert.tail_bounds.assign(prefix + 1, 0.0);
  double running = tail;
  for (int M = prefix; M >= 0; --M) {
    cert.tail_bounds[M] = running;
    running += weighted[M];
  }

  StepFunction s(cert.terms.front().dimension());
  StepFunction t(s.dimension());
  for (int M = 0; M <= prefix; ++M) {
    s = s + cert.terms[M];
    cert.partial_sums.push_back(s);
    const StepFunction t_next = t + abs(cert.terms[M]);
    if (!dominated(t, t_next)) cert.t_monotone = false;
    t = t_next;
    cert.t_norms.push_back(X(t));
    if (M > 0 && !within(cert.t_norms[M - 1], cert.t_norms[M], tolerance)) cert.t_monotone = false;
  }
  for (int M = 0; M <= prefix; ++M) {
    std::optional<Rational> exact = gen.exact_remainder_norm ? gen.exact_remainder_norm(M) : std::nullopt;
    double r = 0.0;
    if (exact) {
      r = to_double(*exact);
    } else if (gen.remainder) {
      r = X(gen.remainder(M));
    } else if (gen.limit) {
      r = X(*gen.limit - cert.partial_sums[M]);
    } else {
      throw std::invalid_argument("generator " + gen.name + " has no remainder representation");
    }
    cert.exact_remainders.push_back(exact);
    cert.remainder_norms.push_back(r);
    if (!within(r, cert.tail_bounds[M], tolerance)) cert.remainder_within_tail = false;
    if (M > 0 && !within(r, cert.remainder_norms[M - 1], tolerance)) cert.remainder_monotone = false;
    cert.cauchy.push_back(X(cert.partial_sums.back() - cert.partial_sums[M]));
    if (!within(cert.cauchy.back(), cert.tail_bounds[M], tolerance)) cert.cauchy_within_tail = false;
  }
  cert.prefix_inequality_holds = prefix_sum_inequality_check(cert.terms, X, tolerance).passed;
  return cert;
}

CauchyExtraction extract_cauchy_subsequence(std::span<const StepFunction> xs, const QuasinormSpec& X,
                                            std::size_t count) {
  CauchyExtraction out;
  const std::size_t m = xs.size();
  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) d[i][j] = d[j][i] = X(xs[i] - xs[j]);
  }
  // suffix_diam[k] = max_{i,j ≥ k} d[i][j].
  std::vector<double> suffix_diam(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) {
    double row = 0.0;
    for (std::size_t j = k; j < m; ++j) row = std::max(row, d[k][j]);
    suffix_diam[k] = std::max(suffix_diam[k + 1], row);
  }
  const double two_c = 2.0 * X.modulus;
  std::size_t start = 0;
  for (std::size_t n = 0; n < count; ++n) {
    const double target = std::pow(two_c, -static_cast<double>(n) - 2.0);
    std::size_t k = start;
    while (k + 1 < m && suffix_diam[k] > target) ++k;
    if (k + 1 >= m) {
      out.verified = false;
      break;
    }
    out.indices.push_back(k);
    out.targets.push_back(target);
    start = k + 1;
  }
  double weight = 1.0;
  for (std::size_t n = 0; n + 1 < out.indices.size(); ++n) {
    const double gap = d[out.indices[n]][out.indices[n + 1]];
    out.gaps.push_back(gap);
    weight *= X.modulus;
    out.weighted_sum += weight * gap;
    if (gap > out.targets[n]) out.verified = false;
  }
  return out;
}

FatouReport fatou_checks(std::span<const StepFunction> family, const StepFunction& limit, const QuasinormSpec& X,
                         double tolerance) {
  if (family.empty()) throw std::invalid_argument("empty family");
  FatouReport r;
  r.limit_norm = X(limit);
  r.monotone_family = true;
  for (std::size_t k = 0; k < family.size(); ++k) {
    r.norms.push_back(X(family[k]));
    if (k > 0 && !dominated(family[k - 1], family[k])) r.monotone_family = false;
  }
  if (r.monotone_family) {
    for (std::size_t k = 1; k < r.norms.size(); ++k) {
      if (!within(r.norms[k - 1], r.norms[k], tolerance)) {
        r.monotone_part = false;
        r.witness = "norm decreases at k=" + std::to_string(k);
      }
    }
    if (!within(r.norms.back(), r.limit_norm, tolerance)) {
      r.monotone_part = false;
      r.witness = "norm exceeds the limit norm";
    }
    if (dominated(limit, family.back()) && std::abs(r.norms.back() - r.limit_norm) > tolerance * std::max(1.0, r.limit_norm)) {
      r.monotone_part = false;
      r.witness = "family reaches f but the norm differs from ||f||";
    }
  }
  const std::size_t half = family.size() / 2;
  r.liminf = *std::min_element(r.norms.begin() + static_cast<std::ptrdiff_t>(half), r.norms.end());
  if (!within(r.limit_norm, r.liminf, tolerance)) {
    r.liminf_part = false;
    r.witness = "||f|| = " + std::to_string(r.limit_norm) + " > liminf = " + std::to_string(r.liminf);
  }
  return r;
}

std::vector<StepFunction> truncation_family(const StepFunction& f, int count) {
  std::vector<StepFunction> out;
  for (int k = 1; k <= count; ++k) {
    const Box window(std::vector<Interval>(f.dimension(), Interval{Rational(-k), Rational(k)}));
    out.push_back(restrict(f, std::span<const Box>(&window, 1)));
  }
  return out;
}

std::vector<StepFunction> sliding_bump_family(int count) {
  std::vector<StepFunction> out;
  for (int k = 0; k < count; ++k) out.push_back(StepFunction::indicator(Box::interval(k, k + 1)));
  return out;
}

StepFunction spike(int n, const Rational& C) {
  if (n < 0) throw std::invalid_argument("spike index must be non-negative");
  Rational R = n + 1;
  for (int i = 0; i <= n; ++i) R *= 2 * C;
  return StepFunction::constant(Box::interval(0, Rational(1 / R)), ComplexRational(Rational(R * R)));
}

ResonanceWitness resonance_witness(const std::function<StepFunction(int)>& generator, const Functional& phi,
                                   const QuasinormSpec& X, int prefix, double constant) {
  if (prefix < 0) throw std::invalid_argument("prefix must be non-negative");
  if (!(constant > 0.0)) throw std::invalid_argument("constant must be positive");
  ResonanceWitness w;
  w.C = rational_modulus(X);
  w.prefix = prefix;
  w.constant = constant;
  const Rational two_c = 2 * w.C;
  Rational rate = two_c;  // (2C)^{n+1}
  Rational inv = 1 / two_c;  // (2C)^{-n-1}
  std::ostringstream log;
  for (int n = 0; n <= prefix; ++n) {
    StepFunction g = generator(n);
    const double norm = X(g);
    if (norm > 1.0 + 1e-12) {
      throw std::invalid_argument("rate precondition unmet: ||g_" + std::to_string(n) + "|| = " + std::to_string(norm) +
                                  " > 1");
    }
    const Rational value = phi(g);
    if (!(value > n * rate)) {
      throw std::invalid_argument("rate precondition unmet: Phi(g_" + std::to_string(n) + ") = " + value.get_str() +
                                  " <= n(2C)^{n+1} = " + Rational(n * rate).get_str());
    }
    const StepFunction part = scale(abs(g), inv);
    w.f = n == 0 ? part : w.f + part;
    w.weighted_prefix += std::pow(X.modulus, n + 1) * X(part);
    w.generators.push_back(std::move(g));
    w.generator_norms.push_back(norm);
    w.phi_generators.push_back(value);
    w.lower_bounds.push_back(inv * value);
    log << "n=" << n << " Phi(g_n)=" << value.get_str() << " (2C)^{-n-1}Phi(g_n)=" << w.lower_bounds.back().get_str()
        << "\n";
    rate *= two_c;
    inv /= two_c;
  }
  // C^{n+1}(2C)^{-n-1}‖g_n‖ ≤ 2^{-n-1}, summed over n > prefix.
  w.weighted_tail = std::ldexp(1.0, -prefix - 1);
  w.norm_bound = w.weighted_prefix + w.weighted_tail;
  w.phi_f = phi(w.f);
  inv = 1 / two_c;
  for (int k = 0; k <= prefix; ++k) {
    if (!dominated(scale(abs(w.generators[k]), inv), w.f)) w.dominates = false;
    if (!(w.phi_f >= w.lower_bounds[k])) w.phi_bounds = false;
    if (to_double(w.lower_bounds[k]) < static_cast<double>(k) / constant) w.divergence = false;
    inv /= two_c;
  }
  w.log = log.str();
  return w;
}

}  // namespace qbfs
