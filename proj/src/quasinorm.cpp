#include "qbfs/quasinorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qbfs {

namespace {

double magnitude_pow(const ComplexRational& v, double p) {
  if (v.is_real()) return std::pow(std::abs(to_double(v.re)), p);
  return std::pow(to_double(v.norm2()), p / 2.0);
}

// t_j^r - t_{j-1}^r with the difference taken before the power, so short
// steps far from the origin keep full relative accuracy.
double power_increment(const Rational& lo, const Rational& hi, double r) {
  if (lo == 0) return std::pow(to_double(hi), r);
  const double rel = to_double(Rational((hi - lo) / lo));
  return std::pow(to_double(lo), r) * std::expm1(r * std::log1p(rel));
}

double lorentz_cells(std::span<const double> magnitudes, std::span<const double> measures, double p, double q) {
  std::vector<std::size_t> order(magnitudes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return magnitudes[a] > magnitudes[b]; });
  const double r = q / p;
  double t = 0.0;
  double sum = 0.0;
  for (auto i : order) {
    if (magnitudes[i] <= 0.0 || measures[i] <= 0.0) continue;
    const double next = t + measures[i];
    const double inc = t == 0.0 ? std::pow(next, r) : std::pow(t, r) * std::expm1(r * std::log1p(measures[i] / t));
    sum += std::pow(magnitudes[i], q) * (p / q) * inc;
    t = next;
  }
  return std::pow(sum, 1.0 / q);
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

QuasinormSpec with_tail_oracle(QuasinormSpec s) {
  auto copy = std::make_shared<QuasinormSpec>(s);
  s.tail_threshold = [copy](const StepFunction& f, double eps) { return bisect_tail_threshold(*copy, f, eps); };
  return s;
}

}  // namespace

double QuasinormSpec::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument(name + " has no parameter " + key);
  return it->second;
}

double lp_norm(const StepFunction& f, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("L^p needs p > 0");
  double sum = 0.0;
  for (const auto& piece : f.pieces()) sum += magnitude_pow(piece.value, p) * to_double(piece.region.measure());
  return std::pow(sum, 1.0 / p);
}

double lorentz_norm(const RearrangementProfile& profile, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("L^{p,q} needs p, q > 0");
  const double r = q / p;
  const auto& t = profile.breakpoints();
  const auto& v = profile.values();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    sum += std::pow(to_double(v[j]), q) * (p / q) * power_increment(t[j], t[j + 1], r);
  }
  return std::pow(sum, 1.0 / q);
}

double lorentz_norm(const StepFunction& f, double p, double q) {
  try {
    return lorentz_norm(nonincreasing_rearrangement(f), p, q);
  } catch (const std::domain_error&) {
    std::vector<double> mags;
    std::vector<double> meas;
    for (const auto& piece : f.pieces()) {
      mags.push_back(piece.value.modulus_double());
      meas.push_back(to_double(piece.region.measure()));
    }
    return lorentz_cells(mags, meas, p, q);
  }
}

double sup_norm(const StepFunction& f) {
  double out = 0.0;
  for (const auto& piece : f.pieces()) out = std::max(out, piece.value.modulus_double());
  return out;
}

double lp_modulus(double p) { return std::max(1.0, std::pow(2.0, 1.0 / p - 1.0)); }

double lorentz_default_modulus(double p, double q) {
  return std::pow(2.0, 1.0 / std::min({p, q, 1.0}) - 1.0) * std::pow(2.0, std::max(0.0, 1.0 / p - 1.0 / q));
}

QuasinormSpec lebesgue(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("L^p needs p > 0");
  QuasinormSpec s;
  s.name = "lp:p=" + format_double(p);
  s.family = "lp";
  s.params = {{"p", p}};
  s.modulus = lp_modulus(p);
  s.evaluate = [p](const StepFunction& f) { return lp_norm(f, p); };
  s.evaluate_profile = [p](const RearrangementProfile& g) {
    double sum = 0.0;
    const auto& t = g.breakpoints();
    for (std::size_t j = 0; j < g.size(); ++j) sum += std::pow(to_double(g.values()[j]), p) * to_double(Rational(t[j + 1] - t[j]));
    return std::pow(sum, 1.0 / p);
  };
  s.evaluate_cells = [p](std::span<const double> mags, std::span<const double> meas) {
    double sum = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) sum += std::pow(mags[i], p) * meas[i];
    return std::pow(sum, 1.0 / p);
  };
  return with_tail_oracle(std::move(s));
}

QuasinormSpec lorentz(double p, double q, double modulus) {
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("L^{p,q} needs p, q > 0");
  QuasinormSpec s;
  s.name = "lorentz:p=" + format_double(p) + ",q=" + format_double(q);
  s.family = "lorentz";
  s.params = {{"p", p}, {"q", q}};
  s.modulus = modulus > 0.0 ? modulus : lorentz_default_modulus(p, q);
  if (s.modulus < 1.0) throw std::invalid_argument("modulus of concavity must be >= 1");
  s.evaluate = [p, q](const StepFunction& f) { return lorentz_norm(f, p, q); };
  s.evaluate_profile = [p, q](const RearrangementProfile& g) { return lorentz_norm(g, p, q); };
  s.evaluate_cells = [p, q](std::span<const double> mags, std::span<const double> meas) {
    return lorentz_cells(mags, meas, p, q);
  };
  return with_tail_oracle(std::move(s));
}

QuasinormSpec supremum() {
  QuasinormSpec s;
  s.name = "linf";
  s.family = "linf";
  s.modulus = 1.0;
  s.evaluate = [](const StepFunction& f) { return sup_norm(f); };
  s.evaluate_profile = [](const RearrangementProfile& g) { return g.is_zero() ? 0.0 : to_double(g.values().front()); };
  s.evaluate_cells = [](std::span<const double> mags, std::span<const double> meas) {
    double out = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
      if (meas[i] > 0.0) out = std::max(out, mags[i]);
    }
    return out;
  };
  return with_tail_oracle(std::move(s));
}

namespace {

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("norm parameter '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    out[key] = value == "inf" ? std::numeric_limits<double>::infinity() : to_double(parse_rational(value));
  }
  return out;
}

}  // namespace

QuasinormSpec parse_norm(const std::string& selector) {
  const auto colon = selector.find(':');
  const std::string family = selector.substr(0, colon);
  const auto params = colon == std::string::npos ? std::map<std::string, double>{} : parse_params(selector.substr(colon + 1));
  auto need = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) throw std::invalid_argument("norm '" + selector + "' needs parameter " + key);
    return it->second;
  };
  for (const auto& [key, value] : params) {
    static const std::set<std::string> known{"p", "q", "C"};
    if (!known.count(key)) throw std::invalid_argument("unknown norm parameter '" + key + "'");
  }
  if (family == "lp") {
    const double p = need("p");
    if (std::isinf(p)) return supremum();
    return lebesgue(p);
  }
  if (family == "lorentz") {
    auto c = params.find("C");
    return lorentz(need("p"), need("q"), c == params.end() ? 0.0 : c->second);
  }
  if (family == "linf" || family == "sup") return supremum();
  throw std::invalid_argument("unknown norm family '" + family + "'");
}

Rational bisect_tail_threshold(const QuasinormSpec& spec, const StepFunction& f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("tail threshold needs eps > 0");
  auto tail = [&](const Rational& N) {
    std::vector<Interval> sides(f.dimension(), Interval{-N, N});
    const Box cube(std::move(sides));
    const double high = spec(restrict_level(f, N, true));
    const double far = N == 0 ? spec(f) : spec(restrict_complement(f, std::span<const Box>(&cube, 1)));
    return std::max(high, far);
  };
  if (tail(Rational(0)) < eps) return Rational(0);
  mpz_class hi(1);
  while (!(tail(Rational(hi)) < eps)) {
    hi *= 2;
    if (hi > mpz_class("1000000000000000000")) throw std::runtime_error("tail threshold search diverged");
  }
  mpz_class lo = hi / 2;  // tail(lo) >= eps (or lo = 0)
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (tail(Rational(mid)) < eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return Rational(hi);
}

double aoki_rolewicz_exponent(double C) {
  if (!(C >= 1.0)) throw std::invalid_argument("modulus of concavity must be >= 1");
  return 1.0 / std::log2(2.0 * C);
}

bool AxiomReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& AxiomReport::check(const std::string& id) const {
  for (const auto& c : checks) {
    if (c.id == id) return c;
  }
  throw std::out_of_range("no axiom check named " + id);
}

namespace {

void fail(AxiomCheck& c, double worst, std::string witness) {
  if (c.passed || worst > c.worst) c.witness = std::move(witness);
  c.passed = false;
}

AxiomCheck make_check(std::string id, std::string anchor) {
  AxiomCheck c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  return c;
}

double box_extent(const Box& b) {
  double out = 0.0;
  for (const auto& s : b.sides()) out = std::max({out, std::abs(to_double(s.lo)), std::abs(to_double(s.hi))});
  return out;
}

}  // namespace

AxiomReport check_quasinorm_axioms(const QuasinormSpec& spec, std::span<const StepFunction> samples,
                                   const AxiomOptions& options) {
  if (samples.empty()) throw std::invalid_argument("axiom check needs samples");
  const double tol = options.tolerance;
  AxiomReport report;
  report.norm = spec.name;
  report.modulus = spec.modulus;

  std::vector<double> norms;
  norms.reserve(samples.size());
  for (const auto& f : samples) norms.push_back(spec(f));

  AxiomCheck modulus_of_abs = make_check("abs_invariance", "quasinorm definition: ||f|| = || |f| ||");
  AxiomCheck homogeneity = make_check("homogeneity", "quasinorm definition: positive homogeneity");
  AxiomCheck definiteness = make_check("definiteness", "quasinorm definition: ||f|| = 0 iff f = 0 a.e.");
  AxiomCheck triangle = make_check("quasi_triangle", "quasinorm definition: ||f+g|| <= C(||f||+||g||)");
  AxiomCheck lattice = make_check("lattice", "lattice property");
  AxiomCheck fatou = make_check("fatou", "Fatou property");
  AxiomCheck indicators = make_check("indicator_finite", "finiteness on indicators of finite-measure sets");

  const std::vector<ComplexRational> scalars{
      ComplexRational(0),           ComplexRational(Rational(1, 3)), ComplexRational(2),
      ComplexRational(Rational(-7, 4)), ComplexRational(Rational(3, 5), Rational(4, 5)),
      ComplexRational(Rational(5, 2), Rational(-6))};

  const double zero_norm = spec(StepFunction(samples.front().dimension()));
  definiteness.cases++;
  if (zero_norm != 0.0) fail(definiteness, zero_norm, "zero function");

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& f = samples[i];
    const std::string tag = "samples[" + std::to_string(i) + "]";

    definiteness.cases++;
    if ((norms[i] == 0.0) != f.is_zero()) fail(definiteness, norms[i], tag);

    StepFunction af;
    bool has_abs = true;
    try {
      af = abs(f);
    } catch (const std::domain_error&) {
      has_abs = false;
    }
    if (has_abs) {
      modulus_of_abs.cases++;
      const double gap = relative_gap(spec(af), norms[i]);
      modulus_of_abs.worst = std::max(modulus_of_abs.worst, gap);
      if (gap > tol) fail(modulus_of_abs, gap, tag);
    }

    for (const auto& a : scalars) {
      const double abs_a = to_double(*a.modulus());
      const double expect = abs_a * norms[i];
      const double gap = relative_gap(spec(scale(f, a)), expect);
      homogeneity.cases++;
      homogeneity.worst = std::max(homogeneity.worst, gap);
      if (gap > tol) fail(homogeneity, gap, tag + " scaled by " + to_string(a));
    }

    if (f.is_zero()) continue;

    indicators.cases++;
    {
      std::vector<Piece> ones;
      for (const auto& p : f.pieces()) ones.push_back({p.region, ComplexRational(1)});
      const double n_ind = spec(StepFunction::from_pieces(f.dimension(), std::move(ones)));
      if (!std::isfinite(n_ind) || !(n_ind > 0.0)) fail(indicators, n_ind, "indicator of supp " + tag);
    }

    if (!has_abs) continue;

    // Lattice: half-support restriction and a height truncation, both below |f|.
    const auto support = f.support();
    std::vector<Box> half(support.begin(), support.begin() + static_cast<std::ptrdiff_t>((support.size() + 1) / 2));
    std::vector<Rational> heights;
    for (const auto& p : af.pieces()) heights.push_back(p.value.re);
    std::sort(heights.begin(), heights.end());
    const Rational cap = heights[heights.size() / 2];
    const StepFunction capped = pointwise_combine(af, StepFunction::constant(f.bounding_box(), ComplexRational(cap)),
                                                  CombineOp::min);
    for (const StepFunction& h : {restrict(af, half), capped}) {
      if (!dominated(h, af)) {
        fail(lattice, 0.0, "dominance precondition broke for " + tag);
        continue;
      }
      lattice.cases++;
      const double nh = spec(h);
      const double excess = (nh - norms[i]) / std::max(1.0, norms[i]);
      lattice.worst = std::max(lattice.worst, excess);
      if (excess > tol) fail(lattice, excess, tag);
    }

    // Fatou: f_k = min(|f|, k) χ_{(-k,k)^n} increases to |f|.
    const double reach = std::max(box_extent(f.bounding_box()), std::sqrt(to_double(f.max_norm2())));
    double previous = 0.0;
    double last = 0.0;
    bool monotone = true;
    for (Rational k(1, 4);; k *= 2) {
      std::vector<Interval> sides(f.dimension(), Interval{-k, k});
      const Box window(std::move(sides));
      const StepFunction fk = pointwise_combine(restrict(af, std::span<const Box>(&window, 1)),
                                                StepFunction::constant(window, ComplexRational(k)), CombineOp::min);
      last = spec(fk);
      fatou.cases++;
      if (last < previous * (1.0 - tol)) monotone = false;
      previous = last;
      if (to_double(k) > reach) break;
    }
    const double gap = relative_gap(last, norms[i]);
    fatou.worst = std::max(fatou.worst, gap);
    if (!monotone || gap > tol) fail(fatou, gap, tag);
  }

  // Quasi-triangle inequality over sample pairs.
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (options.max_pairs != 0 && pairs >= options.max_pairs) break;
      ++pairs;
      const double denom = norms[i] + norms[j];
      const double sum = spec(samples[i] + samples[j]);
      const double ratio = denom == 0.0 ? 0.0 : sum / denom;
      triangle.cases++;
      if (ratio > report.empirical_modulus) {
        report.empirical_modulus = ratio;
        report.empirical_witness = "samples[" + std::to_string(i) + "] + samples[" + std::to_string(j) + "]";
      }
      if (ratio > spec.modulus * (1.0 + tol)) fail(triangle, ratio, report.empirical_witness);
    }
  }
  triangle.worst = report.empirical_modulus;
  triangle.witness = report.empirical_witness;

  // (P5) diagnostic: ∫_E |g| / ‖g‖ with E the bounding box of a sample.
  const std::size_t sets = std::min<std::size_t>(samples.size(), 16);
  for (std::size_t e = 0; e < sets; ++e) {
    if (samples[e].is_zero()) continue;
    const Box E = samples[e].bounding_box();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (norms[i] == 0.0) continue;
      double integral = 0.0;
      for (const auto& p : samples[i].pieces()) {
        if (p.region.overlaps(E)) integral += p.value.modulus_double() * to_double(p.region.intersect(E).measure());
      }
      report.p5_worst_constant = std::max(report.p5_worst_constant, integral / norms[i]);
    }
  }

  report.checks = {modulus_of_abs, definiteness, fatou, homogeneity, indicators, lattice, triangle};
  return report;
}

SubadditivityReport check_r_subadditivity(const QuasinormSpec& spec, std::span<const StepFunction> samples,
                                          std::size_t group, double K) {
  if (group == 0) throw std::invalid_argument("group size must be positive");
  SubadditivityReport out;
  out.exponent = aoki_rolewicz_exponent(spec.modulus);
  const double r = out.exponent;
  for (std::size_t start = 0; start + group <= samples.size(); start += group) {
    StepFunction sum(samples[start].dimension());
    double rhs = 0.0;
    for (std::size_t i = start; i < start + group; ++i) {
      sum = sum + samples[i];
      rhs += std::pow(spec(samples[i]), r);
    }
    if (rhs == 0.0) continue;
    const double ratio = std::pow(spec(sum), r) / rhs;
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    if (ratio > K * (1.0 + 1e-12)) out.passed = false;
  }
  return out;
}

}  // namespace qbfs
