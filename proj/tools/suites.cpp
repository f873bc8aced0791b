#include "suites.hpp"

#include "qbfs/approximation.hpp"
#include "qbfs/associate.hpp"
#include "qbfs/dilation.hpp"
#include "qbfs/quasinorm.hpp"
#include "qbfs/rearrangement.hpp"
#include "qbfs/sampling.hpp"
#include "qbfs/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qbfs::cli {

namespace {

class Tally {
 public:
  Tally(std::string id, std::string anchor) {
    a_.id = std::move(id);
    a_.anchor = std::move(anchor);
    a_.margin = std::numeric_limits<double>::infinity();
  }

  void record(bool ok, double margin, const std::string& witness = {}) {
    ++a_.cases;
    if (margin < a_.margin) {
      a_.margin = margin;
      if (a_.passed) a_.witness = witness;
    }
    if (!ok && a_.passed) {
      a_.passed = false;
      a_.witness = witness;
    }
  }

  Assertion done() const {
    Assertion out = a_;
    if (!std::isfinite(out.margin)) out.margin = 0.0;
    return out;
  }

 private:
  Assertion a_;
};

std::size_t or_default(std::size_t value, std::size_t fallback) { return value == 0 ? fallback : value; }

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

QuasinormSpec norm_or(const RunConfig& c, const std::string& fallback) {
  return parse_norm(c.norm.empty() ? fallback : c.norm);
}

Json profile_summary(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Report suite_axioms(const RunConfig& c) {
  const auto X = norm_or(c, "lp:p=0.5");
  SampleOptions opt;
  opt.dimension = c.n;
  const auto samples = sample_set(c.seed, or_default(c.samples, 200), opt);
  const auto rep = check_quasinorm_axioms(X, samples);
  Report r;
  for (const auto& check : rep.checks) {
    // The triangle check records the worst ratio; the others record the worst defect.
    const double margin = check.id == "quasi_triangle" ? X.modulus - check.worst : AxiomOptions{}.tolerance - check.worst;
    r.assertions.push_back({"axioms." + check.id, check.anchor, check.passed, margin, check.cases, check.witness});
  }
  Tally modulus("axioms.empirical_modulus", "modulus of concavity");
  modulus.record(rep.empirical_modulus <= X.modulus * (1.0 + c.tolerance), X.modulus - rep.empirical_modulus,
                 rep.empirical_witness);
  r.assertions.push_back(modulus.done());
  const auto sub = check_r_subadditivity(X, samples, 4, 4.0);
  Tally ar("axioms.r_subadditivity", "Aoki-Rolewicz theorem");
  ar.record(sub.passed, 4.0 - sub.worst_ratio, "r = " + fmt(sub.exponent));
  r.assertions.push_back(ar.done());
  r.data["norm"] = X.name;
  r.data["modulus"] = X.modulus;
  r.data["empirical_modulus"] = rep.empirical_modulus;
  r.data["empirical_witness"] = rep.empirical_witness;
  r.data["aoki_rolewicz_exponent"] = sub.exponent;
  r.data["integrability_constant_diagnostic"] = rep.p5_worst_constant;
  r.data["samples"] = samples.size();
  return r;
}

// Moves piece i far along the first axis by an offset chosen from a permutation;
// the pieces keep their measures and stay disjoint.
StepFunction shuffle_pieces(const StepFunction& f, Sampler& rng) {
  std::vector<std::size_t> perm(f.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.integer(0, static_cast<std::int64_t>(i) - 1)]);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& p = f.pieces()[i];
    auto sides = p.region.sides();
    const Rational shift = Rational(64) * (perm[i] + 1) - sides[0].lo;
    sides[0] = {sides[0].lo + shift, sides[0].hi + shift};
    pieces.push_back({Box(std::move(sides)), p.value});
  }
  return StepFunction::from_pieces(f.dimension(), std::move(pieces));
}

Report suite_rearrangement(const RunConfig& c) {
  Sampler rng(c.seed);
  SampleOptions opt;
  opt.dimension = c.n;
  const std::size_t count = or_default(c.samples, 500);
  Tally equi("rearrangement.equimeasurable", "equimeasurability of the non-increasing rearrangement");
  Tally radial("rearrangement.radial_idempotent", "symmetric rearrangement is equimeasurable");
  Tally idem("rearrangement.idempotent", "rearrangement of a rearrangement");
  Tally shuffle("rearrangement.shuffle_invariant", "invariance under measure-preserving maps");
  std::size_t checked_levels = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto f = rng.step_function(opt);
    const auto prof = nonincreasing_rearrangement(f);
    const auto dist = distribution_function(f);
    std::vector<Rational> levels{Rational(0)};
    for (const auto& v : dist.levels()) levels.push_back(v);
    const std::size_t base = levels.size();
    for (std::size_t j = 0; j + 1 < base; ++j) levels.push_back((levels[j] + levels[j + 1]) / 2);
    bool ok = true;
    std::string witness;
    for (const auto& s : levels) {
      ++checked_levels;
      if (dist(s) != prof.distribution(s)) {
        ok = false;
        witness = "sample " + std::to_string(i) + " at s=" + s.get_str();
      }
    }
    equi.record(ok, ok ? 0.0 : -1.0, witness);
    const bool same = nonincreasing_rearrangement(prof.to_step_function()) == prof;
    idem.record(same, same ? 0.0 : -1.0, "sample " + std::to_string(i));
    const bool rad = rearrangement_of(radial_rearrangement(f)) == prof;
    radial.record(rad, rad ? 0.0 : -1.0, "sample " + std::to_string(i));
    const bool sh = nonincreasing_rearrangement(shuffle_pieces(f, rng)) == prof;
    shuffle.record(sh, sh ? 0.0 : -1.0, "sample " + std::to_string(i));
  }
  Report r;
  r.assertions = {equi.done(), radial.done(), idem.done(), shuffle.done()};
  r.data["samples"] = count;
  r.data["levels_checked"] = checked_levels;
  return r;
}

Report suite_associate(const RunConfig& c) {
  const auto X = norm_or(c, "lp:p=2");
  SampleOptions opt;
  opt.dimension = c.n;
  opt.max_pieces = 4;
  Sampler rng(c.seed);
  const std::size_t count = or_default(c.samples, 20);
  SearchClass search;
  search.refine_level = c.refine;
  search.value_grid = c.value_grid;
  Tally holder("associate.holder_at_witness", "Hoelder inequality for the associate quasinorm");
  Tally holder_class("associate.holder_class", "Hoelder inequality for the associate quasinorm");
  Tally second("associate.second_associate", "embedding into the second associate space");
  const bool lp_dual = X.family == "lp" && X.param("p") > 1.0 && std::isfinite(X.param("p"));
  Tally dual("associate.closed_form_dual", "duality of Lebesgue spaces");
  Json values = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    const auto f = rng.step_function(opt);
    const auto eval = associate_norm(f, X, search);
    const auto h = holder_check(f, eval.witness, X, eval, c.tolerance);
    holder.record(h.passed, h.slack, "sample " + std::to_string(i));
    const auto hc = holder_check_class(f, X, eval, c.tolerance);
    holder_class.record(hc.passed, hc.slack, "sample " + std::to_string(i) + ": " + hc.witness);
    const auto sa = second_associate_lower_bound(f, X, search, c.tolerance);
    second.record(sa.passed, sa.norm - sa.second_associate, "sample " + std::to_string(i));
    Json row{{"value", eval.value}, {"infinite", eval.infinite}, {"candidates", eval.candidates},
             {"exhaustive", eval.exhaustive}, {"witness", eval.witness_description}};
    if (lp_dual) {
      const double p = X.param("p");
      const double closed = lp_norm(f, p / (p - 1.0));
      SearchClass aligned = search;
      aligned.dual_alignment = true;
      const double searched = associate_norm(f, X, aligned).value;
      const double rel = std::abs(searched - closed) / std::max(closed, 1e-300);
      dual.record(rel <= 1e-6 && eval.value <= closed * (1.0 + 1e-9), 1e-6 - rel, "sample " + std::to_string(i));
      row["closed_form"] = closed;
    }
    values.push_back(row);
  }
  Report r;
  r.assertions = {holder.done(), holder_class.done(), second.done()};
  if (lp_dual) r.assertions.push_back(dual.done());
  r.data["norm"] = X.name;
  r.data["evaluations"] = values;
  return r;
}

Report suite_dilation(const RunConfig& c) {
  const auto X = norm_or(c, "lorentz:p=2,q=0.5");
  const auto grid = parse_grid(c.a_grid);
  SampleOptions opt;
  opt.dimension = c.n;
  const auto samples = sample_set(c.seed, or_default(c.samples, 200), opt);
  const auto sweep = dilation_sweep(X, c.n, grid, samples, c.tolerance);
  Report r;
  Tally bound("dilation.bound", "bound on the dilation operator");
  for (const auto& row : sweep.rows) {
    bound.record(row.within_bound, row.bound - row.empirical_ratio, "a=" + row.a.get_str());
    r.csv_rows.push_back({row.a.get_str(), fmt(row.empirical_ratio), fmt(row.bound), row.within_bound ? "true" : "false"});
  }
  r.csv_header = {"a", "empirical_ratio", "bound", "within_bound"};
  Tally mono("dilation.monotone", "monotonicity of dilation norms in the parameter");
  mono.record(sweep.monotone, sweep.monotone ? 0.0 : -1.0, sweep.monotonicity_witness);
  r.assertions = {bound.done(), mono.done()};
  if (c.n == 1) {
    const Rational b(2, 3);
    const auto ratio = empirical_dilation_ratio(X, b, samples);
    Tally lb("dilation.two_thirds", "dilation by 2/3 is bounded by 2C");
    lb.record(ratio.ratio <= 2.0 * X.modulus * (1.0 + c.tolerance), 2.0 * X.modulus - ratio.ratio,
              "sample " + std::to_string(ratio.witness));
    r.assertions.push_back(lb.done());
  }
  if (X.family == "lp" && std::isfinite(X.param("p"))) {
    Tally closed("dilation.lebesgue_closed_form", "dilation identity in Lebesgue spaces");
    const double p = X.param("p");
    for (const auto& a : grid) {
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const double base = X(samples[i]);
        const double expected = std::pow(to_double(a), -static_cast<double>(c.n) / p) * base;
        const double got = X(dilate(samples[i], a));
        const double rel = std::abs(got - expected) / std::max(expected, 1e-300);
        closed.record(rel <= 1e-10, 1e-10 - rel, "a=" + a.get_str() + " sample " + std::to_string(i));
      }
    }
    r.assertions.push_back(closed.done());
  }
  Json rows = Json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back({{"a", to_json(row.a)}, {"empirical_ratio", row.empirical_ratio}, {"bound", row.bound},
                    {"within_bound", row.within_bound}});
  }
  r.data["norm"] = X.name;
  r.data["rows"] = rows;
  return r;
}

Report suite_cover(const RunConfig& c) {
  Sampler rng(c.seed);
  const std::size_t count = or_default(c.samples, 50);
  const std::string anchor = "dyadic cover of a compact set";
  Tally inside("cover.inside_g", anchor);
  Tally covers("cover.covers_k", anchor);
  Tally excess("cover.small_excess", anchor);
  Tally meets("cover.cubes_meet_k", anchor);
  Json instances = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = rng.cover_instance(c.n);
    const auto res = dyadic_cover(inst.K, inst.G, inst.eps, inst.k0);
    const std::string w = "instance " + std::to_string(i);
    inside.record(res.inside_g, res.inside_g ? 0.0 : -1.0, w);
    covers.record(res.covers_k, -to_double(res.missed_measure), w);
    excess.record(res.small_excess, to_double(inst.eps - res.excess_measure), w);
    meets.record(res.cubes_meet_k, res.cubes_meet_k ? 0.0 : -1.0, w);
    instances.push_back({{"eps", to_json(inst.eps)}, {"k0", inst.k0}, {"order", res.order},
                         {"cubes", res.omega.size()}, {"excess", to_json(res.excess_measure)}});
  }
  Report r;
  r.assertions = {inside.done(), covers.done(), excess.done(), meets.done()};
  r.data["instances"] = instances;
  return r;
}

StepFunction read_step_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw std::invalid_argument("malformed input file '" + path + "': " + e.what());
  }
  try {
    return step_function_from_json(j);
  } catch (const Json::exception& e) {
    throw std::invalid_argument("malformed step function in '" + path + "': " + e.what());
  }
}

Json trace_json(const ApproximationTrace& t) {
  return {{"eps", t.eps},
          {"N", to_json(t.N)},
          {"L", t.L},
          {"delta", to_json(t.delta)},
          {"Delta", to_json(t.Delta)},
          {"k0", t.k0},
          {"order", t.order},
          {"cubes", t.cubes},
          {"term_k", t.term_k},
          {"term_e0", t.term_e0},
          {"term_e1", t.term_e1},
          {"term_e_minus_k", t.term_e_minus_k},
          {"term_s_outside", t.term_s_outside},
          {"combined", t.combined},
          {"measured", t.measured},
          {"certified", t.certified},
          {"shortcut", t.shortcut}};
}

Report suite_approximate(const RunConfig& c) {
  const auto X = norm_or(c, "lp:p=0.5");
  const double eps = c.eps > 0.0 ? c.eps : std::ldexp(1.0, -6);
  std::vector<StepFunction> inputs;
  if (!c.input.empty()) {
    inputs.push_back(read_step_function(c.input));
  } else {
    Sampler rng(c.seed);
    SampleOptions opt;
    opt.dimension = c.n;
    opt.dyadic_breakpoints = false;
    for (std::size_t i = 0; i < or_default(c.samples, 10); ++i) inputs.push_back(rng.step_function(opt));
  }
  const std::string anchor = "density of simple functions under absolutely continuous quasinorms";
  Tally bound("approximate.error_bound", anchor);
  Tally budgets("approximate.term_budgets", anchor);
  Tally expansion("approximate.expansion_bound", anchor);
  Json traces = Json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto ap = approximate_simple(inputs[i], X, eps);
    const auto& t = ap.trace;
    const std::string w = "input " + std::to_string(i);
    bound.record(t.measured <= t.certified, t.certified - t.measured, w);
    budgets.record(t.within_budgets(), t.within_budgets() ? 0.0 : -1.0, w);
    expansion.record(t.measured <= t.combined * (1.0 + c.tolerance) + c.tolerance || t.shortcut,
                     t.combined - t.measured, w);
    if (c.trace) traces.push_back(trace_json(t));
  }
  // A function without absolutely continuous norm splits into disjoint pieces of norm > ε.
  const auto sup = supremum();
  const auto split = non_ac_split(StepFunction::indicator(Box::interval(0, 1)), sup, SetSequence::shrink_to_null, 0.5, 5);
  Tally split_ok("approximate.non_ac_split", "decomposition of a function without absolutely continuous norm");
  split_ok.record(split.verified(), *std::min_element(split.norms.begin(), split.norms.end()) - 0.5, "sup norm");
  Report r;
  r.assertions = {bound.done(), budgets.done(), expansion.done(), split_ok.done()};
  r.data["norm"] = X.name;
  r.data["eps"] = eps;
  r.data["certified_constant"] = certified_constant(X.modulus);
  if (c.trace) r.data["traces"] = traces;
  return r;
}

Report suite_riesz_fischer(const RunConfig& c) {
  const auto X = norm_or(c, "lp:p=0.5");
  const int prefix = c.prefix >= 0 ? c.prefix : 20;
  const auto gen = parse_generator(c.generator, X);
  const auto cert = riesz_fischer_sum(gen, X, prefix, c.tolerance);
  const std::string anchor = "Riesz-Fischer property";
  Report r;
  auto flag = [&](const std::string& id, const std::string& a, bool ok) {
    Tally t(id, a);
    t.record(ok, ok ? 0.0 : -1.0);
    r.assertions.push_back(t.done());
  };
  Tally within("series.remainder_within_tail", anchor);
  Tally cauchy("series.cauchy_within_tail", anchor);
  for (int M = 0; M <= prefix; ++M) {
    within.record(cert.remainder_norms[M] <= cert.tail_bounds[M] * (1.0 + c.tolerance) + c.tolerance,
                  cert.tail_bounds[M] - cert.remainder_norms[M], "M=" + std::to_string(M));
    cauchy.record(cert.cauchy[M] <= cert.tail_bounds[M] * (1.0 + c.tolerance) + c.tolerance,
                  cert.tail_bounds[M] - cert.cauchy[M], "M=" + std::to_string(M));
  }
  r.assertions.push_back(within.done());
  r.assertions.push_back(cauchy.done());
  flag("series.remainder_monotone", anchor, cert.remainder_monotone);
  flag("series.partial_modulus_sums_monotone", "monotone convergence of partial sums of moduli", cert.t_monotone);
  flag("series.prefix_inequality", "iterated quasi-triangle inequality", cert.prefix_inequality_holds);

  const auto extraction = extract_cauchy_subsequence(cert.partial_sums, X, std::max(1, prefix / 4));
  flag("series.cauchy_subsequence", "completeness from the Riesz-Fischer property", extraction.verified);

  Sampler rng(c.seed);
  Tally prefix_random("series.prefix_inequality_random", "iterated quasi-triangle inequality");
  for (std::size_t i = 0; i < or_default(c.samples, 100); ++i) {
    std::vector<StepFunction> terms;
    for (int k = 0; k < 8; ++k) terms.push_back(rng.step_function({}));
    const auto rep = prefix_sum_inequality_check(terms, X, c.tolerance);
    prefix_random.record(rep.passed, rep.worst_slack, "sequence " + std::to_string(i));
  }
  r.assertions.push_back(prefix_random.done());

  const auto f = rng.step_function({});
  const auto mono = fatou_checks(truncation_family(f, 6), f, X, c.tolerance);
  flag("series.fatou_monotone", "Fatou property", mono.monotone_family && mono.monotone_part);
  const auto bump = fatou_checks(sliding_bump_family(8), StepFunction(1), X, c.tolerance);
  flag("series.fatou_liminf", "Fatou lemma for quasinorms", bump.liminf_part);

  Json exact = Json::array();
  for (const auto& e : cert.exact_remainders) exact.push_back(e ? to_json(*e) : Json());
  r.data["norm"] = X.name;
  r.data["generator"] = gen.name;
  r.data["prefix"] = prefix;
  r.data["weighted_prefix"] = cert.weighted_prefix;
  r.data["tail_bounds"] = profile_summary(cert.tail_bounds);
  r.data["remainder_norms"] = profile_summary(cert.remainder_norms);
  r.data["exact_remainders"] = exact;
  r.data["cauchy"] = profile_summary(cert.cauchy);
  r.data["subsequence"] = extraction.indices;
  r.data["sliding_bump_liminf"] = bump.liminf;
  if (cert.limit) r.data["limit"] = to_json(*cert.limit);
  return r;
}

Report suite_resonance(const RunConfig& c) {
  const auto X = norm_or(c, "lp:p=0.5");
  const int prefix = c.prefix >= 0 ? c.prefix : 10;
  const Rational C(X.modulus);
  const auto generator = [&](int n) { return spike(n, C); };
  const Functional integral = [](const StepFunction& g) { return integrate_abs(g); };
  const auto w = resonance_witness(generator, integral, X, prefix, 1.0);
  const std::string anchor = "resonance construction of a divergent function";
  Report r;
  auto flag = [&](const std::string& id, bool ok, double margin = 0.0) {
    Tally t(id, anchor);
    t.record(ok, ok ? margin : -1.0);
    r.assertions.push_back(t.done());
  };
  flag("resonance.dominates", w.dominates);
  flag("resonance.functional_bounds", w.phi_bounds);
  flag("resonance.divergence", w.divergence);
  flag("resonance.norm_finite", std::isfinite(w.norm_bound), w.norm_bound);

  const StepFunction f0 = StepFunction::indicator(Box::interval(0, 1));
  const Functional pairing_phi = [f0](const StepFunction& g) { return integrate_abs_product(f0, g); };
  const auto wp = resonance_witness(generator, pairing_phi, X, prefix, 1.0);
  flag("resonance.pairing_divergence", wp.passed());

  bool refused = false;
  try {
    resonance_witness([&](int) { return spike(0, C); }, integral, X, std::max(prefix, 2), 1.0);
  } catch (const std::invalid_argument&) {
    refused = true;
  }
  flag("resonance.rate_precondition_enforced", refused);

  Json bounds = Json::array();
  for (const auto& b : w.lower_bounds) bounds.push_back(to_json(b));
  r.data["norm"] = X.name;
  r.data["prefix"] = prefix;
  r.data["functional_of_f"] = to_json(w.phi_f);
  r.data["lower_bounds"] = bounds;
  r.data["norm_bound"] = w.norm_bound;
  return r;
}

}  // namespace

bool Report::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "rearrangement", "associate", "dilation-sweep",
                                              "cover", "approximate", "riesz-fischer", "resonance"};
  return names;
}

Report run_suite(const RunConfig& config) {
  if (config.format != "json" && config.format != "csv") {
    throw std::invalid_argument("format must be json or csv");
  }
  if (config.n == 0) throw std::invalid_argument("--n must be positive");
  static const std::map<std::string, Report (*)(const RunConfig&)> table{
      {"axioms", suite_axioms},
      {"rearrangement", suite_rearrangement},
      {"associate", suite_associate},
      {"dilation-sweep", suite_dilation},
      {"cover", suite_cover},
      {"approximate", suite_approximate},
      {"riesz-fischer", suite_riesz_fischer},
      {"resonance", suite_resonance},
  };
  const auto it = table.find(config.suite);
  if (it == table.end()) throw std::invalid_argument("unknown suite '" + config.suite + "'");
  Report r = it->second(config);
  r.suite = config.suite;
  std::sort(r.assertions.begin(), r.assertions.end(),
            [](const Assertion& a, const Assertion& b) { return a.id < b.id; });
  return r;
}

void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "suite") config.suite = value;
      else if (key == "norm") config.norm = value;
      else if (key == "seed") config.seed = std::stoull(value);
      else if (key == "samples") config.samples = std::stoull(value);
      else if (key == "out") config.out = value;
      else if (key == "format") config.format = value;
      else if (key == "n") config.n = std::stoull(value);
      else if (key == "a-grid") config.a_grid = value;
      else if (key == "eps") config.eps = std::stod(value);
      else if (key == "input") config.input = value;
      else if (key == "trace") config.trace = value == "true" || value == "1";
      else if (key == "refine") config.refine = std::stoi(value);
      else if (key == "value-grid") config.value_grid = std::stoi(value);
      else if (key == "generator") config.generator = value;
      else if (key == "prefix") config.prefix = std::stoi(value);
      else if (key == "tolerance") config.tolerance = std::stod(value);
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::logic_error& e) {
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

Json report_json(const Report& report, const RunConfig& config) {
  Json assertions = Json::array();
  for (const auto& a : report.assertions) {
    assertions.push_back({{"id", a.id},
                          {"anchor", a.anchor},
                          {"passed", a.passed},
                          {"margin", a.margin},
                          {"cases", a.cases},
                          {"witness", a.witness}});
  }
  Json cfg{{"suite", config.suite},     {"norm", config.norm},       {"seed", config.seed},
           {"samples", config.samples}, {"n", config.n},             {"tolerance", config.tolerance}};
  return {{"suite", report.suite},
          {"config", cfg},
          {"passed", report.passed()},
          {"assertions", assertions},
          {"data", report.data}};
}

std::string report_csv(const Report& report) {
  std::ostringstream out;
  if (!report.csv_header.empty()) {
    for (std::size_t i = 0; i < report.csv_header.size(); ++i) out << (i ? "," : "") << report.csv_header[i];
    out << "\n";
    for (const auto& row : report.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << "\n";
    }
    return out.str();
  }
  out << "id,passed,margin,cases\n";
  for (const auto& a : report.assertions) {
    out << a.id << "," << (a.passed ? "true" : "false") << "," << fmt(a.margin) << "," << a.cases << "\n";
  }
  return out.str();
}

}  // namespace qbfs::cli
