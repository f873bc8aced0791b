// One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include "qbfs/approximation.hpp"
#include "qbfs/associate.hpp"
#include "qbfs/dilation.hpp"
#include "qbfs/quasinorm.hpp"
#include "qbfs/rearrangement.hpp"
#include "qbfs/sampling.hpp"
#include "qbfs/series.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace qbfs;

namespace {

constexpr double kAxiomTol = 1e-9;
constexpr double kWitnessTol = 1e-9;
constexpr double kLacunaryMargin = -1e-12;
constexpr double kMonotoneTol = 1e-9;
constexpr double kClosedFormRel = 1e-10;
constexpr double kSeriesTol = 1e-9;
constexpr double kHolderSlack = 1e-9;
constexpr double kSecondAssociateTol = 1e-9;
constexpr double kDualRel = 1e-6;
constexpr double kApproxConstant = 64.0;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << what;
    passed = passed && ok;
  }
};

Box iv(const Rational& lo, const Rational& hi) { return Box::interval(lo, hi); }

StepFunction shuffled(const StepFunction& f, Sampler& rng) {
  std::vector<std::size_t> perm(f.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.integer(0, static_cast<std::int64_t>(i) - 1)]);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto sides = f.pieces()[i].region.sides();
    const Rational shift = Rational(100) * (perm[i] + 1) - sides[0].lo;
    sides[0] = {sides[0].lo + shift, sides[0].hi + shift};
    pieces.push_back({Box(std::move(sides)), f.pieces()[i].value});
  }
  return StepFunction::from_pieces(f.dimension(), std::move(pieces));
}

// Block index m with 2^{-m-1} < x ≤ 2^{-m}, found by scanning.
int block_of(const Rational& x) {
  int m = -64;
  while (!(x > pow2(-m - 1) && x <= pow2(-m))) ++m;
  return m;
}

Outcome criterion_axioms() {
  Outcome o;
  const auto samples = sample_set(1001, 200);
  for (const auto& sel : {"lp:p=0.25", "lp:p=0.5", "lp:p=1", "lp:p=2", "lorentz:p=2,q=0.5"}) {
    const auto X = parse_norm(sel);
    const auto report = check_quasinorm_axioms(X, samples, {kAxiomTol, 0});
    for (const auto& c : report.checks) o.require(c.passed, std::string(sel) + " " + c.id + " " + c.witness);
    o.require(report.empirical_modulus <= X.modulus * (1.0 + kAxiomTol), std::string(sel) + " C-triangle");
  }
  const auto w = tightness_witness();
  const auto X = lebesgue(0.5);
  const double ratio = X(w[0] + w[1]) / (X(w[0]) + X(w[1]));
  o.require(std::abs(ratio - 2.0) <= kWitnessTol, "tightness ratio " + std::to_string(ratio));
  o.detail << "witness ratio " << ratio;
  return o;
}

Outcome criterion_rearrangement() {
  Outcome o;
  Sampler rng(1002);
  std::size_t levels_checked = 0;
  for (int i = 0; i < 500; ++i) {
    const auto f = rng.step_function({});
    const auto prof = nonincreasing_rearrangement(f);
    const auto dist = distribution_function(f);
    std::vector<Rational> levels{Rational(0)};
    for (const auto& v : dist.levels()) levels.push_back(v);
    for (const auto& s : levels) {
      ++levels_checked;
      // Direct measure of {|f| > s} from the pieces.
      Rational direct(0);
      for (const auto& p : f.pieces()) {
        if (p.value.norm2() > s * s) direct += p.region.measure();
      }
      o.require(prof.distribution(s) == direct, "equimeasurability at sample " + std::to_string(i));
    }
    o.require(rearrangement_of(radial_rearrangement(f)) == prof, "radial idempotence at sample " + std::to_string(i));
    o.require(nonincreasing_rearrangement(shuffled(f, rng)) == prof, "shuffle at sample " + std::to_string(i));
  }
  o.detail << levels_checked << " levels";
  return o;
}

Outcome criterion_lacunary() {
  Outcome o;
  Sampler rng(1003);
  Rational worst(1000);
  for (int i = 0; i < 100; ++i) {
    const auto g = rng.profile();
    std::vector<Rational> points;
    for (int j = 0; j < 1000; ++j) points.push_back(ratio(rng.integer(1, 1 << 16), 1 << 14));
    const auto report = lacunary_inequality_check(g, points, points);
    o.require(report.points >= 1000, "too few points");
    o.require(report.passed && to_double(report.worst_margin) >= kLacunaryMargin, "profile " + std::to_string(i) + ": " + report.counterexample);
    worst = std::min(worst, report.worst_margin);
  }
  for (int j = 1; j < 4096; ++j) {
    const Rational x = ratio(j, 1024);
    const int m = block_of(x);
    const Rational expected = x - Rational(2, 3) * pow2(-m - 1);
    o.require(shift_map(x) == expected, "shift map at " + x.get_str());
  }
  o.detail << "worst margin " << to_double(worst);
  return o;
}

Outcome criterion_dilation() {
  Outcome o;
  const auto samples = sample_set(1004, 200);
  const auto grid = parse_grid("0.1:1.0:0.1");
  for (const auto& sel : {"lp:p=0.25", "lp:p=0.5", "lp:p=1", "lp:p=2", "lorentz:p=2,q=0.5", "linf"}) {
    const auto X = parse_norm(sel);
    const auto r = empirical_dilation_ratio(X, Rational(2, 3), samples);
    o.require(r.ratio <= 2.0 * X.modulus, std::string(sel) + " 2/3 ratio");
    const auto sweep = dilation_sweep(X, 1, grid, samples, kMonotoneTol);
    o.require(sweep.passed(), std::string(sel) + " sweep " + sweep.monotonicity_witness);
    if (X.family == "lp") {
      const double p = X.param("p");
      for (const auto& a : grid) {
        for (const auto& f : samples) {
          const double expected = std::pow(to_double(a), -1.0 / p) * X(f);
          const double got = X(dilate(f, a));
          o.require(std::abs(got - expected) <= kClosedFormRel * expected, std::string(sel) + " closed form");
        }
      }
    }
  }
  o.detail << "bound at a=0.1: " << dilation_bound(1, 2.0, 0.1);
  return o;
}

Outcome criterion_series() {
  Outcome o;
  Sampler rng(1005);
  for (const auto& sel : {"lp:p=0.5", "lorentz:p=2,q=0.5"}) {
    const auto X = parse_norm(sel);
    for (int i = 0; i < 100; ++i) {
      std::vector<StepFunction> terms;
      for (int k = 0; k < 8; ++k) terms.push_back(rng.step_function({}));
      const auto prefix = prefix_sum_inequality_check(terms, X, kSeriesTol);
      o.require(prefix.passed, std::string(sel) + " prefix inequality at sequence " + std::to_string(i));
    }
  }
  const auto X = lebesgue(0.5);
  for (const auto& r : {Rational(1, 4), Rational(1, 3), Rational(1, 8)}) {
    const auto cert = riesz_fischer_sum(geometric_generator(r, StepFunction::indicator(iv(0, 1)), X), X, 20, kSeriesTol);
    for (int M = 0; M <= 20; ++M) {
      o.require(cert.remainder_norms[M] <= cert.tail_bounds[M] * (1.0 + kSeriesTol), "geometric tail at M=" + std::to_string(M));
    }
  }
  const auto L1 = lebesgue(1.0);
  const auto cert = riesz_fischer_sum(disjoint_generator(L1), L1, 20, kSeriesTol);
  for (int M = 0; M <= 20; ++M) {
    o.require(cert.exact_remainders[M].has_value() && *cert.exact_remainders[M] == pow2(-M),
              "disjoint remainder at M=" + std::to_string(M));
  }
  o.detail << "L1 remainder at M=20: " << cert.exact_remainders[20]->get_str();
  return o;
}

Outcome criterion_associate() {
  Outcome o;
  for (const auto& sel : {"lp:p=0.5", "lp:p=1", "lp:p=2", "lorentz:p=2,q=0.5"}) {
    const auto X = parse_norm(sel);
    Sampler rng(1006);
    SampleOptions opt;
    opt.max_pieces = 4;
    for (int i = 0; i < 100; ++i) {
      const auto f = rng.step_function(opt);
      const auto eval = associate_norm(f, X, {});
      if (!eval.infinite) {
        const auto h = holder_check(f, eval.witness, X, eval);
        o.require(h.passed && std::abs(h.slack) <= kHolderSlack * std::max(1.0, h.rhs),
                  std::string(sel) + " witness slack at sample " + std::to_string(i));
      }
      const auto sa = second_associate_lower_bound(f, X, {}, kSecondAssociateTol);
      o.require(sa.passed && sa.second_associate <= sa.norm + kSecondAssociateTol,
                std::string(sel) + " second associate at sample " + std::to_string(i));
    }
  }
  Sampler rng(1007);
  const auto X = lebesgue(2.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    std::vector<Piece> pieces;
    for (int j = 0; j < 8; ++j) {
      pieces.push_back({iv(Rational(j), Rational(j + 1)), ComplexRational(ratio(rng.integer(1, 9), rng.integer(1, 4)))});
    }
    const auto f = StepFunction::from_pieces(1, std::move(pieces));
    const double closed = lp_norm(f, 2.0);
    const double searched = associate_norm(f, X, {}).value;
    const double rel = std::abs(searched - closed) / closed;
    worst = std::max(worst, rel);
    o.require(rel <= kDualRel, "8-piece dual at instance " + std::to_string(i) + " rel " + std::to_string(rel));
  }
  o.detail << "worst dual error " << worst;
  return o;
}

Outcome criterion_cover() {
  Outcome o;
  Sampler rng(1008);
  for (int i = 0; i < 50; ++i) {
    const auto inst = rng.cover_instance(i % 2 == 0 ? 1 : 2);
    const auto r = dyadic_cover(inst.K, inst.G, inst.eps, inst.k0);
    // Independent recomputation of the four properties.
    const auto kb = inst.K.closed_boxes();
    const auto gb = inst.G.closure_boxes();
    const auto ob = r.omega.boxes();
    std::vector<Box> og(ob);
    og.insert(og.end(), gb.begin(), gb.end());
    std::vector<Box> ko(kb);
    ko.insert(ko.end(), ob.begin(), ob.end());
    const bool inside = union_measure(og) == union_measure(gb);
    const bool covers = union_measure(ko) == union_measure(ob);
    const bool excess = union_measure(ko) - union_measure(kb) < inst.eps;
    bool meets = true;
    for (const auto& cube : ob) {
      bool any = false;
      for (const auto& k : kb) any = any || cube.overlaps(k);
      meets = meets && any;
    }
    const std::string w = "instance " + std::to_string(i);
    o.require(r.verified() && inside && covers && excess && meets && r.order >= inst.k0, w);
  }
  return o;
}

Outcome criterion_approximation() {
  Outcome o;
  Sampler rng(1009);
  SampleOptions opt;
  opt.dyadic_breakpoints = false;
  const auto X = lebesgue(0.5);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = rng.step_function(opt);
    for (int e : {6, 10}) {
      const double eps = std::ldexp(1.0, -e);
      const auto ap = approximate_simple(f, X, eps);
      const auto& t = ap.trace;
      const double measured = X(f - ap.s.to_step_function());
      worst = std::max(worst, measured / eps);
      const std::string w = "function " + std::to_string(i) + " eps 2^-" + std::to_string(e);
      o.require(measured <= kApproxConstant * eps, w + " error");
      o.require(t.term_k <= 2.0 * eps && t.term_e0 < eps && t.term_e1 < eps && t.term_e_minus_k < eps &&
                    t.term_s_outside < eps,
                w + " budgets");
    }
  }
  o.detail << "worst error/eps " << worst;
  return o;
}

Outcome criterion_split() {
  Outcome o;
  const auto f = StepFunction::indicator(iv(0, 1));
  const auto split = non_ac_split(f, supremum(), SetSequence::shrink_to_null, 0.5, 5);
  o.require(split.parts.size() == 5, "part count");
  for (std::size_t i = 0; i < split.parts.size(); ++i) {
    o.require(supremum()(split.parts[i]) > 0.5, "norm of part " + std::to_string(i));
    for (const auto& p : split.parts[i].pieces()) {
      o.require(p.value.is_real() && p.value.re >= 0, "part sign");
      // Dominated by |f| = 1 on (0,1).
      o.require(p.value.re <= 1 && iv(0, 1).contains(p.region), "domination");
    }
    for (std::size_t j = i + 1; j < split.parts.size(); ++j) {
      for (const auto& a : split.parts[i].pieces()) {
        for (const auto& b : split.parts[j].pieces()) o.require(!a.region.overlaps(b.region), "disjointness");
      }
    }
  }
  o.require(split.verified(), "self-check");
  return o;
}

Outcome criterion_resonance() {
  Outcome o;
  const auto X = lebesgue(0.5);
  const Rational C(2);
  const double constant = 1.0;
  const Functional integral = [](const StepFunction& g) { return integrate_abs(g); };
  const auto w = resonance_witness([&](int n) { return spike(n, C); }, integral, X, 10, constant);
  for (int k = 0; k <= 10; ++k) {
    o.require(w.phi_f >= w.lower_bounds[k], "phi(f) below the k-th term");
    o.require(to_double(w.lower_bounds[k]) >= k / constant, "lower bound at k=" + std::to_string(k));
  }
  o.require(std::isfinite(w.norm_bound) && X(w.f) <= w.norm_bound * (1.0 + 1e-12), "norm certificate");
  o.require(w.passed(), "witness flags");
  o.detail << "phi(f) " << w.phi_f.get_str() << ", norm bound " << w.norm_bound;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"quasinorm axioms", criterion_axioms},
      {"rearrangement", criterion_rearrangement},
      {"lacunary restriction and shift map", criterion_lacunary},
      {"dilation bounds", criterion_dilation},
      {"series summation", criterion_series},
      {"associate quasinorm", criterion_associate},
      {"dyadic cover", criterion_cover},
      {"simple approximation", criterion_approximation},
      {"non-absolutely-continuous split", criterion_split},
      {"resonance", criterion_resonance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s (%.2fs) %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.str().c_str());
    failures += o.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
