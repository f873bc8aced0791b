#include "qbfs/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qbfs {

namespace {

// Σ_{m' > m, m' in G_parity} 2^{-m'-1} = (4/3)·2^{-m0-1} with m0 the first such index.
Rational lacunary_tail_below_block(int m, int parity) {
  const int m0 = in_lacunary_set(m + 1, parity) ? m + 1 : m + 2;
  return Rational(4, 3) * pow2(-m0 - 1);
}

void require_parity(int parity) {
  if (parity != 1 && parity != 2) throw std::invalid_argument("parity must be 1 or 2");
}

}  // namespace

RearrangementProfile dilate_profile(const RearrangementProfile& g, const Rational& c) { return g.dilated(c); }

bool in_lacunary_set(int m, int parity) {
  require_parity(parity);
  const bool odd = (m % 2) != 0;
  return parity == 1 ? odd : !odd;
}

int lacunary_block(const Rational& x) {
  if (x <= 0) throw std::invalid_argument("lacunary block needs x > 0");
  // Start from the bit-length estimate, then settle 2^{-m-1} < x <= 2^{-m}.
  const long estimate = static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2)) -
                        static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
  int m = static_cast<int>(estimate);
  while (x > pow2(-m)) --m;
  while (x <= pow2(-m - 1)) ++m;
  return m;
}

Rational lacunary_mass_below(const Rational& x, int parity) {
  require_parity(parity);
  const int m = lacunary_block(x);
  Rational mass = lacunary_tail_below_block(m, parity);
  if (in_lacunary_set(m, parity)) mass += x - pow2(-m - 1);
  return mass;
}

Rational shift_map(const Rational& x) {
  const int m = lacunary_block(x);
  return x - Rational(2, 3) * pow2(-m - 1);
}

RearrangementProfile LacunaryRestriction::rearrangement() const {
  std::vector<std::pair<Rational, Rational>> levels;
  for (const auto& p : restricted.pieces()) levels.emplace_back(p.value.re, p.region.measure());
  if (tail_measure > 0) levels.emplace_back(tail_value, tail_measure);
  return RearrangementProfile::from_levels(std::move(levels));
}

LacunaryRestriction lacunary_restrict(const RearrangementProfile& g, int parity, int depth) {
  require_parity(parity);
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  LacunaryRestriction out;
  out.parity = parity;
  if (g.is_zero()) return out;
  const auto& t = g.breakpoints();
  const auto& v = g.values();
  out.m_min = lacunary_block(t.back());
  out.m_max = lacunary_block(t[1]) + depth;
  std::vector<Piece> pieces;
  for (int m = out.m_min; m <= out.m_max; ++m) {
    if (!in_lacunary_set(m, parity)) continue;
    const Rational lo = pow2(-m - 1);
    const Rational hi = pow2(-m);
    for (std::size_t j = 0; j < v.size(); ++j) {
      const Rational a = std::max(lo, t[j]);
      const Rational b = std::min(hi, t[j + 1]);
      if (a < b) pieces.push_back({Box::interval(a, b), ComplexRational(v[j])});
    }
  }
  out.restricted = StepFunction::from_pieces(1, std::move(pieces));
  out.tail_measure = lacunary_tail_below_block(out.m_max, parity);
  out.tail_value = v.front();
  return out;
}

StepFunction SplitCarrier::materialize() const {
  if (dimension != 1) throw std::invalid_argument("S_i f is materialized only for n = 1");
  std::vector<Piece> pieces;
  for (const auto& p : restriction.restricted.pieces()) {
    const Rational lo = p.region.side(0).lo / 2;
    const Rational hi = p.region.side(0).hi / 2;
    pieces.push_back({Box::interval(lo, hi), p.value});
    pieces.push_back({Box::interval(-hi, -lo), p.value});
  }
  return StepFunction::from_pieces(1, std::move(pieces));
}

RearrangementProfile SplitCarrier::rearrangement() const {
  std::vector<std::pair<Rational, Rational>> levels;
  if (dimension == 1) {
    const auto head = nonincreasing_rearrangement(materialize());
    const auto& t = head.breakpoints();
    for (std::size_t j = 0; j < head.size(); ++j) levels.emplace_back(head.values()[j], t[j + 1] - t[j]);
  } else {
    // λⁿ{a < α_n|x|ⁿ < b} = b − a.
    for (const auto& p : restriction.restricted.pieces()) levels.emplace_back(p.value.re, p.region.side(0).length());
  }
  if (restriction.tail_measure > 0) levels.emplace_back(restriction.tail_value, restriction.tail_measure);
  return RearrangementProfile::from_levels(std::move(levels));
}

SplitCarrier splitting_operator(const StepFunction& f, std::size_t n, int parity, int depth) {
  if (n == 0) throw std::invalid_argument("dimension must be positive");
  SplitCarrier s;
  s.parity = parity;
  s.dimension = n;
  s.alpha = unit_ball_volume(n);
  s.alpha_exact = unit_ball_volume_exact(n);
  s.restriction = lacunary_restrict(nonincreasing_rearrangement(f), parity, depth);
  return s;
}

LacunaryInequalityReport lacunary_inequality_check(const RearrangementProfile& g, std::span<const Rational> samples,
                          std::span<const Rational> shift_points) {
  LacunaryInequalityReport report;
  bool first = true;
  for (int parity : {1, 2}) {
    const auto lhs_profile = lacunary_restrict(g, parity).rearrangement();
    std::vector<Rational> cuts(lhs_profile.breakpoints());
    for (const auto& b : g.breakpoints()) cuts.push_back(b * Rational(2, 3));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> points(samples.begin(), samples.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) points.push_back((cuts[i] + cuts[i + 1]) / 2);
    points.push_back(cuts.back() + 1);
    for (const auto& t : points) {
      if (t <= 0) continue;
      const Rational lhs = lhs_profile(t);
      const Rational rhs = g(t * Rational(3, 2));
      const Rational margin = rhs - lhs;
      ++report.points;
      if (first || margin < report.worst_margin) {
        report.worst_margin = margin;
        first = false;
        if (margin < 0) {
          report.passed = false;
          report.counterexample = "parity " + std::to_string(parity) + ", t=" + t.get_str() + ", lhs=" +
                                  lhs.get_str() + ", rhs=" + rhs.get_str();
        }
      }
    }
  }
  for (const auto& x : shift_points) {
    const int m = lacunary_block(x);
    const int parity = in_lacunary_set(m, 1) ? 1 : 2;
    if (shift_map(x) != lacunary_mass_below(x, parity)) {
      report.shift_map_ok = false;
      report.passed = false;
      if (report.counterexample.empty()) report.counterexample = "shift map at x=" + x.get_str();
    }
  }
  return report;
}

double dilation_bound(std::size_t n, double C, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("dilation parameter must be positive");
  if (n == 0) throw std::invalid_argument("dimension must be positive");
  if (a >= 1.0) return 1.0;
  const double b = std::pow(2.0 / 3.0, 1.0 / static_cast<double>(n));
  return 2.0 * C * std::pow(a, std::log(2.0 * C) / std::log(b));
}

DilationRatio empirical_dilation_ratio(const QuasinormSpec& X, const Rational& a, std::span<const StepFunction> samples) {
  DilationRatio out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double base = X(samples[i]);
    if (base == 0.0) continue;
    const double r = X(dilate(samples[i], a)) / base;
    if (r > out.ratio) {
      out.ratio = r;
      out.witness = i;
    }
  }
  return out;
}

bool DilationSweep::passed() const {
  return monotone && std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.within_bound; });
}

DilationSweep dilation_sweep(const QuasinormSpec& X, std::size_t n, std::vector<Rational> grid,
                             std::span<const StepFunction> samples, double tolerance) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (const auto& s : samples) {
    if (s.dimension() != n) throw std::invalid_argument("sample dimension differs from n");
  }
  DilationSweep out;
  std::vector<double> base(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) base[i] = X(samples[i]);
  std::vector<double> previous(samples.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Rational& a = grid[k];
    SweepRow row;
    row.a = a;
    row.bound = dilation_bound(n, X.modulus, to_double(a));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double value = X(dilate(samples[i], a));
      if (base[i] > 0.0) row.empirical_ratio = std::max(row.empirical_ratio, value / base[i]);
      if (k > 0 && value > previous[i] * (1.0 + tolerance) && out.monotone) {
        out.monotone = false;
        out.monotonicity_witness = "sample " + std::to_string(i) + " between a=" + grid[k - 1].get_str() +
                                   " and a=" + a.get_str();
      }
      previous[i] = value;
    }
    row.within_bound = row.empirical_ratio <= row.bound * (1.0 + tolerance);
    out.rows.push_back(row);
  }
  return out;
}

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    std::vector<Rational> fields;
    while (std::getline(ss, part, ':')) fields.push_back(parse_rational(part));
    if (fields.size() != 3 || fields[2] <= 0 || fields[1] < fields[0]) {
      throw std::invalid_argument("grid must be start:stop:step with step > 0");
    }
    for (Rational a = fields[0]; a <= fields[1]; a += fields[2]) out.push_back(a);
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(parse_rational(part));
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  for (const auto& a : out) {
    if (a <= 0) throw std::invalid_argument("grid values must be positive");
  }
  return out;
}

}  // namespace qbfs
