#include "qbfs/associate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qbfs {

namespace {

struct Cell {
  Box region;
  double magnitude;
  double measure;
};

std::vector<Cell> refine_cells(const StepFunction& f, int level) {
  if (level < 0 || level > 20) throw std::invalid_argument("refine level must lie in [0, 20]");
  const long parts = 1L << level;
  std::vector<Cell> cells;
  for (const auto& p : f.pieces()) {
    const auto& side = p.region.side(0);
    const Rational width = (side.hi - side.lo) / parts;
    for (long i = 0; i < parts; ++i) {
      auto sides = p.region.sides();
      sides[0].lo = side.lo + width * i;
      sides[0].hi = side.lo + width * (i + 1);
      Box b(std::move(sides));
      const double m = to_double(b.measure());
      cells.push_back({std::move(b), p.value.modulus_double(), m});
    }
  }
  return cells;
}

std::vector<double> measures_of(const std::vector<Cell>& cells) {
  std::vector<double> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(c.measure);
  return out;
}

// Number of nonzero grid vectors, or 0 when it exceeds the cap.
std::size_t grid_size(std::size_t m, int G, std::size_t cap) {
  double total = std::pow(static_cast<double>(G) + 1.0, static_cast<double>(m)) - 1.0;
  if (total > static_cast<double>(cap)) return 0;
  return static_cast<std::size_t>(total);
}

// Visits every nonzero vector of {0..G}^m in lexicographic order.
template <class Visit>
void for_each_grid(std::size_t m, int G, Visit&& visit) {
  std::vector<double> c(m, 0.0);
  while (true) {
    std::size_t j = m;
    while (j > 0) {
      --j;
      if (c[j] < G) {
        c[j] += 1.0;
        std::fill(c.begin() + static_cast<std::ptrdiff_t>(j) + 1, c.end(), 0.0);
        break;
      }
      if (j == 0) return;
    }
    if (m == 0) return;
    visit(c);
  }
}

struct Ratio {
  double value = 0.0;
  bool infinite = false;

  bool better_than(const Ratio& other) const {
    if (infinite) return !other.infinite;
    if (other.infinite) return false;
    return value > other.value;
  }
};

Ratio candidate_ratio(const std::vector<Cell>& cells, const std::vector<double>& measures, const QuasinormSpec& X,
                      const std::vector<double>& c) {
  double num = 0.0;
  for (std::size_t j = 0; j < cells.size(); ++j) num += cells[j].magnitude * c[j] * cells[j].measure;
  const double den = X.evaluate_cells(c, measures);
  if (den == 0.0) return num > 0.0 ? Ratio{std::numeric_limits<double>::infinity(), true} : Ratio{};
  return {num / den, false};
}

std::string describe(const std::string& kind, const std::vector<double>& c) {
  std::string out = kind + "[";
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j) out += ",";
    const double r = std::round(c[j]);
    out += r == c[j] ? std::to_string(static_cast<long long>(r)) : std::to_string(c[j]);
  }
  return out + "]";
}

StepFunction witness_from(const std::vector<Cell>& cells, const std::vector<Rational>& values, std::size_t dim) {
  std::vector<Piece> pieces;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (values[j] != 0) pieces.push_back({cells[j].region, ComplexRational(values[j])});
  }
  return StepFunction::from_pieces(dim, std::move(pieces));
}

std::vector<Rational> exact_values(const std::vector<double>& c) {
  std::vector<Rational> out;
  const bool integral = std::all_of(c.begin(), c.end(), [](double x) { return std::round(x) == x; });
  const double top = *std::max_element(c.begin(), c.end());
  for (double x : c) {
    if (integral) {
      out.emplace_back(static_cast<long>(x));
    } else {
      out.push_back(quantize(x / top, 48));
    }
  }
  return out;
}

void coordinate_ascent(const std::vector<Cell>& cells, const std::vector<double>& measures, const QuasinormSpec& X,
                       int G, std::vector<double>& best, Ratio& best_ratio, std::size_t& evaluated) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < best.size(); ++j) {
      for (int v = 0; v <= G; ++v) {
        if (v == best[j]) continue;
        auto trial = best;
        trial[j] = v;
        if (std::all_of(trial.begin(), trial.end(), [](double x) { return x == 0.0; })) continue;
        ++evaluated;
        const Ratio r = candidate_ratio(cells, measures, X, trial);
        if (r.better_than(best_ratio)) {
          best = std::move(trial);
          best_ratio = r;
          changed = true;
        }
      }
    }
  }
}

void pattern_polish(const std::vector<Cell>& cells, const std::vector<double>& measures, const QuasinormSpec& X,
                    std::vector<double>& c, Ratio& ratio) {
  if (ratio.infinite) return;
  double top = *std::max_element(c.begin(), c.end());
  double step = top / 4.0;
  for (int iter = 0; iter < 200000 && step > 1e-13 * top; ++iter) {
    bool improved = false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      for (double dir : {1.0, -1.0}) {
        auto trial = c;
        trial[j] = std::max(0.0, trial[j] + dir * step);
        if (trial[j] == c[j]) continue;
        const Ratio r = candidate_ratio(cells, measures, X, trial);
        if (r.better_than(ratio)) {
          c = std::move(trial);
          ratio = r;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step /= 2.0;
    top = *std::max_element(c.begin(), c.end());
  }
}

}  // namespace

double pairing(const StepFunction& f, const StepFunction& g) {
  if (f.dimension() != g.dimension()) throw std::invalid_argument("pairing needs equal dimensions");
  double total = 0.0;
  for (const auto& p : f.pieces()) {
    for (const auto& q : g.pieces()) {
      if (p.region.overlaps(q.region)) {
        total += p.value.modulus_double() * q.value.modulus_double() * to_double(p.region.intersect(q.region).measure());
      }
    }
  }
  return total;
}

AssociateEvaluation associate_norm(const StepFunction& f, const QuasinormSpec& X, const SearchClass& search) {
  if (search.value_grid < 1) throw std::invalid_argument("value grid must contain a positive value");
  AssociateEvaluation out;
  out.search = search;
  out.witness = StepFunction(f.dimension());
  const auto cells = refine_cells(f, search.refine_level);
  const std::size_t m = cells.size();
  if (m == 0) {
    out.witness_description = "empty class";
    return out;
  }
  const auto measures = measures_of(cells);

  std::vector<double> best;
  Ratio best_ratio;
  std::string kind;
  auto offer = [&](const std::vector<double>& c, const char* label) {
    ++out.candidates;
    const Ratio r = candidate_ratio(cells, measures, X, c);
    if (best.empty() || r.better_than(best_ratio)) {
      best = c;
      best_ratio = r;
      kind = label;
    }
  };

  if (search.concentration) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> e(m, 0.0);
      e[j] = 1.0;
      offer(e, "cell");
    }
  }
  if (search.dual_alignment && X.family == "lp" && X.param("p") > 1.0) {
    const double p = X.param("p");
    const double exponent = 1.0 / (p - 1.0);
    std::vector<double> g(m);
    for (std::size_t j = 0; j < m; ++j) g[j] = std::pow(cells[j].magnitude, exponent);
    if (std::any_of(g.begin(), g.end(), [](double x) { return x > 0.0; })) offer(g, "dual");
  }
  if (grid_size(m, search.value_grid, search.max_candidates) != 0) {
    for_each_grid(m, search.value_grid, [&](const std::vector<double>& c) { offer(c, "grid"); });
  } else {
    out.exhaustive = false;
    if (best.empty()) offer(std::vector<double>(m, 1.0), "grid");
    coordinate_ascent(cells, measures, X, search.value_grid, best, best_ratio, out.candidates);
  }

  if (search.polish) {
    auto c = best;
    Ratio r = best_ratio;
    pattern_polish(cells, measures, X, c, r);
    if (r.better_than(best_ratio)) {
      // The witness must carry rational values; keep it only if its own ratio still wins.
      const auto values = exact_values(c);
      std::vector<double> rounded;
      for (const auto& v : values) rounded.push_back(to_double(v));
      const Ratio exact_r = candidate_ratio(cells, measures, X, rounded);
      if (exact_r.better_than(best_ratio)) {
        best = rounded;
        best_ratio = exact_r;
        kind = "polished";
      }
    }
  }

  out.value = best_ratio.value;
  out.infinite = best_ratio.infinite;
  out.witness = witness_from(cells, exact_values(best), f.dimension());
  out.witness_description = describe(kind, best);
  return out;
}

HolderReport holder_check(const StepFunction& f, const StepFunction& g, const QuasinormSpec& X,
                          const AssociateEvaluation& eval, double tolerance) {
  HolderReport r;
  r.lhs = pairing(f, g);
  const double ng = X(g);
  if (eval.infinite) {
    r.rhs = ng == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    r.rhs = ng * eval.value;
  }
  r.slack = r.rhs - r.lhs;
  r.passed = r.slack >= -tolerance * std::max(1.0, r.rhs);
  if (!r.passed) r.witness = to_string(g);
  return r;
}

HolderReport holder_check_class(const StepFunction& f, const QuasinormSpec& X, const AssociateEvaluation& eval,
                                double tolerance) {
  HolderReport out = holder_check(f, eval.witness, X, eval, tolerance);
  out.witness = out.passed ? "" : eval.witness_description;
  const auto cells = refine_cells(f, eval.search.refine_level);
  const auto measures = measures_of(cells);
  auto visit = [&](const std::vector<double>& c) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < cells.size(); ++j) lhs += cells[j].magnitude * c[j] * cells[j].measure;
    const double ng = X.evaluate_cells(c, measures);
    const double rhs = eval.infinite ? (ng == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()) : ng * eval.value;
    const double slack = rhs - lhs;
    if (slack < out.slack) {
      out.slack = slack;
      out.lhs = lhs;
      out.rhs = rhs;
    }
    if (slack < -tolerance * std::max(1.0, rhs)) {
      if (out.passed) out.witness = describe("grid", c);
      out.passed = false;
    }
  };
  if (eval.exhaustive) {
    for_each_grid(cells.size(), eval.search.value_grid, visit);
  } else {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      std::vector<double> e(cells.size(), 0.0);
      e[j] = 1.0;
      visit(e);
    }
  }
  return out;
}

SecondAssociateReport second_associate_lower_bound(const StepFunction& f, const QuasinormSpec& X,
                                                   const SearchClass& search, double tolerance) {
  SecondAssociateReport out;
  out.norm = X(f);
  const auto cells = refine_cells(f, search.refine_level);
  const std::size_t m = cells.size();
  if (m == 0) return out;
  const auto measures = measures_of(cells);

  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> e(m, 0.0);
    e[j] = 1.0;
    if (!std::isfinite(X.evaluate_cells(e, measures))) out.indicators_finite = false;
  }

  std::vector<std::vector<double>> candidates;
  if (search.concentration) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> e(m, 0.0);
      e[j] = 1.0;
      candidates.push_back(std::move(e));
    }
  }
  if (grid_size(m, search.value_grid, search.max_candidates) != 0) {
    for_each_grid(m, search.value_grid, [&](const std::vector<double>& c) { candidates.push_back(c); });
  }

  std::vector<double> own(m);
  for (std::size_t j = 0; j < m; ++j) own[j] = cells[j].magnitude;
  std::vector<const std::vector<double>*> inner;
  std::vector<double> inner_norms;
  for (const auto& c : candidates) {
    inner.push_back(&c);
    inner_norms.push_back(X.evaluate_cells(c, measures));
  }
  inner.push_back(&own);
  inner_norms.push_back(X.evaluate_cells(own, measures));

  for (const auto& h : candidates) {
    double assoc = 0.0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner_norms[i] == 0.0) continue;
      double num = 0.0;
      for (std::size_t j = 0; j < m; ++j) num += h[j] * (*inner[i])[j] * measures[j];
      assoc = std::max(assoc, num / inner_norms[i]);
    }
    double num = 0.0;
    for (std::size_t j = 0; j < m; ++j) num += cells[j].magnitude * h[j] * measures[j];
    if (assoc == 0.0) continue;
    const double ratio = num / assoc;
    if (ratio > out.second_associate) {
      out.second_associate = ratio;
      out.witness_description = describe("grid", h);
    }
  }
  out.passed = out.indicators_finite && out.second_associate <= out.norm + tolerance * std::max(1.0, out.norm);
  return out;
}

}  // namespace qbfs
