#include "qbfs/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qbfs {

namespace {

std::vector<Box> dyadic_boxes(const std::vector<DyadicBox>& boxes) {
  std::vector<Box> out;
  out.reserve(boxes.size());
  for (const auto& b : boxes) out.push_back(b.box());
  return out;
}

std::vector<Box> concat(const std::vector<Box>& a, const std::vector<Box>& b) {
  std::vector<Box> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// λ(A \ B) for finite unions of boxes.
Rational measure_minus(const std::vector<Box>& a, const std::vector<Box>& b) {
  return union_measure(concat(a, b)) - union_measure(b);
}

std::vector<Box> inflate_all(const std::vector<Box>& boxes, const Rational& r) {
  std::vector<Box> out;
  out.reserve(boxes.size());
  for (const auto& b : boxes) out.push_back(b.inflated(r));
  return out;
}

// The open cube meets the closed box.
bool open_cube_meets(const Box& cube, const Box& closed) {
  for (std::size_t i = 0; i < cube.dimension(); ++i) {
    if (!(cube.side(i).lo < closed.side(i).hi && closed.side(i).lo < cube.side(i).hi)) return false;
  }
  return true;
}

Box centered_cube(std::size_t n, const Rational& half) {
  return Box(std::vector<Interval>(n, Interval{-half, half}));
}

int max_order(const std::vector<DyadicBox>& boxes) {
  int out = 0;
  for (const auto& b : boxes) out = std::max(out, b.order);
  return out;
}

// Exponent e with r = 2^{-e} when the rational is a dyadic fraction.
std::optional<int> dyadic_exponent(const Rational& r) {
  const mpz_class& den = r.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
  return static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
}

std::vector<DyadicCube> decompose_1d(const Rational& lo, const Rational& hi) {
  // Greedy maximal aligned cubes from the left.
  std::vector<DyadicCube> out;
  Rational x = lo;
  while (x < hi) {
    int order = *dyadic_exponent(x == 0 ? Rational(1) : x);
    if (x == 0) order = -62;
    Rational side = pow2(-order);
    while (x + side > hi || Rational(x / side).get_den() != 1) {
      ++order;
      side = pow2(-order);
    }
    const Rational a = x / side;
    out.push_back({order, {a.get_num().get_si()}});
    x += side;
  }
  return out;
}

}  // namespace

std::vector<Box> CompactDyadicSet::closed_boxes() const { return dyadic_boxes(boxes); }

Rational CompactDyadicSet::measure() const { return union_measure(closed_boxes()); }

std::vector<Box> OpenDyadicSet::closure_boxes() const { return dyadic_boxes(boxes); }

CoverResult dyadic_cover(const CompactDyadicSet& K, const OpenDyadicSet& G, const Rational& eps, int k0) {
  if (eps <= 0) throw std::invalid_argument("cover needs eps > 0");
  if (K.dimension != G.dimension) throw std::invalid_argument("K and G have different dimensions");
  const std::size_t n = K.dimension;
  for (const auto& b : K.boxes) {
    if (b.dimension() != n) throw std::invalid_argument("K box has the wrong dimension");
  }
  for (const auto& b : G.boxes) {
    if (b.dimension() != n) throw std::invalid_argument("G box has the wrong dimension");
  }
  const auto kb = K.closed_boxes();
  const auto gb = G.closure_boxes();
  CoverResult out;
  out.omega = DyadicComplex(k0, n);
  out.order = k0;
  if (union_measure(kb) == 0) {
    out.inside_g = out.covers_k = out.small_excess = out.cubes_meet_k = true;
    return out;
  }

  const Rational outside = measure_minus(kb, gb);
  if (outside > 0) throw std::invalid_argument("K is not contained in G: lambda(K \\ G) = " + outside.get_str());

  // Largest dyadic radius r with K ⊕ r inside the closure of G; its interior then lies in G.
  const int finest = std::max(max_order(K.boxes), max_order(G.boxes)) + 2;
  bool found = false;
  for (int m = 0; m <= finest; ++m) {
    const Rational r = pow2(-m);
    if (measure_minus(inflate_all(kb, r), gb) == 0) {
      out.distance_to_complement = r;
      found = true;
      break;
    }
  }
  if (!found) throw std::invalid_argument("K touches the complement of G (distance 0)");

  const Rational lambda_k = union_measure(kb);
  for (int i = 0;; ++i) {
    if (i > 200) throw std::runtime_error("no inflation radius meets the measure budget");
    const Rational r = pow2(-i);
    if (union_measure(inflate_all(kb, r)) - lambda_k < eps) {
      out.inflation_radius = r;
      break;
    }
  }

  // Sup-metric distances bound the Euclidean ones from below, so 2^{-k}√n < δ stays sufficient.
  const Rational delta = std::min(out.distance_to_complement, out.inflation_radius);
  int k = k0;
  while (!(Rational(static_cast<long>(n)) * pow2(-2 * k) < delta * delta)) ++k;
  out.order = k;
  out.omega = DyadicComplex(k, n);

  const Rational scale = pow2(k);
  double predicted = 0.0;
  for (const auto& b : kb) {
    double count = 1.0;
    for (const auto& s : b.sides()) count *= to_double(Rational((s.hi - s.lo) * scale)) + 2.0;
    predicted += count;
  }
  if (predicted > 4e6) throw std::runtime_error("cover would need more than 4e6 cubes at order " + std::to_string(k));

  for (const auto& b : kb) {
    std::vector<std::int64_t> lo(n);
    std::vector<std::int64_t> hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = floor_int(b.side(i).lo * scale);
      hi[i] = ceil_int(b.side(i).hi * scale) - 1;
    }
    std::vector<std::int64_t> a(lo);
    while (true) {
      out.omega.insert({k, a});
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (a[i] < hi[i]) {
          ++a[i];
          for (std::size_t r = i + 1; r < n; ++r) a[r] = lo[r];
          break;
        }
        if (i == 0) goto next_box;
      }
    }
  next_box:;
  }

  const auto ob = out.omega.boxes();
  out.inside_g = measure_minus(ob, gb) == 0;
  out.missed_measure = measure_minus(kb, ob);
  out.covers_k = out.missed_measure == 0;
  out.excess_measure = measure_minus(ob, kb);
  out.small_excess = out.excess_measure < eps;
  out.cubes_meet_k = std::all_of(ob.begin(), ob.end(), [&](const Box& q) {
    return std::any_of(kb.begin(), kb.end(), [&](const Box& b) { return open_cube_meets(q, b); });
  });
  return out;
}

StepFunction RationalSimpleFunction::to_step_function() const {
  std::vector<Piece> pieces;
  pieces.reserve(terms.size());
  for (const auto& [q, a] : terms) pieces.push_back({q.box(), a});
  return StepFunction::from_pieces(dimension, std::move(pieces)).simplified();
}

std::optional<RationalSimpleFunction> as_rational_simple(const StepFunction& f) {
  RationalSimpleFunction s;
  s.dimension = f.dimension();
  std::size_t budget = 1000000;
  for (const auto& p : f.pieces()) {
    int order = 0;
    for (const auto& side : p.region.sides()) {
      for (const Rational* x : {&side.lo, &side.hi}) {
        auto e = dyadic_exponent(*x);
        if (!e) return std::nullopt;
        order = std::max(order, *e);
      }
    }
    if (f.dimension() == 1) {
      for (auto& q : decompose_1d(p.region.side(0).lo, p.region.side(0).hi)) s.terms.emplace_back(std::move(q), p.value);
      continue;
    }
    const Rational scale = pow2(order);
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;
    double count = 1.0;
    for (const auto& side : p.region.sides()) {
      lo.push_back(floor_int(side.lo * scale));
      hi.push_back(floor_int(side.hi * scale) - 1);
      count *= static_cast<double>(hi.back() - lo.back() + 1);
    }
    if (count > static_cast<double>(budget)) return std::nullopt;
    budget -= static_cast<std::size_t>(count);
    std::vector<std::int64_t> a(lo);
    const std::size_t n = lo.size();
    bool done = false;
    while (!done) {
      s.terms.push_back({DyadicCube{order, a}, p.value});
      done = true;
      for (std::size_t i = n; i > 0; --i) {
        if (a[i - 1] < hi[i - 1]) {
          ++a[i - 1];
          for (std::size_t r = i; r < n; ++r) a[r] = lo[r];
          done = false;
          break;
        }
      }
    }
  }
  return s;
}

SetSequence parse_set_sequence(const std::string& name) {
  if (name == "shrink" || name == "shrink-to-null") return SetSequence::shrink_to_null;
  if (name == "escape" || name == "escape-to-infinity") return SetSequence::escape_to_infinity;
  if (name == "level" || name == "level-sets") return SetSequence::level_sets;
  throw std::invalid_argument("unknown set sequence '" + name + "'");
}

std::string to_string(SetSequence s) {
  switch (s) {
    case SetSequence::shrink_to_null: return "shrink-to-null";
    case SetSequence::escape_to_infinity: return "escape-to-infinity";
    case SetSequence::level_sets: return "level-sets";
  }
  return "?";
}

std::string to_string(ACVerdict v) {
  switch (v) {
    case ACVerdict::absolutely_continuous: return "AC";
    case ACVerdict::not_absolutely_continuous: return "non-AC";
    case ACVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

StepFunction restrict_to_set(const StepFunction& f, SetSequence seq, int k, const std::vector<Rational>& anchor) {
  switch (seq) {
    case SetSequence::shrink_to_null: {
      if (anchor.size() != f.dimension()) throw std::invalid_argument("anchor dimension mismatch");
      const Rational side = pow2(-k);
      std::vector<Interval> sides;
      for (const auto& a : anchor) sides.push_back({a, a + side});
      const Box e(std::move(sides));
      return restrict(f, std::span<const Box>(&e, 1));
    }
    case SetSequence::escape_to_infinity: {
      const Box inner = centered_cube(f.dimension(), pow2(k));
      return restrict_complement(f, std::span<const Box>(&inner, 1));
    }
    case SetSequence::level_sets:
      return restrict_level(f, pow2(k), true);
  }
  throw std::invalid_argument("unknown set sequence");
}

namespace {

std::vector<Rational> default_anchor(const StepFunction& f) {
  std::vector<Rational> a;
  if (f.is_zero()) return std::vector<Rational>(f.dimension(), Rational(0));
  for (const auto& s : f.pieces().front().region.sides()) a.push_back(s.lo);
  return a;
}

}  // namespace

ACWitness ac_test(const StepFunction& f, const QuasinormSpec& X, SetSequence seq, int depth,
                  std::optional<std::vector<Rational>> anchor) {
  if (depth < 1) throw std::invalid_argument("ac_test depth must be at least 1");
  ACWitness w;
  w.f = f;
  w.sequence = seq;
  w.anchor = anchor ? *anchor : default_anchor(f);
  for (int k = 0; k <= depth; ++k) {
    w.norms.push_back(X(restrict_to_set(f, seq, k, w.anchor)));
    if (k > 0 && w.norms[k] > w.norms[k - 1] * (1.0 + 1e-12)) w.monotone = false;
  }
  const auto& v = w.norms;
  const std::size_t m = v.size() - 1;
  bool geometric = m >= 3;
  for (std::size_t k = m - std::min<std::size_t>(m, 3) + 1; geometric && k <= m; ++k) {
    if (!(v[k] <= 0.999 * v[k - 1])) geometric = false;
  }
  if (v.back() == 0.0 || (w.monotone && geometric)) {
    w.verdict = ACVerdict::absolutely_continuous;
  } else if (w.monotone && v.front() > 0.0 && v.back() >= v.front() * (1.0 - 1e-12)) {
    w.verdict = ACVerdict::not_absolutely_continuous;
    w.epsilon = v.back() / 2.0;
  }
  return w;
}

bool ApproximationTrace::within_budgets() const {
  const double slack = 1e-12 * std::max(1.0, eps);
  return term_k <= 2.0 * eps + slack && term_e0 < eps && term_e1 < eps && term_e_minus_k < eps &&
         term_s_outside < eps;
}

double certified_constant(double C) { return 2.0 * C + C * C + std::pow(C, 3) + std::pow(C, 4) + std::pow(C, 5); }

Approximation approximate_simple(const StepFunction& f, const QuasinormSpec& X, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("approximation needs eps > 0");
  if (!X.rearrangement_invariant) throw std::invalid_argument("approximation needs a rearrangement-invariant norm");
  const double C = X.modulus;
  const std::size_t n = f.dimension();
  Approximation out;
  out.s.dimension = n;
  auto& tr = out.trace;
  tr.eps = eps;
  tr.certified = certified_constant(C) * eps;

  if (!f.is_zero()) {
    const auto own = ac_test(f, X, SetSequence::shrink_to_null, 24);
    if (own.verdict == ACVerdict::not_absolutely_continuous) {
      throw std::invalid_argument("hypothesis failed: f does not have absolutely continuous quasinorm in " + X.name);
    }
    const auto hull = ac_test(StepFunction::indicator(f.bounding_box()), X, SetSequence::shrink_to_null, 24);
    if (hull.verdict == ACVerdict::not_absolutely_continuous) {
      throw std::invalid_argument("hypothesis failed: indicators of compacts are not absolutely continuous in " + X.name);
    }
  }

  if (auto simple = as_rational_simple(f)) {
    out.s = std::move(*simple);
    tr.shortcut = true;
    tr.measured = X(f - out.s.to_step_function());
    return out;
  }

  tr.N = X.tail_threshold ? X.tail_threshold(f, eps) : bisect_tail_threshold(X, f, eps);
  const Box window = centered_cube(n, tr.N);
  tr.term_e0 = X(restrict_level(f, tr.N, true));
  tr.term_e1 = X(restrict_complement(f, std::span<const Box>(&window, 1)));

  // E = supp f ∩ {|f| ≤ N} ∩ [−N, N]ⁿ, kept piecewise with its values.
  std::vector<Piece> e_pieces;
  const Rational n2 = tr.N * tr.N;
  for (const auto& p : f.pieces()) {
    if (p.value.norm2() > n2 || !p.region.overlaps(window)) continue;
    e_pieces.push_back({p.region.intersect(window), p.value});
  }
  std::vector<Box> e_boxes;
  for (const auto& p : e_pieces) e_boxes.push_back(p.region);
  std::vector<Piece> ones;
  for (const auto& b : e_boxes) ones.push_back({b, ComplexRational(1)});
  tr.L = X(StepFunction::from_pieces(n, ones));
  if (tr.L == 0.0) {
    tr.measured = X(f);
    tr.term_e_minus_k = 0.0;
    tr.combined = std::pow(C, 5) * tr.term_e0 + std::pow(C, 4) * tr.term_e1;
    return out;
  }

  // δ from the rearrangement-invariant moduli ‖f*χ_[0,δ)‖ and ‖χ_[0,δ)‖.
  std::vector<std::pair<double, double>> cells;
  for (const auto& p : f.pieces()) cells.emplace_back(p.value.modulus_double(), to_double(p.region.measure()));
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  auto head_norm = [&](double delta) {
    std::vector<double> mags;
    std::vector<double> meas;
    double used = 0.0;
    for (const auto& [v, m] : cells) {
      if (used >= delta) break;
      mags.push_back(v);
      meas.push_back(std::min(m, delta - used));
      used += meas.back();
    }
    return X.evaluate_cells(mags, meas);
  };
  const double indicator_budget = eps / (to_double(tr.N) + eps / tr.L);
  tr.delta = Rational(1);
  for (int i = 0;; ++i) {
    if (i > 400) throw std::runtime_error("no delta satisfies the absolute-continuity budgets");
    const double d = to_double(tr.delta);
    const double one = 1.0;
    if (head_norm(d) < eps && X.evaluate_cells(std::span<const double>(&one, 1), std::span<const double>(&d, 1)) <
                                  indicator_budget) {
      break;
    }
    tr.delta /= 2;
  }

  // K: strictly inner dyadic boxes of order j, one per piece of E, so that
  // points of K in different pieces are at sup-distance ≥ 2·2^{-j}.
  int j = 0;
  std::vector<DyadicBox> k_boxes;
  std::vector<ComplexRational> k_values;
  for (;; ++j) {
    if (j > 60) throw std::runtime_error("no inner dyadic compact meets lambda(E \\ K) < delta");
    k_boxes.clear();
    k_values.clear();
    const Rational scale = pow2(j);
    Rational inner(0);
    for (const auto& p : e_pieces) {
      DyadicBox b{j, {}, {}};
      bool ok = true;
      for (const auto& s : p.region.sides()) {
        b.lo.push_back(ceil_int(s.lo * scale) + 1);
        b.hi.push_back(floor_int(s.hi * scale) - 1);
        if (b.lo.back() >= b.hi.back()) ok = false;
      }
      if (!ok) continue;
      inner += b.box().measure();
      k_boxes.push_back(std::move(b));
      k_values.push_back(p.value);
    }
    if (union_measure(e_boxes) - inner < tr.delta) break;
  }
  tr.Delta = pow2(1 - j);
  tr.k0 = j - 2;
  while (!(Rational(static_cast<long>(n)) * pow2(-2 * tr.k0) < tr.Delta * tr.Delta)) ++tr.k0;

  OpenDyadicSet G{n, {}};
  for (const auto& b : e_boxes) {
    DyadicBox hull{0, {}, {}};
    for (const auto& s : b.sides()) {
      hull.lo.push_back(floor_int(s.lo) - 1);
      hull.hi.push_back(ceil_int(s.hi) + 1);
    }
    G.boxes.push_back(std::move(hull));
  }
  const CompactDyadicSet K{n, k_boxes};
  const auto cover = dyadic_cover(K, G, tr.delta, tr.k0);
  if (!cover.verified()) throw std::logic_error("dyadic cover failed its own verification");
  tr.order = cover.order;

  const auto kb = K.closed_boxes();
  for (const auto& q : cover.omega.cubes()) {
    const Box qb = q.box();
    for (std::size_t i = 0; i < kb.size(); ++i) {
      if (open_cube_meets(qb, kb[i])) {
        // x_i ∈ Q ∩ K lies in a single piece of f, so a_i = f(x_i) is exact.
        out.s.terms.emplace_back(q, k_values[i]);
        break;
      }
    }
  }
  tr.cubes = out.s.terms.size();

  const StepFunction s = out.s.to_step_function();
  const StepFunction diff = f - s;
  tr.term_k = X(restrict(diff, kb));
  tr.term_e_minus_k = X(restrict_complement(restrict(f, e_boxes), kb));
  tr.term_s_outside = X(restrict_complement(s, kb));
  tr.measured = X(diff);
  tr.combined = C * tr.term_k + std::pow(C, 5) * tr.term_e0 + std::pow(C, 4) * tr.term_e1 +
                std::pow(C, 3) * tr.term_e_minus_k + C * C * tr.term_s_outside;
  return out;
}

SplitResult non_ac_split(const StepFunction& f, const QuasinormSpec& X, SetSequence seq, double eps, int count,
                         int horizon, std::optional<std::vector<Rational>> anchor) {
  if (count < 1) throw std::invalid_argument("split needs count >= 1");
  const StepFunction g = abs(f);
  const auto a = anchor ? *anchor : default_anchor(g);
  SplitResult out;
  int current = 0;
  StepFunction outer = restrict_to_set(g, seq, current, a);
  if (!(X(outer) > eps)) throw std::invalid_argument("precondition failed: ||f chi_E_0|| <= eps");
  out.indices.push_back(current);
  for (int i = 0; i < count; ++i) {
    bool found = false;
    for (int k = current + 1; k <= horizon; ++k) {
      const StepFunction inner = restrict_to_set(g, seq, k, a);
      if (!(X(inner) > eps)) {
        throw std::invalid_argument("precondition failed: ||f chi_E_" + std::to_string(k) + "|| <= eps");
      }
      const StepFunction part = outer - inner;
      const double norm = X(part);
      if (norm > eps) {
        out.parts.push_back(part);
        out.norms.push_back(norm);
        out.indices.push_back(k);
        current = k;
        outer = inner;
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("horizon exhausted while building part " + std::to_string(i));
  }
  for (std::size_t i = 0; i < out.parts.size(); ++i) {
    if (!(out.norms[i] > eps)) out.above_eps = false;
    if (!dominated(out.parts[i], g)) out.dominated = false;
    for (const auto& p : out.parts[i].pieces()) {
      if (!p.value.is_real() || p.value.re < 0) out.dominated = false;
    }
    for (std::size_t j = i + 1; j < out.parts.size(); ++j) {
      if (support_overlap(out.parts[i], out.parts[j]) != 0) out.disjoint = false;
    }
  }
  return out;
}

}  // namespace qbfs
