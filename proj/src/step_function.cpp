#include "qbfs/step_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace qbfs {

struct StepFunctionAccess {
  /// Builds without the disjointness scan; callers produce disjoint pieces.
  static StepFunction make(std::size_t dimension, std::vector<Piece> pieces) {
    StepFunction f(dimension);
    f.pieces_.reserve(pieces.size());
    for (auto& p : pieces) {
      if (!p.value.is_zero() && !p.region.degenerate()) f.pieces_.push_back(std::move(p));
    }
    return f;
  }
};

namespace {

void require_same_dimension(const StepFunction& f, const StepFunction& g) {
  if (f.dimension() != g.dimension()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(f.dimension()) + " vs " +
                                std::to_string(g.dimension()));
  }
}

bool by_first_lo(const Piece& a, const Piece& b) { return a.region.side(0).lo < b.region.side(0).lo; }

ComplexRational apply(CombineOp op, const ComplexRational& a, const ComplexRational& b) {
  switch (op) {
    case CombineOp::add:
      return a + b;
    case CombineOp::subtract:
      return a - b;
    case CombineOp::multiply:
      return a * b;
    case CombineOp::max:
    case CombineOp::min:
      if (!a.is_real() || !b.is_real()) throw std::domain_error("max/min need real-valued step functions");
      if (op == CombineOp::max) return a.re >= b.re ? a : b;
      return a.re <= b.re ? a : b;
  }
  return {};
}

std::vector<Piece> sorted_pieces(const StepFunction& f) {
  std::vector<Piece> out = f.pieces();
  std::sort(out.begin(), out.end(), by_first_lo);
  return out;
}

// One-dimensional sweep over the merged breakpoints.
StepFunction combine_1d(const StepFunction& f, const StepFunction& g, CombineOp op) {
  const auto fp = sorted_pieces(f);
  const auto gp = sorted_pieces(g);
  std::vector<Rational> cuts;
  cuts.reserve(2 * (fp.size() + gp.size()));
  for (const auto* list : {&fp, &gp}) {
    for (const auto& p : *list) {
      cuts.push_back(p.region.side(0).lo);
      cuts.push_back(p.region.side(0).hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto value_on = [](const std::vector<Piece>& list, std::size_t& cursor, const Rational& lo,
                     const Rational& hi) -> ComplexRational {
    while (cursor < list.size() && list[cursor].region.side(0).hi <= lo) ++cursor;
    if (cursor < list.size() && list[cursor].region.side(0).lo <= lo && list[cursor].region.side(0).hi >= hi) {
      return list[cursor].value;
    }
    return {};
  };

  std::vector<Piece> out;
  std::size_t fi = 0;
  std::size_t gi = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& lo = cuts[i];
    const Rational& hi = cuts[i + 1];
    ComplexRational a = value_on(fp, fi, lo, hi);
    ComplexRational b = value_on(gp, gi, lo, hi);
    if (a.is_zero() && b.is_zero()) continue;
    ComplexRational v = apply(op, a, b);
    if (v.is_zero()) continue;
    if (!out.empty() && out.back().region.side(0).hi == lo && out.back().value == v) {
      out.back().region = Box::interval(out.back().region.side(0).lo, hi);
    } else {
      out.push_back({Box::interval(lo, hi), std::move(v)});
    }
  }
  return StepFunctionAccess::make(1, std::move(out));
}

std::vector<Box> minus_all(const Box& region, const std::vector<const Box*>& holes) {
  std::vector<Box> pieces{region};
  for (const Box* h : holes) {
    std::vector<Box> next;
    for (const Box& p : pieces) {
      auto rest = p.subtract(*h);
      next.insert(next.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return pieces;
}

StepFunction combine_nd(const StepFunction& f, const StepFunction& g, CombineOp op) {
  std::vector<Piece> out;
  const ComplexRational zero;
  for (const auto& p : f.pieces()) {
    std::vector<const Box*> holes;
    for (const auto& q : g.pieces()) {
      if (!p.region.overlaps(q.region)) continue;
      holes.push_back(&q.region);
      out.push_back({p.region.intersect(q.region), apply(op, p.value, q.value)});
    }
    ComplexRational v = apply(op, p.value, zero);
    if (!v.is_zero()) {
      for (auto& b : minus_all(p.region, holes)) out.push_back({std::move(b), v});
    }
  }
  for (const auto& q : g.pieces()) {
    ComplexRational v = apply(op, zero, q.value);
    if (v.is_zero()) continue;
    std::vector<const Box*> holes;
    for (const auto& p : f.pieces()) {
      if (q.region.overlaps(p.region)) holes.push_back(&p.region);
    }
    for (auto& b : minus_all(q.region, holes)) out.push_back({std::move(b), v});
  }
  return StepFunctionAccess::make(f.dimension(), std::move(out));
}

}  // namespace

StepFunction::StepFunction(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("step function dimension must be positive");
}

StepFunction StepFunction::from_pieces(std::size_t dimension, std::vector<Piece> pieces) {
  for (const auto& p : pieces) {
    if (p.region.dimension() != dimension) {
      throw std::invalid_argument("piece " + to_string(p.region) + " has the wrong dimension");
    }
    for (const auto& s : p.region.sides()) {
      if (s.hi < s.lo) throw std::invalid_argument("inverted region " + to_string(p.region));
    }
  }
  StepFunction f = StepFunctionAccess::make(dimension, std::move(pieces));
  std::vector<const Piece*> order;
  order.reserve(f.pieces_.size());
  for (const auto& p : f.pieces_) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const Piece* a, const Piece* b) { return by_first_lo(*a, *b); });
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (order[j]->region.side(0).lo >= order[i]->region.side(0).hi) break;
      if (order[i]->region.overlaps(order[j]->region)) {
        throw std::invalid_argument("overlapping regions " + to_string(order[i]->region) + " and " +
                                    to_string(order[j]->region));
      }
    }
  }
  return f;
}

StepFunction StepFunction::indicator(const Box& region) { return constant(region, ComplexRational(1)); }

StepFunction StepFunction::constant(const Box& region, ComplexRational value) {
  return from_pieces(region.dimension(), {Piece{region, std::move(value)}});
}

bool StepFunction::is_real() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.value.is_real(); });
}

ComplexRational StepFunction::value_at(std::span<const Rational> x) const {
  for (const auto& p : pieces_) {
    if (p.region.contains_point(x)) return p.value;
  }
  return {};
}

std::vector<Box> StepFunction::support() const {
  std::vector<Box> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(p.region);
  return out;
}

Rational StepFunction::support_measure() const {
  Rational m(0);
  for (const auto& p : pieces_) m += p.region.measure();
  return m;
}

Box StepFunction::bounding_box() const {
  if (pieces_.empty()) throw std::logic_error("bounding box of the zero function");
  std::vector<Interval> sides = pieces_.front().region.sides();
  for (const auto& p : pieces_) {
    for (std::size_t i = 0; i < dimension_; ++i) {
      sides[i].lo = std::min(sides[i].lo, p.region.side(i).lo);
      sides[i].hi = std::max(sides[i].hi, p.region.side(i).hi);
    }
  }
  return Box(std::move(sides));
}

Rational StepFunction::max_norm2() const {
  Rational m(0);
  for (const auto& p : pieces_) m = std::max(m, p.value.norm2());
  return m;
}

StepFunction StepFunction::simplified() const {
  std::vector<Piece> sorted = pieces_;
  std::sort(sorted.begin(), sorted.end(), [](const Piece& a, const Piece& b) { return a.region < b.region; });
  if (dimension_ != 1) return StepFunctionAccess::make(dimension_, std::move(sorted));
  std::vector<Piece> merged;
  for (auto& p : sorted) {
    if (!merged.empty() && merged.back().region.side(0).hi == p.region.side(0).lo && merged.back().value == p.value) {
      merged.back().region = Box::interval(merged.back().region.side(0).lo, p.region.side(0).hi);
    } else {
      merged.push_back(std::move(p));
    }
  }
  return StepFunctionAccess::make(1, std::move(merged));
}

StepFunction pointwise_combine(const StepFunction& f, const StepFunction& g, CombineOp op) {
  require_same_dimension(f, g);
  if (f.dimension() == 1) return combine_1d(f, g, op);
  return combine_nd(f, g, op);
}

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  return pointwise_combine(f, g, CombineOp::add);
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
  return pointwise_combine(f, g, CombineOp::subtract);
}

StepFunction scale(const StepFunction& f, const ComplexRational& a) {
  std::vector<Piece> out;
  if (a.is_zero()) return StepFunction(f.dimension());
  out.reserve(f.size());
  for (const auto& p : f.pieces()) out.push_back({p.region, p.value * a});
  return StepFunctionAccess::make(f.dimension(), std::move(out));
}

StepFunction abs(const StepFunction& f) {
  std::vector<Piece> out;
  out.reserve(f.size());
  for (const auto& p : f.pieces()) {
    auto m = p.value.modulus();
    if (!m) throw std::domain_error("modulus of " + to_string(p.value) + " is irrational");
    out.push_back({p.region, ComplexRational(*m)});
  }
  return StepFunctionAccess::make(f.dimension(), std::move(out));
}

StepFunction restrict(const StepFunction& f, std::span<const Box> region_set) {
  const auto parts = disjointify(region_set);
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) {
    for (const auto& e : parts) {
      if (p.region.overlaps(e)) out.push_back({p.region.intersect(e), p.value});
    }
  }
  return StepFunctionAccess::make(f.dimension(), std::move(out));
}

StepFunction restrict_complement(const StepFunction& f, std::span<const Box> region_set) {
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) {
    std::vector<const Box*> holes;
    for (const auto& e : region_set) {
      if (p.region.overlaps(e)) holes.push_back(&e);
    }
    for (auto& b : minus_all(p.region, holes)) out.push_back({std::move(b), p.value});
  }
  return StepFunctionAccess::make(f.dimension(), std::move(out));
}

StepFunction restrict_level(const StepFunction& f, const Rational& level, bool above) {
  const Rational level2 = level < 0 ? Rational(0) : Rational(level * level);
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) {
    const bool is_above = level < 0 || p.value.norm2() > level2;
    if (is_above == above) out.push_back(p);
  }
  return StepFunctionAccess::make(f.dimension(), std::move(out));
}

StepFunction dilate(const StepFunction& f, const Rational& a) {
  if (a <= 0) throw std::invalid_argument("dilation parameter must be positive, got " + a.get_str());
  std::vector<Piece> out;
  out.reserve(f.size());
  for (const auto& p : f.pieces()) out.push_back({p.region.scaled_down(a), p.value});
  return StepFunctionAccess::make(f.dimension(), std::move(out));
}

Rational measure(std::span<const Box> region_set) { return union_measure(region_set); }

ComplexRational integrate(const StepFunction& f) {
  ComplexRational total;
  for (const auto& p : f.pieces()) total = total + p.value * ComplexRational(p.region.measure());
  return total;
}

Rational integrate_abs(const StepFunction& f) {
  Rational total(0);
  for (const auto& p : f.pieces()) {
    auto m = p.value.modulus();
    if (!m) throw std::domain_error("modulus of " + to_string(p.value) + " is irrational");
    total += *m * p.region.measure();
  }
  return total;
}

Rational integrate_abs_product(const StepFunction& f, const StepFunction& g) {
  require_same_dimension(f, g);
  Rational total(0);
  for (const auto& p : f.pieces()) {
    for (const auto& q : g.pieces()) {
      if (!p.region.overlaps(q.region)) continue;
      auto m = (p.value * q.value).modulus();
      if (!m) throw std::domain_error("modulus of a product value is irrational");
      total += *m * p.region.intersect(q.region).measure();
    }
  }
  return total;
}

bool dominated(const StepFunction& f, const StepFunction& g) {
  require_same_dimension(f, g);
  for (const auto& p : f.pieces()) {
    const Rational need = p.value.norm2();
    Rational covered(0);
    for (const auto& q : g.pieces()) {
      if (q.value.norm2() >= need && p.region.overlaps(q.region)) covered += p.region.intersect(q.region).measure();
    }
    if (covered != p.region.measure()) return false;
  }
  return true;
}

bool equal_ae(const StepFunction& f, const StepFunction& g) { return (f - g).is_zero(); }

Rational support_overlap(const StepFunction& f, const StepFunction& g) {
  require_same_dimension(f, g);
  Rational total(0);
  for (const auto& p : f.pieces()) {
    for (const auto& q : g.pieces()) {
      if (p.region.overlaps(q.region)) total += p.region.intersect(q.region).measure();
    }
  }
  return total;
}

std::string to_string(const StepFunction& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& p : f.pieces()) {
    if (!out.empty()) out += " + ";
    out += to_string(p.value) + "*chi" + to_string(p.region);
  }
  return out;
}

}  // namespace qbfs

namespace qbfs {

MeasureSpaceDescriptor MeasureSpaceDescriptor::interval(Rational length) {
  if (length <= 0) throw std::invalid_argument("interval length must be positive");
  MeasureSpaceDescriptor d(Kind::interval, 1);
  d.total_ = std::move(length);
  return d;
}

MeasureSpaceDescriptor MeasureSpaceDescriptor::euclidean(std::size_t dimension) {
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
  return MeasureSpaceDescriptor(Kind::euclidean, dimension);
}

MeasureSpaceDescriptor MeasureSpaceDescriptor::atomic(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("atomic space needs at least one atom");
  MeasureSpaceDescriptor d(Kind::atomic, 1);
  for (const auto& a : atoms) {
    if (a.weight <= 0) throw std::invalid_argument("atom '" + a.label + "' has non-positive weight");
    d.total_ += a.weight;
  }
  d.atoms_ = std::move(atoms);
  return d;
}

std::vector<Box> MeasureSpaceDescriptor::atom_cells() const {
  std::vector<Box> out;
  Rational at(0);
  for (const auto& a : atoms_) {
    out.push_back(Box::interval(at, at + a.weight));
    at += a.weight;
  }
  return out;
}

StepFunction MeasureSpaceDescriptor::embed(std::span<const ComplexRational> atom_values) const {
  if (kind_ != Kind::atomic) throw std::logic_error("embed is only defined for atomic spaces");
  if (atom_values.size() != atoms_.size()) throw std::invalid_argument("one value per atom expected");
  const auto cells = atom_cells();
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < cells.size(); ++i) pieces.push_back({cells[i], atom_values[i]});
  return StepFunction::from_pieces(1, std::move(pieces));
}

bool MeasureSpaceDescriptor::admits(const StepFunction& f) const {
  if (f.dimension() != dimension_) return false;
  if (kind_ == Kind::euclidean || f.is_zero()) return true;
  const Box whole = Box::interval(0, total_);
  return std::all_of(f.pieces().begin(), f.pieces().end(),
                     [&](const Piece& p) { return whole.contains(p.region); });
}

}  // namespace qbfs
