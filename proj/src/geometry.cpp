#include "qbfs/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qbfs {

Box::Box(std::vector<Interval> sides) : sides_(std::move(sides)) {
  if (sides_.empty()) throw std::invalid_argument("box needs at least one side");
}

Box Box::interval(Rational lo, Rational hi) { return Box({Interval{std::move(lo), std::move(hi)}}); }

bool Box::degenerate() const {
  return std::any_of(sides_.begin(), sides_.end(), [](const Interval& s) { return s.hi <= s.lo; });
}

Rational Box::measure() const {
  Rational m(1);
  for (const auto& s : sides_) {
    if (s.hi <= s.lo) return Rational(0);
    m *= s.hi - s.lo;
  }
  return m;
}

Box Box::intersect(const Box& other) const {
  if (dimension() != other.dimension()) throw std::invalid_argument("box dimension mismatch");
  std::vector<Interval> out;
  out.reserve(sides_.size());
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    out.push_back({std::max(sides_[i].lo, other.sides_[i].lo), std::min(sides_[i].hi, other.sides_[i].hi)});
  }
  return Box(std::move(out));
}

bool Box::overlaps(const Box& other) const {
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    if (sides_[i].hi <= other.sides_[i].lo || other.sides_[i].hi <= sides_[i].lo) return false;
  }
  return !degenerate() && !other.degenerate();
}

bool Box::touches(const Box& other) const {
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    if (sides_[i].hi < other.sides_[i].lo || other.sides_[i].hi < sides_[i].lo) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const {
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    if (other.sides_[i].lo < sides_[i].lo || other.sides_[i].hi > sides_[i].hi) return false;
  }
  return true;
}

bool Box::contains_point(std::span<const Rational> x) const {
  if (x.size() != sides_.size()) throw std::invalid_argument("point dimension mismatch");
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    if (x[i] <= sides_[i].lo || x[i] >= sides_[i].hi) return false;
  }
  return true;
}

std::vector<Box> Box::subtract(const Box& other) const {
  if (!overlaps(other)) {
    if (degenerate()) return {};
    return {*this};
  }
  std::vector<Box> out;
  std::vector<Interval> rest = sides_;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const Interval& o = other.sides_[i];
    if (rest[i].lo < o.lo) {
      auto part = rest;
      part[i].hi = o.lo;
      out.emplace_back(std::move(part));
      rest[i].lo = o.lo;
    }
    if (o.hi < rest[i].hi) {
      auto part = rest;
      part[i].lo = o.hi;
      out.emplace_back(std::move(part));
      rest[i].hi = o.hi;
    }
  }
  return out;
}

Box Box::inflated(const Rational& r) const {
  std::vector<Interval> out = sides_;
  for (auto& s : out) {
    s.lo -= r;
    s.hi += r;
  }
  return Box(std::move(out));
}

Box Box::scaled_down(const Rational& a) const {
  if (a <= 0) throw std::invalid_argument("scale factor must be positive");
  std::vector<Interval> out = sides_;
  for (auto& s : out) {
    s.lo /= a;
    s.hi /= a;
  }
  return Box(std::move(out));
}

bool operator<(const Box& a, const Box& b) {
  const auto n = std::min(a.sides_.size(), b.sides_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.sides_[i].lo != b.sides_[i].lo) return a.sides_[i].lo < b.sides_[i].lo;
    if (a.sides_[i].hi != b.sides_[i].hi) return a.sides_[i].hi < b.sides_[i].hi;
  }
  return a.sides_.size() < b.sides_.size();
}

std::string to_string(const Box& b) {
  std::string out;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    if (i != 0) out += "x";
    out += "(" + b.side(i).lo.get_str() + "," + b.side(i).hi.get_str() + ")";
  }
  return out;
}

namespace {

Rational union_measure_axis(const std::vector<const Box*>& boxes, std::size_t axis) {
  if (boxes.empty()) return Rational(0);
  const std::size_t dim = boxes.front()->dimension();
  if (axis + 1 == dim) {
    std::vector<const Interval*> sides;
    sides.reserve(boxes.size());
    for (const Box* b : boxes) sides.push_back(&b->side(axis));
    std::sort(sides.begin(), sides.end(), [](const Interval* x, const Interval* y) { return x->lo < y->lo; });
    Rational total(0);
    Rational cur_lo = sides.front()->lo;
    Rational cur_hi = sides.front()->hi;
    for (std::size_t i = 1; i < sides.size(); ++i) {
      if (sides[i]->lo > cur_hi) {
        total += cur_hi - cur_lo;
        cur_lo = sides[i]->lo;
        cur_hi = sides[i]->hi;
      } else if (sides[i]->hi > cur_hi) {
        cur_hi = sides[i]->hi;
      }
    }
    total += cur_hi - cur_lo;
    return total;
  }
  std::vector<Rational> cuts;
  cuts.reserve(2 * boxes.size());
  for (const Box* b : boxes) {
    cuts.push_back(b->side(axis).lo);
    cuts.push_back(b->side(axis).hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Rational total(0);
  std::vector<const Box*> active;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    active.clear();
    for (const Box* b : boxes) {
      if (b->side(axis).lo <= cuts[i] && b->side(axis).hi >= cuts[i + 1]) active.push_back(b);
    }
    if (!active.empty()) total += (cuts[i + 1] - cuts[i]) * union_measure_axis(active, axis + 1);
  }
  return total;
}

}  // namespace

Rational union_measure(std::span<const Box> boxes) {
  std::vector<const Box*> live;
  live.reserve(boxes.size());
  for (const Box& b : boxes) {
    if (!live.empty() && live.front()->dimension() != b.dimension()) {
      throw std::invalid_argument("union_measure: mixed dimensions");
    }
    for (const auto& s : b.sides()) {
      if (s.hi < s.lo) throw std::invalid_argument("union_measure: inverted side in " + to_string(b));
    }
    if (!b.degenerate()) live.push_back(&b);
  }
  return union_measure_axis(live, 0);
}

std::vector<Box> disjointify(std::span<const Box> boxes) {
  std::vector<Box> out;
  for (const Box& b : boxes) {
    if (b.degenerate()) continue;
    std::vector<Box> pieces{b};
    for (const Box& done : out) {
      if (pieces.empty()) break;
      std::vector<Box> next;
      for (const Box& p : pieces) {
        auto rest = p.subtract(done);
        next.insert(next.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
      }
      pieces = std::move(next);
    }
    out.insert(out.end(), std::make_move_iterator(pieces.begin()), std::make_move_iterator(pieces.end()));
  }
  return out;
}

Box DyadicCube::box() const {
  const Rational side = pow2(-order);
  std::vector<Interval> sides;
  sides.reserve(corner.size());
  for (auto a : corner) {
    Rational lo = Rational(mpz_class(static_cast<long>(a))) * side;
    sides.push_back({lo, lo + side});
  }
  return Box(std::move(sides));
}

Rational DyadicCube::measure() const { return pow2(-order * static_cast<int>(corner.size())); }

DyadicBox DyadicBox::from_cube(const DyadicCube& q) {
  DyadicBox b{q.order, q.corner, q.corner};
  for (auto& h : b.hi) h += 1;
  return b;
}

Box DyadicBox::box() const {
  const Rational side = pow2(-order);
  std::vector<Interval> sides;
  sides.reserve(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    sides.push_back({Rational(mpz_class(static_cast<long>(lo[i]))) * side,
                     Rational(mpz_class(static_cast<long>(hi[i]))) * side});
  }
  return Box(std::move(sides));
}

DyadicBox DyadicBox::refined_to(int finer_order) const {
  if (finer_order < order) throw std::invalid_argument("refined_to: order must not decrease");
  const int shift = finer_order - order;
  if (shift > 60) throw std::overflow_error("refined_to: order gap too large");
  DyadicBox out{finer_order, lo, hi};
  for (auto& v : out.lo) v *= std::int64_t{1} << shift;
  for (auto& v : out.hi) v *= std::int64_t{1} << shift;
  return out;
}

DyadicComplex::DyadicComplex(int order, std::size_t dimension) : order_(order), dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("complex dimension must be positive");
}

void DyadicComplex::insert(const DyadicCube& q) {
  if (q.order != order_) throw std::invalid_argument("complex member has the wrong order");
  if (q.dimension() != dimension_) throw std::invalid_argument("complex member has the wrong dimension");
  corners_.insert(q.corner);
}

bool DyadicComplex::contains(const DyadicCube& q) const {
  return q.order == order_ && corners_.count(q.corner) != 0;
}

std::vector<DyadicCube> DyadicComplex::cubes() const {
  std::vector<DyadicCube> out;
  out.reserve(corners_.size());
  for (const auto& c : corners_) out.push_back({order_, c});
  return out;
}

std::vector<Box> DyadicComplex::boxes() const {
  std::vector<Box> out;
  out.reserve(corners_.size());
  for (const auto& c : corners_) out.push_back(DyadicCube{order_, c}.box());
  return out;
}

Rational DyadicComplex::measure() const {
  return Rational(mpz_class(static_cast<unsigned long>(corners_.size()))) *
         pow2(-order_ * static_cast<int>(dimension_));
}

}  // namespace qbfs
