#include "qbfs/serialization.hpp"

#include <stdexcept>

namespace qbfs {

namespace {

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()), 10);
  if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

// A box is a dyadic cube when all sides share one power-of-two length and
// every lower end is an integer multiple of it.
bool as_dyadic_cube(const Box& b, DyadicCube& out) {
  const Rational side = b.side(0).length();
  if (side <= 0 || side.get_num() != 1) return false;
  const mpz_class& den = side.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) return false;
  const auto order = static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
  out.order = order;
  out.corner.clear();
  for (const auto& s : b.sides()) {
    if (s.length() != side) return false;
    const Rational a = s.lo / side;
    if (a.get_den() != 1 || !a.get_num().fits_slong_p()) return false;
    out.corner.push_back(a.get_num().get_si());
  }
  return true;
}

}  // namespace

Json to_json(const Rational& r) { return Json{{"num", integer_json(r.get_num())}, {"den", integer_json(r.get_den())}}; }

Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    if (!j.contains("num") || !j.contains("den")) throw std::invalid_argument("rational needs num and den");
    Rational r(integer_from_json(j.at("num")), integer_from_json(j.at("den")));
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    r.canonicalize();
    return r;
  }
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

Json to_json(const ComplexRational& z) {
  if (z.is_real()) return to_json(z.re);
  return Json{{"re", to_json(z.re)}, {"im", to_json(z.im)}};
}

ComplexRational complex_from_json(const Json& j) {
  if (j.is_object() && j.contains("re")) {
    return {rational_from_json(j.at("re")), j.contains("im") ? rational_from_json(j.at("im")) : Rational(0)};
  }
  return ComplexRational(rational_from_json(j));
}

Json to_json(const DyadicCube& q) {
  return Json{{"k", q.order}, {"a", q.corner}};
}

Json to_json(const Box& b) {
  DyadicCube q;
  if (as_dyadic_cube(b, q)) return to_json(q);
  if (b.dimension() == 1) return Json{{"lo", to_json(b.side(0).lo)}, {"hi", to_json(b.side(0).hi)}};
  Json lo = Json::array();
  Json hi = Json::array();
  for (const auto& s : b.sides()) {
    lo.push_back(to_json(s.lo));
    hi.push_back(to_json(s.hi));
  }
  return Json{{"lo", lo}, {"hi", hi}};
}

Box box_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("region must be an object, got " + j.dump());
  if (j.contains("k")) {
    DyadicCube q;
    q.order = j.at("k").get<int>();
    const Json& a = j.at("a");
    if (a.is_array()) {
      for (const auto& v : a) q.corner.push_back(v.get<std::int64_t>());
    } else {
      q.corner.push_back(a.get<std::int64_t>());
    }
    if (q.corner.empty()) throw std::invalid_argument("dyadic cube needs a corner");
    return q.box();
  }
  if (!j.contains("lo") || !j.contains("hi")) throw std::invalid_argument("region needs k/a or lo/hi");
  const Json& lo = j.at("lo");
  const Json& hi = j.at("hi");
  std::vector<Interval> sides;
  if (lo.is_array() != hi.is_array()) throw std::invalid_argument("region lo/hi shapes differ");
  if (lo.is_array()) {
    if (lo.size() != hi.size()) throw std::invalid_argument("region lo/hi lengths differ");
    for (std::size_t i = 0; i < lo.size(); ++i) sides.push_back({rational_from_json(lo[i]), rational_from_json(hi[i])});
  } else {
    sides.push_back({rational_from_json(lo), rational_from_json(hi)});
  }
  for (const auto& s : sides) {
    if (s.hi < s.lo) throw std::invalid_argument("region has lo > hi");
  }
  return Box(std::move(sides));
}

Json to_json(const DyadicComplex& c) {
  Json cubes = Json::array();
  for (const auto& q : c.cubes()) cubes.push_back(q.corner);
  return Json{{"k", c.order()}, {"dimension", c.dimension()}, {"corners", cubes}, {"measure", to_json(c.measure())}};
}

Json to_json(const StepFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back(Json{{"region", to_json(p.region)}, {"value", to_json(p.value)}});
  return Json{{"dimension", f.dimension()}, {"pieces", pieces}};
}

StepFunction step_function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("pieces")) throw std::invalid_argument("step function needs a pieces array");
  std::vector<Piece> pieces;
  for (const auto& p : j.at("pieces")) {
    pieces.push_back({box_from_json(p.at("region")), complex_from_json(p.at("value"))});
  }
  std::size_t dim = 1;
  if (j.contains("dimension")) {
    dim = j.at("dimension").get<std::size_t>();
  } else if (!pieces.empty()) {
    dim = pieces.front().region.dimension();
  }
  return StepFunction::from_pieces(dim, std::move(pieces));
}

Json to_json(const RearrangementProfile& p) {
  Json t = Json::array();
  Json v = Json::array();
  for (const auto& b : p.breakpoints()) t.push_back(to_json(b));
  for (const auto& x : p.values()) v.push_back(to_json(x));
  return Json{{"breakpoints", t}, {"values", v}};
}

RearrangementProfile profile_from_json(const Json& j) {
  std::vector<Rational> t;
  std::vector<Rational> v;
  for (const auto& b : j.at("breakpoints")) t.push_back(rational_from_json(b));
  for (const auto& x : j.at("values")) v.push_back(rational_from_json(x));
  return RearrangementProfile::from_parts(std::move(t), std::move(v));
}

}  // namespace qbfs
