#include "qbfs/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

namespace qbfs {

DistributionFunction::DistributionFunction(std::vector<Rational> levels, std::vector<Rational> level_measures)
    : levels_(std::move(levels)), measures_(std::move(level_measures)) {
  if (levels_.size() != measures_.size()) throw std::invalid_argument("one measure per level expected");
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (!(levels_[i] < levels_[i - 1])) throw std::invalid_argument("levels must strictly decrease");
  }
}

Rational DistributionFunction::operator()(const Rational& s) const {
  Rational total(0);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i] > s) total += measures_[i];
  }
  return total;
}

StepFunction DistributionFunction::as_step_function() const {
  // On [v_{j+1}, v_j) the value is the measure of the j largest levels.
  std::vector<Piece> pieces;
  Rational cumulative(0);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    cumulative += measures_[i];
    const Rational lo = i + 1 < levels_.size() ? levels_[i + 1] : Rational(0);
    pieces.push_back({Box::interval(lo, levels_[i]), ComplexRational(cumulative)});
  }
  return StepFunction::from_pieces(1, std::move(pieces));
}

RearrangementProfile RearrangementProfile::from_levels(std::vector<std::pair<Rational, Rational>> levels) {
  std::erase_if(levels, [](const auto& l) { return l.first <= 0 || l.second <= 0; });
  std::sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  RearrangementProfile out;
  for (auto& [value, mass] : levels) {
    if (!out.values_.empty() && out.values_.back() == value) {
      out.breakpoints_.back() += mass;
    } else {
      out.values_.push_back(value);
      out.breakpoints_.push_back(out.breakpoints_.back() + mass);
    }
  }
  return out;
}

RearrangementProfile RearrangementProfile::from_parts(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  if (breakpoints.empty() || breakpoints.size() != values.size() + 1) throw std::invalid_argument("need one more breakpoint than values");
  if (breakpoints.front() != 0) throw std::invalid_argument("profile breakpoints start at 0");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) throw std::invalid_argument("profile breakpoints must increase");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) throw std::invalid_argument("profile values must be positive");
    if (i > 0 && !(values[i] < values[i - 1])) throw std::invalid_argument("profile values must strictly decrease");
  }
  RearrangementProfile out;
  out.breakpoints_ = std::move(breakpoints);
  out.values_ = std::move(values);
  return out;
}

Rational RearrangementProfile::operator()(const Rational& t) const {
  if (t < 0) throw std::invalid_argument("profile evaluated at negative t");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
  if (idx == 0 || idx > values_.size()) return Rational(0);
  return values_[idx - 1];
}

double RearrangementProfile::at(double t) const {
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (t < to_double(breakpoints_[j + 1])) return to_double(values_[j]);
  }
  return 0.0;
}

Rational RearrangementProfile::distribution(const Rational& s) const {
  // Values decrease, so {f* > s} = [0, t_j) for the last j with v_j > s.
  Rational out(0);
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (values_[j] > s) out = breakpoints_[j + 1];
  }
  return out;
}

DistributionFunction RearrangementProfile::distribution_function() const {
  std::vector<Rational> measures;
  measures.reserve(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) measures.push_back(breakpoints_[j + 1] - breakpoints_[j]);
  return DistributionFunction(values_, std::move(measures));
}

RearrangementProfile RearrangementProfile::dilated(const Rational& c) const {
  if (c <= 0) throw std::invalid_argument("dilation parameter must be positive");
  RearrangementProfile out = *this;
  for (auto& t : out.breakpoints_) t /= c;
  return out;
}

StepFunction RearrangementProfile::to_step_function() const {
  std::vector<Piece> pieces;
  pieces.reserve(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) {
    pieces.push_back({Box::interval(breakpoints_[j], breakpoints_[j + 1]), ComplexRational(values_[j])});
  }
  return StepFunction::from_pieces(1, std::move(pieces));
}

double unit_ball_volume(std::size_t n) {
  const double half = static_cast<double>(n) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

std::optional<Rational> unit_ball_volume_exact(std::size_t n) {
  if (n == 1) return Rational(2);
  return std::nullopt;
}

double RadialProfile::operator()(std::span<const double> x) const {
  if (x.size() != dimension) throw std::invalid_argument("point dimension mismatch");
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double r = std::sqrt(r2);
  return profile.at(alpha * std::pow(r, static_cast<double>(dimension)));
}

DistributionFunction distribution_function(const StepFunction& f) {
  std::map<Rational, Rational, std::greater<>> level_sets;
  for (const auto& p : f.pieces()) {
    auto m = p.value.modulus();
    if (!m) throw std::domain_error("distribution needs rational |value|, got " + to_string(p.value));
    level_sets[*m] += p.region.measure();
  }
  std::vector<Rational> levels;
  std::vector<Rational> measures;
  for (auto& [level, mass] : level_sets) {
    levels.push_back(level);
    measures.push_back(mass);
  }
  return DistributionFunction(std::move(levels), std::move(measures));
}

RearrangementProfile nonincreasing_rearrangement(const StepFunction& f) {
  std::vector<std::pair<Rational, Rational>> levels;
  levels.reserve(f.size());
  for (const auto& p : f.pieces()) {
    auto m = p.value.modulus();
    if (!m) throw std::domain_error("rearrangement needs rational |value|, got " + to_string(p.value));
    levels.emplace_back(*m, p.region.measure());
  }
  return RearrangementProfile::from_levels(std::move(levels));
}

RadialProfile radial_rearrangement(const StepFunction& f) {
  RadialProfile r;
  r.profile = nonincreasing_rearrangement(f);
  r.dimension = f.dimension();
  r.alpha = unit_ball_volume(r.dimension);
  r.alpha_exact = unit_ball_volume_exact(r.dimension);
  return r;
}

StepFunction materialize_radial_1d(const RadialProfile& r) {
  if (r.dimension != 1 || !r.alpha_exact) throw std::invalid_argument("materialization needs n = 1");
  const Rational& alpha = *r.alpha_exact;
  const auto& t = r.profile.breakpoints();
  const auto& v = r.profile.values();
  std::vector<Piece> pieces;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Rational lo = t[j] / alpha;
    const Rational hi = t[j + 1] / alpha;
    pieces.push_back({Box::interval(lo, hi), ComplexRational(v[j])});
    pieces.push_back({Box::interval(-hi, -lo), ComplexRational(v[j])});
  }
  return StepFunction::from_pieces(1, std::move(pieces));
}

RearrangementProfile rearrangement_of(const RadialProfile& r) {
  if (r.dimension == 1) return nonincreasing_rearrangement(materialize_radial_1d(r));
  std::vector<std::pair<Rational, Rational>> levels;
  const auto& t = r.profile.breakpoints();
  for (std::size_t j = 0; j < r.profile.size(); ++j) levels.emplace_back(r.profile.values()[j], t[j + 1] - t[j]);
  return RearrangementProfile::from_levels(std::move(levels));
}

}  // namespace qbfs
