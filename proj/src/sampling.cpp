#include "qbfs/sampling.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qbfs {

namespace {

const std::int64_t kTriples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}};

}  // namespace

std::int64_t Sampler::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty sampling range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1U;
  return lo + static_cast<std::int64_t>(next() % span);
}

ComplexRational Sampler::value(const SampleOptions& opt) {
  const std::int64_t magnitude = integer(1, opt.value_max);
  const std::int64_t sign = opt.nonnegative || coin() ? 1 : -1;
  const auto kind = integer(0, opt.complex_values && !opt.nonnegative ? 2 : 1);
  if (kind == 0) return ComplexRational(Rational(sign * magnitude));
  if (kind == 1) return ComplexRational(ratio(sign * magnitude * integer(1, 7), integer(1, 6)));
  const auto& t = kTriples[integer(0, 3)];
  const Rational scale = ratio(magnitude, t[2]);
  return ComplexRational(Rational(sign * t[0]) * scale, Rational((coin() ? 1 : -1) * t[1]) * scale);
}

StepFunction Sampler::step_function(const SampleOptions& opt) {
  if (opt.max_pieces < 1) throw std::invalid_argument("max_pieces must be positive");
  const Rational step = opt.dyadic_breakpoints ? pow2(-opt.breakpoint_bits) : Rational(1, 3) * pow2(-opt.breakpoint_bits);
  const std::int64_t slots = floor_int((opt.hi - opt.lo) / step);
  if (slots < 2) throw std::invalid_argument("sampling window too small");
  std::vector<Piece> pieces;
  if (opt.dimension == 1) {
    const auto count = integer(1, opt.max_pieces);
    std::set<std::int64_t> cuts;
    while (static_cast<std::int64_t>(cuts.size()) < std::min<std::int64_t>(count + 1, slots + 1)) {
      cuts.insert(integer(0, slots));
    }
    const std::vector<std::int64_t> c(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      if (c.size() > 2 && integer(0, 3) == 0) continue;
      pieces.push_back({Box::interval(opt.lo + c[i] * step, opt.lo + c[i + 1] * step), value(opt)});
    }
  } else {
    // Random tensor grid with a random subset of cells filled.
    const auto per_axis = std::max<std::int64_t>(1, integer(1, 3));
    std::vector<std::vector<std::int64_t>> axes;
    for (std::size_t d = 0; d < opt.dimension; ++d) {
      std::set<std::int64_t> cuts;
      while (static_cast<std::int64_t>(cuts.size()) < per_axis + 1) cuts.insert(integer(0, slots));
      axes.emplace_back(cuts.begin(), cuts.end());
    }
    std::vector<std::size_t> idx(opt.dimension, 0);
    while (true) {
      if (static_cast<int>(pieces.size()) < opt.max_pieces && integer(0, 3) != 0) {
        std::vector<Interval> sides;
        for (std::size_t d = 0; d < opt.dimension; ++d) {
          sides.push_back({opt.lo + axes[d][idx[d]] * step, opt.lo + axes[d][idx[d] + 1] * step});
        }
        pieces.push_back({Box(std::move(sides)), value(opt)});
      }
      std::size_t d = 0;
      while (d < opt.dimension && ++idx[d] + 1 >= axes[d].size()) idx[d++] = 0;
      if (d == opt.dimension) break;
    }
    if (pieces.empty()) {
      std::vector<Interval> sides;
      for (std::size_t d = 0; d < opt.dimension; ++d) sides.push_back({opt.lo + axes[d][0] * step, opt.lo + axes[d][1] * step});
      pieces.push_back({Box(std::move(sides)), value(opt)});
    }
  }
  if (pieces.empty()) pieces.push_back({Box::interval(opt.lo, opt.lo + step), value(opt)});
  return StepFunction::from_pieces(opt.dimension, std::move(pieces));
}

RearrangementProfile Sampler::profile(int max_pieces) {
  const auto count = integer(1, max_pieces);
  std::set<std::int64_t> cuts;
  while (static_cast<std::int64_t>(cuts.size()) < count) cuts.insert(integer(1, 64));
  std::vector<Rational> breakpoints{Rational(0)};
  for (auto c : cuts) breakpoints.push_back(ratio(c, 16));
  std::set<Rational, std::greater<>> levels;
  while (static_cast<std::int64_t>(levels.size()) < count) levels.insert(ratio(integer(1, 64), integer(1, 8)));
  return RearrangementProfile::from_parts(std::move(breakpoints), std::vector<Rational>(levels.begin(), levels.end()));
}

CoverInstance Sampler::cover_instance(std::size_t dimension) {
  if (dimension == 0 || dimension > 2) throw std::invalid_argument("cover instances support n = 1, 2");
  CoverInstance inst;
  inst.K.dimension = dimension;
  inst.G.dimension = dimension;
  const int g_order = static_cast<int>(integer(0, 1));
  const auto g_count = integer(1, 3);
  for (std::int64_t i = 0; i < g_count; ++i) {
    DyadicBox g{g_order, {}, {}};
    for (std::size_t d = 0; d < dimension; ++d) {
      const auto lo = integer(-3, 3);
      g.lo.push_back(lo);
      g.hi.push_back(lo + integer(1, dimension == 1 ? 3 : 1));
    }
    inst.G.boxes.push_back(g);
    // K boxes strictly inside this G box at a finer order.
    const int k_order = g_order + static_cast<int>(integer(2, 4));
    const DyadicBox fine = g.refined_to(k_order);
    const auto k_count = integer(1, 2);
    for (std::int64_t j = 0; j < k_count; ++j) {
      DyadicBox k{k_order, {}, {}};
      for (std::size_t d = 0; d < dimension; ++d) {
        const auto lo = integer(fine.lo[d] + 1, fine.hi[d] - 2);
        k.lo.push_back(lo);
        k.hi.push_back(integer(lo + 1, fine.hi[d] - 1));
      }
      inst.K.boxes.push_back(k);
    }
  }
  inst.eps = pow2(-static_cast<int>(dimension == 1 ? integer(2, 8) : integer(2, 4)));
  inst.k0 = static_cast<int>(integer(0, 3));
  return inst;
}

std::vector<StepFunction> tightness_witness() {
  return {StepFunction::indicator(Box::interval(0, 1)), StepFunction::indicator(Box::interval(1, 2))};
}

std::vector<StepFunction> sample_set(std::uint64_t seed, std::size_t count, const SampleOptions& opt) {
  Sampler rng(seed);
  std::vector<StepFunction> out;
  if (opt.dimension == 1) out = tightness_witness();
  for (std::size_t i = 0; i < count; ++i) out.push_back(rng.step_function(opt));
  return out;
}

}  // namespace qbfs
