#pragma once

#include "qbfs/approximation.hpp"
#include "qbfs/rearrangement.hpp"
#include "qbfs/step_function.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qbfs {

struct SampleOptions {
  std::size_t dimension = 1;
  int max_pieces = 6;
  /// Breakpoints lie on the grid lo + j·2^{-bits}, or lo + j/(3·2^bits) when
  /// dyadic_breakpoints is false.
  int breakpoint_bits = 3;
  bool dyadic_breakpoints = true;
  Rational lo = 0;
  Rational hi = 4;
  int value_max = 4;
  bool complex_values = true;
  bool nonnegative = false;
};

struct CoverInstance {
  CompactDyadicSet K;
  OpenDyadicSet G;
  Rational eps;
  int k0 = 0;
};

/// Seeded generator; every draw is raw mt19937_64 output reduced modulo the range.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() & 1U) != 0; }

  /// Non-zero value: integer, small-denominator rational, or a rational point
  /// on a circle scaled by an integer (Pythagorean triples keep |v| rational).
  ComplexRational value(const SampleOptions& opt);
  StepFunction step_function(const SampleOptions& opt);
  /// Non-increasing profile with 1..max_pieces steps on dyadic breakpoints.
  RearrangementProfile profile(int max_pieces = 6);
  CoverInstance cover_instance(std::size_t dimension);

 private:
  std::mt19937_64 engine_;
};

/// χ_(0,1) and χ_(1,2): equal norms, disjoint supports.
std::vector<StepFunction> tightness_witness();

/// Tightness witness followed by `count` random step functions.
std::vector<StepFunction> sample_set(std::uint64_t seed, std::size_t count, const SampleOptions& opt = {});

}  // namespace qbfs
