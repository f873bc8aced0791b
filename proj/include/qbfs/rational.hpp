#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qbfs {

using Rational = mpq_class;

/// num / den in canonical form. Prefer this to the two-argument mpq_class
/// constructor, which leaves common factors in place.
Rational ratio(long num, long den);

/// Exact 2^e for any integer e.
Rational pow2(int e);

double to_double(const Rational& r);

/// Parses "3", "-3/4" or a finite decimal such as "0.125" / "1e-3" into an
/// exact rational. Decimal input is converted digit-by-digit, never via double.
Rational parse_rational(std::string_view text);

/// Nearest rational with denominator 2^bits; used when a double must enter
/// the exact pipeline (quantization of float input).
Rational quantize(double x, int bits);

std::string to_string(const Rational& r);

/// Rational square root if one exists.
std::optional<Rational> exact_sqrt(const Rational& r);

/// floor / ceil of a rational as a 64-bit integer. Throws std::overflow_error
/// when the result does not fit.
std::int64_t floor_int(const Rational& r);
std::int64_t ceil_int(const Rational& r);

/// Complex scalar with rational real and imaginary parts.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational real) : re(std::move(real)) {}  // NOLINT implicit by design of scalar promotion
  ComplexRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  ComplexRational(int real) : re(real) {}  // NOLINT

  bool is_real() const { return im == 0; }
  bool is_zero() const { return re == 0 && im == 0; }

  /// |z|^2, always exact.
  Rational norm2() const { return re * re + im * im; }

  /// |z| when it is rational (always for real values).
  std::optional<Rational> modulus() const;

  double modulus_double() const;

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

std::string to_string(const ComplexRational& z);

}  // namespace qbfs
