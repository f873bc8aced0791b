#include "qbfs/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qbfs {

Rational ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow2(int e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) {
    return Rational(p);
  }
  Rational r(mpz_class(1), p);
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return num / den;
  }

  bool negative = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  int exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string::npos) {
    std::string exp_text = body.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
      exp_negative = exp_text[0] == '-';
      exp_text = exp_text.substr(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw std::invalid_argument("malformed exponent in '" + s + "'");
    }
    exponent = std::stoi(exp_text) * (exp_negative ? -1 : 1);
    body = body.substr(0, e);
  }
  std::string int_part = body;
  std::string frac_part;
  if (auto dot = body.find('.'); dot != std::string::npos) {
    int_part = body.substr(0, dot);
    frac_part = body.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed number '" + s + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw std::invalid_argument("malformed number '" + s + "'");
  }
  mpz_class digits(int_part.empty() ? "0" : int_part + frac_part, 10);
  if (int_part.empty()) digits = mpz_class(frac_part, 10);
  int scale = exponent - static_cast<int>(frac_part.size());
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale >= 0 ? Rational(digits * ten_pow) : Rational(digits, ten_pow);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Rational quantize(double x, int bits) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot quantize a non-finite value");
  const double scaled = std::nearbyint(std::ldexp(x, bits));
  Rational r(mpz_class(scaled), mpz_class(1));
  return r * pow2(-bits);
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const mpz_class& num = r.get_num();
  const mpz_class& den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class sn;
  mpz_class sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rational out(sn, sd);
  out.canonicalize();
  return out;
}

std::int64_t floor_int(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("floor of " + r.get_str() + " overflows");
  return q.get_si();
}

std::int64_t ceil_int(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("ceil of " + r.get_str() + " overflows");
  return q.get_si();
}

std::optional<Rational> ComplexRational::modulus() const {
  if (im == 0) return Rational(abs(re));
  if (re == 0) return Rational(abs(im));
  return exact_sqrt(norm2());
}

double ComplexRational::modulus_double() const {
  if (im == 0) return std::abs(to_double(re));
  return std::hypot(to_double(re), to_double(im));
}

std::string to_string(const ComplexRational& z) {
  if (z.is_real()) return z.re.get_str();
  std::string im = z.im.get_str();
  return z.re.get_str() + (z.im < 0 ? "" : "+") + im + "i";
}

}  // namespace qbfs
