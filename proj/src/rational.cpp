#include "tslab/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "tslab/errors.hpp"

namespace tslab {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("malformed rational literal: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mpz_class ez = parse_integer(s.substr(e + 1), whole);
    if (!ez.fits_slong_p() || abs(ez) > 4096)
      throw InputError("exponent out of range in '" + std::string(whole) + "'");
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      throw InputError("malformed rational literal: '" + std::string(whole) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw InputError("malformed rational literal: '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  Rational result(mpz_class(digits, 10));
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0)
    result *= scale;
  else
    result /= scale;
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational ratio(long num, long den) {
  if (den == 0) throw Error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text, text);
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw InputError("non-finite value cannot be converted to a rational");
  Rational r(value);  // exact in GMP
  r.canonicalize();
  return r;
}

Rational round_dyadic(double value, unsigned bits) {
  if (!std::isfinite(value)) throw InputError("non-finite value cannot be converted to a rational");
  double scaled = std::nearbyint(std::ldexp(value, static_cast<int>(bits)));
  Rational r(rational_from_double(scaled));
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  r /= den;
  r.canonicalize();
  return r;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> exact_root(const Rational& value, unsigned k) {
  if (k == 0 || value < 0) return std::nullopt;
  if (k == 1) return value;
  mpz_class num, den;
  if (mpz_root(num.get_mpz_t(), value.get_num_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), value.get_den_mpz_t(), k) == 0) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Exponent::Exponent(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ < 1) throw InputError("exponent must be >= 1, got " + tslab::to_string(value_));
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "INF" || text == "Inf") return infinity();
  return Exponent(parse_rational(text));
}

double Exponent::as_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.get_d();
}

std::optional<unsigned> Exponent::as_integer() const {
  if (infinite_ || value_.get_den() != 1 || !value_.get_num().fits_uint_p()) return std::nullopt;
  return static_cast<unsigned>(value_.get_num().get_ui());
}

Exponent Exponent::conjugate() const {
  if (infinite_) return Exponent(1L);
  if (value_ == 1) return infinity();
  return Exponent(Rational(value_ / (value_ - 1)));
}

std::string Exponent::to_string() const { return infinite_ ? "inf" : tslab::to_string(value_); }

bool operator<(const Exponent& a, const Exponent& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

}  // namespace tslab
