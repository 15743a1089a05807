#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace tslab {

using Rational = mpq_class;

/// num/den in lowest terms. mpq_class(num, den) skips the reduction that
/// GMP arithmetic relies on.
Rational ratio(long num, long den);

/// Parses "a/b", integers and decimal literals ("-0.25", "1e-3") exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double value);

/// Nearest dyadic rational with denominator 2^bits.
Rational round_dyadic(double value, unsigned bits);

double to_double(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

/// The exact k-th root of a non-negative rational, if it is rational.
std::optional<Rational> exact_root(const Rational& value, unsigned k);

Rational abs(const Rational& value);

/// An exponent p in [1, inf]: a rational >= 1 or the infinity sentinel.
class Exponent {
 public:
  Exponent() : value_(1) {}
  explicit Exponent(Rational value);
  explicit Exponent(long value) : Exponent(Rational(value)) {}

  static Exponent infinity();
  /// Accepts "inf" or any rational literal >= 1.
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  /// Only meaningful for finite exponents.
  const Rational& value() const { return value_; }
  double as_double() const;
  bool is_one() const { return !infinite_ && value_ == 1; }
  /// The integer value when the exponent is a finite integer.
  std::optional<unsigned> as_integer() const;

  /// The conjugate exponent p' with 1/p + 1/p' = 1.
  Exponent conjugate() const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  /// Total order with infinity on top.
  friend bool operator<(const Exponent& a, const Exponent& b);
  friend bool operator<=(const Exponent& a, const Exponent& b) { return a < b || a == b; }

 private:
  Rational value_;
  bool infinite_ = false;
};

}  // namespace tslab
