#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace tslab {

/// An ordinal below w^w in Cantor normal form, or the sentinel w1.
///
/// Terms are (exponent, coefficient) pairs with strictly decreasing
/// exponents and positive coefficients; the empty list is 0. The sentinel
/// stands for the family of all finite sets and is larger than every
/// finite-term ordinal.
class Ordinal {
 public:
  struct Term {
    std::uint32_t exponent;
    std::uint32_t coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  enum class Kind { zero, successor, limit, omega1 };

  Ordinal() = default;
  /// Validates CNF ordering; throws InputError otherwise.
  explicit Ordinal(std::vector<Term> terms);

  static Ordinal finite(std::uint32_t n);
  static Ordinal omega1();
  /// w^exponent * coefficient
  static Ordinal monomial(std::uint32_t exponent, std::uint32_t coefficient = 1);

  /// Grammar: term ("+" term)* with term = "w" ("^" nat)? ("*" nat)? | nat,
  /// or the literal "w1".
  static Ordinal parse(std::string_view text);
  std::string to_string() const;

  const std::vector<Term>& terms() const { return terms_; }
  bool is_omega1() const { return omega1_; }
  bool is_zero() const { return !omega1_ && terms_.empty(); }
  /// True for 0 <= xi < w (a natural number).
  bool is_finite() const { return !omega1_ && (terms_.empty() || terms_.front().exponent == 0); }
  /// The natural number value; only valid when is_finite().
  std::uint32_t finite_value() const;

  Kind classify() const;
  /// zeta with zeta + 1 == *this; requires a successor.
  Ordinal predecessor() const;
  Ordinal successor() const;
  /// The fixed increasing sequence of successor ordinals converging to a
  /// limit ordinal; requires a limit and n >= 1.
  Ordinal fundamental_sequence(std::uint32_t n) const;

  friend bool operator==(const Ordinal& a, const Ordinal& b) {
    return a.omega1_ == b.omega1_ && a.terms_ == b.terms_;
  }
  friend bool operator<(const Ordinal& a, const Ordinal& b);
  friend bool operator>(const Ordinal& a, const Ordinal& b) { return b < a; }
  friend bool operator<=(const Ordinal& a, const Ordinal& b) { return !(b < a); }
  friend bool operator>=(const Ordinal& a, const Ordinal& b) { return !(a < b); }

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
  bool omega1_ = false;
};

std::string to_string(Ordinal::Kind kind);

}  // namespace tslab

template <>
struct std::hash<tslab::Ordinal> {
  std::size_t operator()(const tslab::Ordinal& o) const noexcept { return o.hash(); }
};
