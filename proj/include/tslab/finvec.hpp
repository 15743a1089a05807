#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tslab/rational.hpp"

namespace tslab {

/// A finitely supported sequence with exact rational coefficients.
///
/// Indices are positive integers. Zero coefficients are never stored, so the
/// zero vector is the empty map.
class FinVec {
 public:
  using Map = std::map<std::uint32_t, Rational>;

  FinVec() = default;
  explicit FinVec(const Map& entries);
  static FinVec unit(std::uint32_t index);
  /// Constant value on every index in [first, last].
  static FinVec constant(std::uint32_t first, std::uint32_t last, const Rational& value);

  void set(std::uint32_t index, const Rational& value);
  Rational get(std::uint32_t index) const;
  const Map& entries() const { return entries_; }
  std::vector<std::uint32_t> support() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint32_t min_index() const;
  std::uint32_t max_index() const;

  FinVec abs() const;
  /// Coefficients restricted to indices in [first, last].
  FinVec restrict_to(std::uint32_t first, std::uint32_t last) const;
  /// Evaluates the pairing sum_n a_n b_n.
  Rational dot(const FinVec& other) const;

  FinVec& operator+=(const FinVec& other);
  FinVec& operator-=(const FinVec& other);
  FinVec& operator*=(const Rational& scalar);
  friend FinVec operator+(FinVec a, const FinVec& b) { return a += b; }
  friend FinVec operator-(FinVec a, const FinVec& b) { return a -= b; }
  friend FinVec operator*(const Rational& s, FinVec v) { return v *= s; }
  friend bool operator==(const FinVec& a, const FinVec& b) { return a.entries_ == b.entries_; }

  std::string to_string() const;

 private:
  Map entries_;
};

/// One component per part of a weighted direct sum.
using SumVec = std::vector<FinVec>;

/// A vector of a plain sequence space or of a weighted direct sum.
using Point = std::variant<FinVec, SumVec>;

/// Double-precision sparse vector used on the hot paths of the searches.
struct ApproxVec {
  std::vector<std::uint32_t> index;  // strictly increasing
  std::vector<double> value;
};

ApproxVec to_approx(const FinVec& v);

/// Result of a norm evaluation.
///
/// Exact values carry a rational. Approximate values carry a double and an
/// absolute tolerance. Lower-bound values certify only value() <= true
/// norm <= value() + tolerance().
class NormValue {
 public:
  enum class Kind { exact, approximate, lower_bound };

  NormValue() : exact_(Rational(0)) {}
  static NormValue exact(const Rational& value);
  static NormValue approximate(double value, double tolerance = -1.0);
  static NormValue lower_bound(double value, double width);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::exact; }
  /// Throws when not exact.
  const Rational& rational() const;
  double value() const { return approx_; }
  double tolerance() const { return tolerance_; }

  std::string to_string() const;

 private:
  Kind kind_ = Kind::exact;
  std::optional<Rational> exact_;
  double approx_ = 0.0;
  double tolerance_ = 0.0;
};

/// Default tolerance attached to floating-point norm values.
double default_tolerance(double value);

/// a <= b, exact when both are exact and slack is zero, otherwise within the
/// larger tolerance plus slack.
bool leq(const NormValue& a, const NormValue& b, double slack = 0.0);
/// |a - b| <= max tolerance + slack (exact equality for exact values).
bool approx_equal(const NormValue& a, const NormValue& b, double slack = 0.0);
/// Strict a > b decided with exact arithmetic when possible.
bool greater(const NormValue& a, const NormValue& b);

NormValue scale(const NormValue& v, const Rational& factor);
NormValue divide(const NormValue& numerator, const NormValue& denominator);
NormValue max(const NormValue& a, const NormValue& b);

/// The l_p norm. Exact for p in {1, inf} and for integer p when the root is
/// rational; double precision otherwise.
NormValue lp_norm(const FinVec& x, const Exponent& p);
NormValue lp_norm(const std::vector<Rational>& values, const Exponent& p);
double lp_norm(const std::vector<double>& values, const Exponent& p);

/// x^(1/k) exact when rational, else approximate.
NormValue root(const Rational& value, const Exponent& k);

}  // namespace tslab
