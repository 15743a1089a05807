#include "tslab/finvec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tslab/errors.hpp"

namespace tslab {

FinVec::FinVec(const Map& entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

FinVec FinVec::unit(std::uint32_t index) {
  FinVec v;
  v.set(index, Rational(1));
  return v;
}

FinVec FinVec::constant(std::uint32_t first, std::uint32_t last, const Rational& value) {
  FinVec v;
  for (std::uint32_t n = first; n <= last; ++n) v.set(n, value);
  return v;
}

void FinVec::set(std::uint32_t index, const Rational& value) {
  if (index == 0) throw InputError("vector indices are positive integers");
  if (value == 0)
    entries_.erase(index);
  else
    entries_[index] = value;
}

Rational FinVec::get(std::uint32_t index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<std::uint32_t> FinVec::support() const {
  std::vector<std::uint32_t> s;
  s.reserve(entries_.size());
  for (const auto& [k, v] : entries_) s.push_back(k);
  return s;
}

std::uint32_t FinVec::min_index() const {
  if (entries_.empty()) throw InputError("zero vector has no support");
  return entries_.begin()->first;
}

std::uint32_t FinVec::max_index() const {
  if (entries_.empty()) throw InputError("zero vector has no support");
  return entries_.rbegin()->first;
}

FinVec FinVec::abs() const {
  FinVec out;
  for (const auto& [k, v] : entries_) out.entries_[k] = tslab::abs(v);
  return out;
}

FinVec FinVec::restrict_to(std::uint32_t first, std::uint32_t last) const {
  FinVec out;
  for (auto it = entries_.lower_bound(first); it != entries_.end() && it->first <= last; ++it)
    out.entries_.insert(*it);
  return out;
}

Rational FinVec::dot(const FinVec& other) const {
  Rational sum(0);
  const Map& small = size() <= other.size() ? entries_ : other.entries_;
  const Map& large = size() <= other.size() ? other.entries_ : entries_;
  for (const auto& [k, v] : small) {
    auto it = large.find(k);
    if (it != large.end()) sum += v * it->second;
  }
  return sum;
}

FinVec& FinVec::operator+=(const FinVec& other) {
  for (const auto& [k, v] : other.entries_) set(k, get(k) + v);
  return *this;
}

FinVec& FinVec::operator-=(const FinVec& other) {
  for (const auto& [k, v] : other.entries_) set(k, get(k) - v);
  return *this;
}

FinVec& FinVec::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) v *= scalar;
  return *this;
}

std::string FinVec::to_string() const {
  std::string out = "{";
  for (const auto& [k, v] : entries_) {
    if (out.size() > 1) out += ", ";
    out += std::to_string(k) + ": " + tslab::to_string(v);
  }
  return out + "}";
}

ApproxVec to_approx(const FinVec& v) {
  ApproxVec out;
  out.index.reserve(v.size());
  out.value.reserve(v.size());
  for (const auto& [k, c] : v.entries()) {
    out.index.push_back(k);
    out.value.push_back(c.get_d());
  }
  return out;
}

// ---------------------------------------------------------------------------

double default_tolerance(double value) { return 1e-9 * std::max(1.0, std::fabs(value)); }

NormValue NormValue::exact(const Rational& value) {
  NormValue v;
  v.kind_ = Kind::exact;
  v.exact_ = value;
  v.approx_ = value.get_d();
  v.tolerance_ = 0.0;
  return v;
}

NormValue NormValue::approximate(double value, double tolerance) {
  NormValue v;
  v.kind_ = Kind::approximate;
  v.exact_.reset();
  v.approx_ = value;
  v.tolerance_ = tolerance < 0 ? default_tolerance(value) : tolerance;
  return v;
}

NormValue NormValue::lower_bound(double value, double width) {
  NormValue v;
  v.kind_ = Kind::lower_bound;
  v.exact_.reset();
  v.approx_ = value;
  v.tolerance_ = std::max(width, default_tolerance(value));
  return v;
}

const Rational& NormValue::rational() const {
  if (!exact_) throw Error("norm value is not exact");
  return *exact_;
}

std::string NormValue::to_string() const {
  if (is_exact()) return tslab::to_string(*exact_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", approx_);
  return buf;
}

bool leq(const NormValue& a, const NormValue& b, double slack) {
  if (a.is_exact() && b.is_exact() && slack == 0.0) return a.rational() <= b.rational();
  return a.value() <= b.value() + std::max(a.tolerance(), b.tolerance()) + slack;
}

bool approx_equal(const NormValue& a, const NormValue& b, double slack) {
  if (a.is_exact() && b.is_exact() && slack == 0.0) return a.rational() == b.rational();
  return std::fabs(a.value() - b.value()) <= std::max(a.tolerance(), b.tolerance()) + slack;
}

bool greater(const NormValue& a, const NormValue& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() > b.rational();
  return a.value() > b.value();
}

NormValue scale(const NormValue& v, const Rational& factor) {
  Rational f = tslab::abs(factor);
  switch (v.kind()) {
    case NormValue::Kind::exact: return NormValue::exact(v.rational() * f);
    case NormValue::Kind::approximate: return NormValue::approximate(v.value() * f.get_d(), v.tolerance() * f.get_d());
    case NormValue::Kind::lower_bound: return NormValue::lower_bound(v.value() * f.get_d(), v.tolerance() * f.get_d());
  }
  return v;
}

NormValue divide(const NormValue& numerator, const NormValue& denominator) {
  if (denominator.value() == 0.0 && (!denominator.is_exact() || denominator.rational() == 0))
    throw Error("division by a zero norm");
  if (numerator.is_exact() && denominator.is_exact())
    return NormValue::exact(Rational(numerator.rational() / denominator.rational()));
  const double q = numerator.value() / denominator.value();
  const double rel = (numerator.value() != 0 ? numerator.tolerance() / std::fabs(numerator.value()) : 0.0) +
                     denominator.tolerance() / std::fabs(denominator.value());
  const double tol = std::max(std::fabs(q) * rel, numerator.tolerance() / std::fabs(denominator.value()));
  if (numerator.kind() == NormValue::Kind::lower_bound) return NormValue::lower_bound(q, tol);
  return NormValue::approximate(q, std::max(tol, default_tolerance(q)));
}

NormValue max(const NormValue& a, const NormValue& b) { return greater(b, a) ? b : a; }

// ---------------------------------------------------------------------------

NormValue root(const Rational& value, const Exponent& k) {
  if (auto n = k.as_integer()) {
    if (auto r = exact_root(value, *n)) return NormValue::exact(*r);
  }
  return NormValue::approximate(std::pow(value.get_d(), 1.0 / k.as_double()));
}

NormValue lp_norm(const std::vector<Rational>& values, const Exponent& p) {
  if (p.is_infinite()) {
    Rational m(0);
    for (const auto& v : values) m = std::max(m, tslab::abs(v));
    return NormValue::exact(m);
  }
  if (auto n = p.as_integer()) {
    Rational sum(0);
    for (const auto& v : values) sum += pow(tslab::abs(v), *n);
    return root(sum, p);
  }
  std::vector<double> d;
  d.reserve(values.size());
  for (const auto& v : values) d.push_back(v.get_d());
  return NormValue::approximate(lp_norm(d, p));
}

NormValue lp_norm(const FinVec& x, const Exponent& p) {
  std::vector<Rational> values;
  values.reserve(x.size());
  for (const auto& [k, v] : x.entries()) values.push_back(v);
  return lp_norm(values, p);
}

double lp_norm(const std::vector<double>& values, const Exponent& p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
  }
  if (p.is_one()) {
    double s = 0.0;
    for (double v : values) s += std::fabs(v);
    return s;
  }
  // Scale by the maximum to avoid overflow and underflow.
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  if (m == 0.0) return 0.0;
  const double e = p.as_double();
  double s = 0.0;
  if (e == 2.0) {
    for (double v : values) s += (v / m) * (v / m);
    return m * std::sqrt(s);
  }
  for (double v : values) s += std::pow(std::fabs(v) / m, e);
  return m * std::pow(s, 1.0 / e);
}

}  // namespace tslab
