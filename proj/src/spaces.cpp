#include "tslab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace tslab {

Space Space::lp(Exponent p) {
  Space s;
  s.kind = Kind::lp;
  s.p = p;
  return s;
}

Space Space::c0() {
  Space s;
  s.kind = Kind::c0;
  s.p = Exponent::infinity();
  return s;
}

Space Space::xm(Exponent p, std::uint32_t m) {
  Space s;
  s.kind = Kind::xm;
  s.p = p;
  s.m = m;
  return s;
}

Space Space::tsirelson_space(TsirelsonParams params) {
  Space s;
  s.kind = Kind::tsirelson;
  s.tsirelson = std::move(params);
  return s;
}

Space Space::tsirelson_dual(TsirelsonParams params) {
  Space s;
  s.kind = Kind::tsirelson_dual;
  s.tsirelson = std::move(params);
  return s;
}

Space Space::sum(Exponent q, std::vector<SumPart> parts) {
  Space s;
  s.kind = Kind::sum;
  s.p = q;
  s.parts = std::move(parts);
  return s;
}

void Space::validate() const {
  switch (kind) {
    case Kind::lp:
    case Kind::c0: return;
    case Kind::xm:
      if (m == 0) throw InputError("X_m needs m >= 1");
      return;
    case Kind::tsirelson:
    case Kind::tsirelson_dual: tsirelson.validate(); return;
    case Kind::sum:
      if (parts.empty()) throw InputError("a direct sum needs at least one part");
      for (const auto& part : parts) {
        if (part.weight <= 0) throw InputError("direct sum weights must be positive");
        if (!part.space) throw InputError("direct sum part without a space");
        if (part.space->is_sum()) throw InputError("nested direct sums are not supported");
        part.space->validate();
      }
      return;
  }
}

std::string Space::describe() const {
  switch (kind) {
    case Kind::lp: return "l_" + p.to_string();
    case Kind::c0: return "c_0";
    case Kind::xm: return "X_" + std::to_string(m) + "(l_" + p.to_string() + ")";
    case Kind::tsirelson: return tsirelson.describe();
    case Kind::tsirelson_dual: return tsirelson.describe() + "*";
    case Kind::sum: {
      std::string out = "(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " + ";
        out += tslab::to_string(parts[i].weight) + " " + parts[i].space->describe();
      }
      return out + ")_" + p.to_string();
    }
  }
  return "?";
}

bool Space::evaluable() const {
  switch (kind) {
    case Kind::tsirelson_dual: return tsirelson.exact_q();
    case Kind::sum:
      return std::all_of(parts.begin(), parts.end(), [](const SumPart& part) { return part.space->evaluable(); });
    default: return true;
  }
}

bool Space::unconditional() const {
  switch (kind) {
    case Kind::xm: return m == 1;
    case Kind::sum:
      return std::all_of(parts.begin(), parts.end(), [](const SumPart& part) { return part.space->unconditional(); });
    default: return true;
  }
}

bool Space::permutation_invariant() const {
  switch (kind) {
    case Kind::lp:
    case Kind::c0:
    case Kind::xm: return true;
    case Kind::sum:
      return std::all_of(parts.begin(), parts.end(),
                         [](const SumPart& part) { return part.space->permutation_invariant(); });
    default: return false;
  }
}

std::string to_string(Space::Kind kind) {
  switch (kind) {
    case Space::Kind::lp: return "lp";
    case Space::Kind::c0: return "c0";
    case Space::Kind::xm: return "xm";
    case Space::Kind::tsirelson: return "tsirelson";
    case Space::Kind::tsirelson_dual: return "tsirelson_dual";
    case Space::Kind::sum: return "sum";
  }
  return "?";
}

namespace {

/// Largest |sum over E| with #E = m, zeros available outside the support.
template <class Scalar>
Scalar best_subset_sum(std::vector<Scalar> values, std::uint32_t m) {
  std::sort(values.begin(), values.end());
  Scalar negative(0), positive(0);
  for (std::size_t i = 0; i < values.size() && i < m && values[i] < 0; ++i) negative -= values[i];
  for (std::size_t i = 0; i < values.size() && i < m && values[values.size() - 1 - i] > 0; ++i)
    positive += values[values.size() - 1 - i];
  return std::max(negative, positive);
}

}  // namespace

NormValue xm_norm(const FinVec& x, const Exponent& p, std::uint32_t m) {
  if (m == 0) throw InputError("X_m needs m >= 1");
  std::vector<Rational> values;
  for (const auto& [k, v] : x.entries()) values.push_back(v);
  const NormValue subset = NormValue::exact(best_subset_sum(values, m));
  return max(lp_norm(x, p), subset);
}

NormValue dual_functional_norm_bound(std::uint32_t m, const Exponent& p) {
  if (m == 0) throw InputError("m must be positive");
  if (p.is_infinite()) return NormValue::exact(Rational(m));
  if (p.is_one()) return NormValue::exact(Rational(1));
  // m^(1-1/p) = (m^(p-1))^(1/p); exact for integer p when the root is.
  if (auto k = p.as_integer()) return root(pow(Rational(m), *k - 1U), p);
  const double e = 1.0 - 1.0 / p.as_double();
  return NormValue::approximate(std::pow(static_cast<double>(m), e));
}

void check_shape(const Space& space, const Point& x) {
  if (space.is_sum()) {
    const auto* v = std::get_if<SumVec>(&x);
    if (!v) throw InputError("a direct sum vector needs one component per part");
    if (v->size() != space.parts.size())
      throw InputError("direct sum vector has " + std::to_string(v->size()) + " components, the space has " +
                       std::to_string(space.parts.size()) + " parts");
  } else if (!std::holds_alternative<FinVec>(x)) {
    throw InputError("a plain sequence space takes a single vector, not components");
  }
}

Point combine(const Space& space, const std::vector<Point>& vectors, const std::vector<Rational>& alpha) {
  if (space.is_sum()) {
    SumVec out(space.parts.size());
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      if (alpha[k] == 0) continue;
      const auto& v = std::get<SumVec>(vectors[k]);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += alpha[k] * v[j];
    }
    return out;
  }
  FinVec out;
  for (std::size_t k = 0; k < vectors.size(); ++k)
    if (alpha[k] != 0) out += alpha[k] * std::get<FinVec>(vectors[k]);
  return out;
}

ApproxPoint to_approx(const Space& space, const Point& x) {
  check_shape(space, x);
  if (space.is_sum()) {
    ApproxPoint out;
    for (const auto& c : std::get<SumVec>(x)) out.push_back(to_approx(c));
    return out;
  }
  return {to_approx(std::get<FinVec>(x))};
}

NormEngine::NormEngine(Limits limits, BracketOptions bracket) : limits_(limits), bracket_(bracket) {}

DualSolver& NormEngine::dual_solver(const TsirelsonParams& params) {
  auto& slot = solvers_[params.describe()];
  if (!slot) slot = std::make_unique<DualSolver>(params, limits_);
  return *slot;
}

NormValue NormEngine::plain_norm(const Space& space, const FinVec& x) {
  switch (space.kind) {
    case Space::Kind::lp: return lp_norm(x, space.p);
    case Space::Kind::c0: return lp_norm(x, Exponent::infinity());
    case Space::Kind::xm: return xm_norm(x, space.p, space.m);
    case Space::Kind::tsirelson: return t_norm(x, space.tsirelson, limits_);
    case Space::Kind::tsirelson_dual: {
      if (space.tsirelson.exact_q()) return dual_solver(space.tsirelson).solve(x).value;
      const DualBracket b = dual_norm_bracket(x, space.tsirelson, bracket_, limits_);
      return NormValue::lower_bound(b.lower.value(), std::max(0.0, b.upper.value() - b.lower.value()));
    }
    case Space::Kind::sum: break;
  }
  throw InputError("direct sums need component vectors");
}

NormValue NormEngine::norm(const Space& space, const Point& x) {
  space.validate();
  check_shape(space, x);
  if (!space.is_sum()) return plain_norm(space, std::get<FinVec>(x));
  const auto& comps = std::get<SumVec>(x);
  std::vector<NormValue> parts;
  for (std::size_t j = 0; j < comps.size(); ++j)
    parts.push_back(scale(plain_norm(*space.parts[j].space, comps[j]), space.parts[j].weight));
  const bool exact = std::all_of(parts.begin(), parts.end(), [](const NormValue& v) { return v.is_exact(); });
  if (exact) {
    std::vector<Rational> values;
    for (const auto& v : parts) values.push_back(v.rational());
    return lp_norm(values, space.p);
  }
  // The outer ell_q norm is monotone, so lower and upper ends combine
  // separately.
  std::vector<double> lower, upper;
  bool bound_only = false;
  for (const auto& v : parts) {
    lower.push_back(v.value());
    upper.push_back(v.value() + v.tolerance());
    bound_only = bound_only || v.kind() == NormValue::Kind::lower_bound;
  }
  const double lo = lp_norm(lower, space.p);
  const double hi = lp_norm(upper, space.p);
  if (bound_only) return NormValue::lower_bound(lo, hi - lo);
  return NormValue::approximate(lo, std::max(hi - lo, default_tolerance(lo)));
}

namespace {

double approx_plain(const Space& space, const ApproxVec& x, const Limits& limits) {
  switch (space.kind) {
    case Space::Kind::lp: return lp_norm(x.value, space.p);
    case Space::Kind::c0: return lp_norm(x.value, Exponent::infinity());
    case Space::Kind::xm: return std::max(lp_norm(x.value, space.p), best_subset_sum(x.value, space.m));
    case Space::Kind::tsirelson: return t_norm_approx(x, space.tsirelson, limits);
    case Space::Kind::tsirelson_dual: throw InputError("no direct double-precision norm for dual Tsirelson spaces");
    case Space::Kind::sum: break;
  }
  throw InputError("direct sums need component vectors");
}

}  // namespace

double NormEngine::approx_norm(const Space& space, const ApproxPoint& x) {
  if (!space.is_sum()) return approx_plain(space, x.at(0), limits_);
  std::vector<double> parts;
  for (std::size_t j = 0; j < x.size(); ++j)
    parts.push_back(space.parts[j].weight.get_d() * approx_plain(*space.parts[j].space, x[j], limits_));
  return lp_norm(parts, space.p);
}

NormValue norm(const Space& space, const Point& x, const Limits& limits) {
  NormEngine engine(limits);
  return engine.norm(space, x);
}

}  // namespace tslab
