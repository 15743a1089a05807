#include "tslab/tsirelson.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <unordered_set>

#include "partition_search.hpp"
#include "tslab/schreier.hpp"

namespace tslab {

void TsirelsonParams::validate() const {
  if (theta <= 0 || theta >= 1) throw InputError("theta must lie in (0, 1), got " + tslab::to_string(theta));
  if (q.is_infinite()) throw InputError("Tsirelson exponent q must be finite");
  if (xi.is_omega1()) throw InputError("Tsirelson spaces need a countable ordinal xi < w^w");
  if (xi.is_zero()) throw InputError("Tsirelson spaces need xi >= 1");
}

std::string TsirelsonParams::describe() const {
  return "T_" + q.to_string() + "[" + tslab::to_string(theta) + ", S_" + xi.to_string() + "]";
}

namespace {

using detail::PartitionSearch;

/// Scalar policy: Rational is only used with q = 1.
template <class Scalar>
struct Power;

template <>
struct Power<Rational> {
  explicit Power(const TsirelsonParams& p) : theta(p.theta) {}
  Rational raise(const Rational& v) const { return v; }
  Rational lower(const Rational& v) const { return v; }
  Rational contract(const Rational& v) const { return theta * v; }
  Rational theta;
};

template <>
struct Power<double> {
  explicit Power(const TsirelsonParams& p)
      : q(p.q.as_double()), theta_root(std::pow(p.theta.get_d(), 1.0 / p.q.as_double())) {}
  double raise(double v) const { return q == 1.0 ? v : std::pow(v, q); }
  double lower(double v) const { return q == 1.0 ? v : std::pow(v, 1.0 / q); }
  double contract(double v) const { return theta_root * v; }
  double q;
  double theta_root;
};

template <class Scalar>
class SliceNorms {
 public:
  struct Entry {
    Scalar value;
    bool from_sup = false;  // false: the ell_inf term wins
    int argmax = 0;
    std::vector<int> starts;
  };

  SliceNorms(std::vector<std::uint32_t> idx, std::vector<Scalar> mags, const TsirelsonParams& params,
             SliceNorms* previous = nullptr)
      : idx_(idx),
        mags_(std::move(mags)),
        xi_(params.xi),
        power_(params),
        previous_(previous),
        table_(static_cast<std::size_t>((idx.size() + 1) * (idx.size() + 1))),
        search_(
            std::move(idx), PartitionSearch<Scalar>::Goal::maximize,
            [this](int a, int b) { return power_.raise(leaf(a, b)); },
            [](const Scalar& x, const Scalar& y) { return Scalar(x + y); }) {}

  int length() const { return static_cast<int>(idx_.size()); }

  const Entry& entry(int a, int b) {
    auto& slot = table_[static_cast<std::size_t>(a * (length() + 1) + b)];
    if (!slot) slot = compute(a, b);
    return *slot;
  }

  Scalar norm(int a, int b) { return entry(a, b).value; }

  /// Leaf depths of the norming functional of slice [a, b).
  void functional(int a, int b, unsigned depth, std::vector<std::pair<int, unsigned>>& out) {
    const Entry& e = entry(a, b);
    if (!e.from_sup) {
      out.emplace_back(e.argmax, depth);
      return;
    }
    SliceNorms& next = previous_ ? *previous_ : *this;
    for (std::size_t r = 0; r < e.starts.size(); ++r) {
      const int end = r + 1 < e.starts.size() ? e.starts[r + 1] : b;
      next.functional(e.starts[r], end, depth + 1, out);
    }
  }

 private:
  Scalar leaf(int a, int b) { return previous_ ? previous_->norm(a, b) : norm(a, b); }

  Entry compute(int a, int b) {
    Entry e{mags_[static_cast<std::size_t>(a)], false, a, {}};
    for (int n = a + 1; n < b; ++n)
      if (e.value < mags_[static_cast<std::size_t>(n)]) {
        e.value = mags_[static_cast<std::size_t>(n)];
        e.argmax = n;
      }
    if (depth_zero_) return e;
    std::optional<typename PartitionSearch<Scalar>::Best> best;
    for (int s = a; s < b; ++s) {
      auto candidate = search_.best(xi_, s, b, s == a);
      if (candidate && (!best || best->value < candidate->value)) best = std::move(candidate);
    }
    if (best) {
      Scalar sup = power_.contract(power_.lower(best->value));
      if (e.value < sup) {
        e.value = sup;
        e.from_sup = true;
        e.starts = std::move(best->starts);
      }
    }
    return e;
  }

 public:
  bool depth_zero_ = false;

 private:
  std::vector<std::uint32_t> idx_;
  std::vector<Scalar> mags_;
  Ordinal xi_;
  Power<Scalar> power_;
  SliceNorms* previous_;
  std::vector<std::optional<Entry>> table_;
  PartitionSearch<Scalar> search_;
};

/// The slice tables for one vector: a single table for the fixed point, or
/// a chain of max_depth + 1 iterates.
template <class Scalar>
class SliceChain {
 public:
  SliceChain(const std::vector<std::uint32_t>& idx, const std::vector<Scalar>& mags, const TsirelsonParams& params) {
    const unsigned levels = params.max_depth ? *params.max_depth + 1 : 1;
    levels_.reserve(levels);
    for (unsigned d = 0; d < levels; ++d) {
      SliceNorms<Scalar>* previous = d == 0 ? nullptr : levels_.back().get();
      levels_.push_back(std::make_unique<SliceNorms<Scalar>>(idx, mags, params, previous));
      if (params.max_depth && d == 0) levels_.back()->depth_zero_ = true;
    }
  }
  SliceNorms<Scalar>& top() { return *levels_.back(); }

 private:
  std::vector<std::unique_ptr<SliceNorms<Scalar>>> levels_;
};

void validate_for(const TsirelsonParams& params, std::size_t support, const Limits& limits) {
  params.validate();
  require_within(support, limits.max_support, "Tsirelson support size");
}

NormValue to_norm_value(const Rational& v) { return NormValue::exact(v); }
NormValue to_norm_value(double v) { return NormValue::approximate(v); }

template <class Scalar>
TsirelsonEvaluation evaluate_with(const FinVec& x, const TsirelsonParams& params) {
  TsirelsonEvaluation out;
  out.params = params;
  out.x = x;
  out.support = x.support();
  if (x.empty()) {
    out.value = NormValue::exact(Rational(0));
    if (params.exact_q()) out.norming_functional = FinVec();
    return out;
  }
  std::vector<Scalar> mags;
  for (const auto& [k, v] : x.entries()) {
    if constexpr (std::is_same_v<Scalar, Rational>)
      mags.push_back(tslab::abs(v));
    else
      mags.push_back(std::fabs(v.get_d()));
  }
  SliceChain<Scalar> chain(out.support, mags, params);
  auto& table = chain.top();
  const int len = table.length();
  for (int a = 0; a < len; ++a)
    for (int b = a + 1; b <= len; ++b) out.slices.emplace(std::make_pair(a, b), to_norm_value(table.norm(a, b)));
  out.value = out.slices.at({0, len});
  if constexpr (std::is_same_v<Scalar, Rational>) {
    std::vector<std::pair<int, unsigned>> leaves;
    table.functional(0, len, 0, leaves);
    FinVec f;
    for (auto [pos, depth] : leaves) {
      const std::uint32_t index = out.support[static_cast<std::size_t>(pos)];
      Rational coeff = pow(params.theta, depth);
      if (x.get(index) < 0) coeff = -coeff;
      f.set(index, coeff);
    }
    out.norming_functional = std::move(f);
  }
  return out;
}

}  // namespace

TsirelsonEvaluation evaluate_tsirelson(const FinVec& x, const TsirelsonParams& params, const Limits& limits) {
  validate_for(params, x.size(), limits);
  if (params.exact_q()) return evaluate_with<Rational>(x, params);
  return evaluate_with<double>(x, params);
}

NormValue t_norm(const FinVec& x, const TsirelsonParams& params, const Limits& limits) {
  return evaluate_tsirelson(x, params, limits).value;
}

double t_norm_approx(const ApproxVec& x, const TsirelsonParams& params, const Limits& limits) {
  std::vector<std::uint32_t> idx;
  std::vector<double> mags;
  for (std::size_t i = 0; i < x.index.size(); ++i) {
    if (x.value[i] == 0.0) continue;
    idx.push_back(x.index[i]);
    mags.push_back(std::fabs(x.value[i]));
  }
  validate_for(params, idx.size(), limits);
  if (idx.empty()) return 0.0;
  SliceChain<double> chain(idx, mags, params);
  auto& table = chain.top();
  return table.norm(0, table.length());
}

NormValue t_norm_via_convexification(const FinVec& x, const TsirelsonParams& params, const Limits& limits) {
  TsirelsonParams base = params;
  base.q = Exponent(1L);
  if (auto k = params.q.as_integer()) {
    FinVec powered;
    for (const auto& [n, v] : x.entries()) powered.set(n, pow(tslab::abs(v), *k));
    const NormValue inner = t_norm(powered, base, limits);
    return root(inner.rational(), params.q);
  }
  params.validate();
  ApproxVec powered = to_approx(x);
  for (double& v : powered.value) v = std::pow(std::fabs(v), params.q.as_double());
  const double inner = t_norm_approx(powered, base, limits);
  return NormValue::approximate(std::pow(inner, 1.0 / params.q.as_double()));
}

// ---------------------------------------------------------------------------
// Residual of the implicit equation, by explicit enumeration of families.

namespace {

template <class Scalar>
struct ResidualSearch {
  const std::vector<std::uint32_t>& support;
  const std::function<Scalar(int, int)>& slice_power;
  const Ordinal& xi;
  std::vector<std::uint32_t> minima;
  std::optional<Scalar> best;

  // Cuts the run starting at position s into slices ending at len.
  void cut(int s, int len, Scalar acc) {
    for (int e = s + 1; e <= len; ++e) {
      minima.push_back(support[static_cast<std::size_t>(s)]);
      if (is_member(minima, xi)) {
        Scalar next = acc + slice_power(s, e);
        if (e == len) {
          if (!best || *best < next) best = next;
        } else {
          cut(e, len, next);
        }
      }
      minima.pop_back();
    }
  }
};

}  // namespace

NormValue fixed_point_residual(const TsirelsonEvaluation& ev) {
  const int len = static_cast<int>(ev.support.size());
  if (len == 0) return NormValue::exact(Rational(0));
  if (ev.params.max_depth) throw InputError("the residual is defined for the fixed-point norm only");
  if (ev.params.exact_q()) {
    Rational linf(0);
    for (const auto& [k, v] : ev.x.entries()) linf = std::max(linf, tslab::abs(v));
    std::function<Rational(int, int)> slice = [&](int a, int b) { return ev.slices.at({a, b}).rational(); };
    ResidualSearch<Rational> search{ev.support, slice, ev.params.xi, {}, {}};
    for (int s = 0; s < len; ++s) search.cut(s, len, Rational(0));
    Rational rhs = std::max(linf, Rational(ev.params.theta * search.best.value_or(Rational(0))));
    return NormValue::exact(tslab::abs(Rational(ev.value.rational() - rhs)));
  }
  const double q = ev.params.q.as_double();
  double linf = 0.0;
  for (const auto& [k, v] : ev.x.entries()) linf = std::max(linf, std::fabs(v.get_d()));
  std::function<double(int, int)> slice = [&](int a, int b) { return std::pow(ev.slices.at({a, b}).value(), q); };
  ResidualSearch<double> search{ev.support, slice, ev.params.xi, {}, {}};
  for (int s = 0; s < len; ++s) search.cut(s, len, 0.0);
  const double sup = std::pow(ev.params.theta.get_d(), 1.0 / q) * std::pow(search.best.value_or(0.0), 1.0 / q);
  const double rhs = std::max(linf, sup);
  return NormValue::approximate(std::fabs(ev.value.value() - rhs), 1e-12);
}

NormValue fixed_point_residual(const FinVec& x, const TsirelsonParams& params, const NormValue& computed,
                               const Limits& limits) {
  TsirelsonEvaluation ev = evaluate_tsirelson(x, params, limits);
  ev.value = computed;
  return fixed_point_residual(ev);
}

// ---------------------------------------------------------------------------
// Norming set

namespace {

/// Non-negative functional on {1..window}: byte n is 0 (absent) or depth+1,
/// standing for theta^depth.
using Code = std::string;

struct CodeInfo {
  Code code;
  int first;
  int last;
};

class FunctionalGenerator {
 public:
  FunctionalGenerator(std::uint32_t window, const TsirelsonParams& params)
      : window_(static_cast<int>(window)), params_(params) {}

  std::vector<Code> run(unsigned& depth_reached) {
    for (int n = 0; n < window_; ++n) {
      Code c(static_cast<std::size_t>(window_), '\0');
      c[static_cast<std::size_t>(n)] = 1;
      add(c, frontier_);
    }
    depth_reached = 0;
    while (!frontier_.empty()) {
      if (params_.max_depth && depth_reached >= *params_.max_depth) break;
      for (const auto& c : frontier_) by_first_[static_cast<std::size_t>(c.first)].push_back(c);
      std::vector<CodeInfo> fresh;
      frontier_set_.clear();
      for (const auto& c : frontier_) frontier_set_.insert(c.code);
      std::vector<const CodeInfo*> chosen;
      std::vector<std::uint32_t> minima;
      combine(0, chosen, minima, false, fresh);
      frontier_ = std::move(fresh);
      if (!frontier_.empty()) ++depth_reached;
    }
    std::vector<Code> out(all_.begin(), all_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void add(const Code& c, std::vector<CodeInfo>& sink) {
    if (!all_.insert(c).second) return;
    int first = -1, last = -1;
    for (int n = 0; n < window_; ++n)
      if (c[static_cast<std::size_t>(n)]) {
        if (first < 0) first = n;
        last = n;
      }
    sink.push_back({c, first, last});
  }

  // Extends the successive family with members starting at or after `from`.
  void combine(int from, std::vector<const CodeInfo*>& chosen, std::vector<std::uint32_t>& minima, bool uses_new,
               std::vector<CodeInfo>& fresh) {
    if (chosen.size() >= 2 && uses_new) emit(chosen, fresh);
    for (int start = from; start < window_; ++start) {
      minima.push_back(static_cast<std::uint32_t>(start + 1));
      if (is_member(minima, params_.xi)) {
        for (const auto& info : by_first_[static_cast<std::size_t>(start)]) {
          chosen.push_back(&info);
          combine(info.last + 1, chosen, minima, uses_new || frontier_set_.count(info.code) > 0, fresh);
          chosen.pop_back();
        }
      }
      minima.pop_back();
    }
  }

  void emit(const std::vector<const CodeInfo*>& chosen, std::vector<CodeInfo>& fresh) {
    Code c(static_cast<std::size_t>(window_), '\0');
    for (const auto* info : chosen)
      for (int n = info->first; n <= info->last; ++n)
        if (info->code[static_cast<std::size_t>(n)])
          c[static_cast<std::size_t>(n)] = static_cast<char>(info->code[static_cast<std::size_t>(n)] + 1);
    add(c, fresh);
  }

  int window_;
  TsirelsonParams params_;
  std::unordered_set<Code> all_;
  std::unordered_set<Code> frontier_set_;
  std::vector<CodeInfo> frontier_;
  std::vector<std::vector<CodeInfo>> by_first_ = std::vector<std::vector<CodeInfo>>(64);
};

}  // namespace

FunctionalSet functional_set(std::uint32_t window, const TsirelsonParams& params, const Limits& limits) {
  params.validate();
  if (!params.exact_q()) throw InputError("norming sets are only generated for q = 1");
  require_within(window, limits.max_functional_window, "functional set window");
  FunctionalSet out;
  out.window = window;
  out.params = params;
  if (window == 0) return out;
  FunctionalGenerator gen(window, params);
  std::vector<Code> codes = gen.run(out.depth);
  out.functionals.reserve(codes.size());
  std::vector<Rational> powers{Rational(1)};
  for (const auto& code : codes) {
    FinVec f;
    for (std::uint32_t n = 0; n < window; ++n) {
      const auto level = static_cast<unsigned char>(code[n]);
      if (!level) continue;
      while (powers.size() < level) powers.push_back(powers.back() * params.theta);
      f.set(n + 1, powers[level - 1U]);
    }
    out.functionals.push_back(std::move(f));
  }
  return out;
}

bool FunctionalSet::contains(const FinVec& f) const {
  const FinVec a = f.abs();
  return std::find(functionals.begin(), functionals.end(), a) != functionals.end();
}

NormValue FunctionalSet::evaluate(const FinVec& x) const {
  if (!x.empty() && x.max_index() > window) throw InputError("vector is not supported in the functional set window");
  const FinVec a = x.abs();
  Rational best(0);
  for (const auto& f : functionals) best = std::max(best, f.dot(a));
  return NormValue::exact(best);
}

}  // namespace tslab
