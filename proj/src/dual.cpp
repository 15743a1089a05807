#include <algorithm>
#include <cmath>
#include <set>

#include "ascent.hpp"
#include "partition_search.hpp"
#include "tslab/rng.hpp"
#include "tslab/simplex.hpp"
#include "tslab/tsirelson.hpp"

namespace tslab {

DualSolver::DualSolver(TsirelsonParams params, Limits limits) : params_(std::move(params)), limits_(limits) {
  params_.validate();
  if (!params_.exact_q()) throw InputError("the exact dual norm is only available for q = 1");
  if (params_.max_depth) throw InputError("the exact dual norm needs the fixed-point norm");
}

DualResult DualSolver::solve(const FinVec& xstar) {
  require_within(xstar.size(), limits_.max_support, "dual support size");
  DualResult out;
  if (xstar.empty()) return out;
  const std::vector<std::uint32_t> support = xstar.support();
  const std::size_t n = support.size();
  std::vector<Rational> objective;
  for (auto k : support) objective.push_back(tslab::abs(xstar.get(k)));

  // Rows are functionals restricted to supp(x*); `origin` keeps the full
  // functional for the certificate.
  std::vector<std::vector<Rational>> rows;
  std::vector<FinVec> origin;
  std::set<std::vector<Rational>> seen;
  auto add_row = [&](const FinVec& f) {
    std::vector<Rational> row;
    row.reserve(n);
    for (auto k : support) row.push_back(f.get(k));
    if (std::all_of(row.begin(), row.end(), [](const Rational& v) { return v == 0; })) return false;
    if (!seen.insert(row).second) return false;
    rows.push_back(std::move(row));
    origin.push_back(f);
    return true;
  };
  for (auto k : support) add_row(FinVec::unit(k));
  for (const auto& f : pool_) add_row(f);

  for (;;) {
    const std::vector<Rational> rhs(rows.size(), Rational(1));
    const PackingLpResult lp = solve_packing_lp(rows, rhs, objective);
    ++out.lp_solves;
    FinVec y;
    for (std::size_t i = 0; i < n; ++i) y.set(support[i], lp.primal[i]);
    const TsirelsonEvaluation ev = evaluate_tsirelson(y, params_, limits_);
    if (ev.value.rational() <= 1) {
      out.value = NormValue::exact(lp.value);
      FinVec witness;
      for (std::size_t i = 0; i < n; ++i) {
        Rational v = lp.primal[i];
        if (xstar.get(support[i]) < 0) v = -v;
        witness.set(support[i], v);
      }
      out.witness = std::move(witness);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (lp.dual[r] > 0) out.certificate.emplace_back(origin[r], lp.dual[r]);
      return out;
    }
    const FinVec& cut = *ev.norming_functional;
    if (!add_row(cut)) throw Error("cutting-plane loop produced a repeated constraint");
    pool_.push_back(cut);
    ++out.cuts;
  }
}

DualResult dual_norm(const FinVec& xstar, const TsirelsonParams& params, const Limits& limits) {
  DualSolver solver(params, limits);
  return solver.solve(xstar);
}

namespace {

using detail::PartitionSearch;

class UpperBound {
 public:
  UpperBound(const FinVec& xstar, const TsirelsonParams& params)
      : params_(params), support_(xstar.support()), len_(static_cast<int>(support_.size())) {
    for (auto k : support_) mags_.push_back(tslab::abs(xstar.get(k)));
    table_.resize(static_cast<std::size_t>((len_ + 1) * (len_ + 1)));
  }

  NormValue value() {
    if (len_ == 0) return NormValue::exact(Rational(0));
    if (params_.exact_q()) return NormValue::exact(exact(0, len_));
    return NormValue::approximate(approx(0, len_));
  }

 private:
  std::size_t slot(int a, int b) const { return static_cast<std::size_t>(a * (len_ + 1) + b); }

  Rational ell1(int a, int b) const {
    Rational s(0);
    for (int i = a; i < b; ++i) s += mags_[static_cast<std::size_t>(i)];
    return s;
  }

  // q = 1: the combine is a maximum.
  Rational exact(int a, int b) {
    auto& cached = table_[slot(a, b)];
    if (cached) return *cached;
    if (!exact_search_)
      exact_search_.emplace(
          support_, PartitionSearch<Rational>::Goal::minimize, [this](int s, int e) { return exact(s, e); },
          [](const Rational& x, const Rational& y) { return std::max(x, y); });
    Rational u = ell1(a, b);
    if (b - a > 1) {
      if (auto best = exact_search_->best(params_.xi, a, b, true)) u = std::min(u, Rational(best->value / params_.theta));
    }
    cached = u;
    return u;
  }

  double approx(int a, int b) {
    auto& cached = approx_table_[{a, b}];
    if (cached > 0) return cached;
    const double p = params_.q.conjugate().as_double();
    const double q = params_.q.as_double();
    if (!approx_search_)
      approx_search_.emplace(
          support_, PartitionSearch<double>::Goal::minimize, [this, p](int s, int e) { return std::pow(approx(s, e), p); },
          [](double x, double y) { return x + y; });
    double u = ell1(a, b).get_d();
    if (b - a > 1) {
      if (auto best = approx_search_->best(params_.xi, a, b, true))
        u = std::min(u, std::pow(params_.theta.get_d(), -1.0 / q) * std::pow(best->value, 1.0 / p));
    }
    cached = u;
    return u;
  }

  TsirelsonParams params_;
  std::vector<std::uint32_t> support_;
  int len_;
  std::vector<Rational> mags_;
  std::vector<std::optional<Rational>> table_;
  std::map<std::pair<int, int>, double> approx_table_;
  std::optional<PartitionSearch<Rational>> exact_search_;
  std::optional<PartitionSearch<double>> approx_search_;
};

}  // namespace

NormValue dual_norm_upper(const FinVec& xstar, const TsirelsonParams& params, const Limits& limits) {
  params.validate();
  require_within(xstar.size(), limits.max_support, "dual support size");
  UpperBound bound(xstar, params);
  return bound.value();
}

DualBracket dual_norm_bracket(const FinVec& xstar, const TsirelsonParams& params, const BracketOptions& options,
                              const Limits& limits) {
  params.validate();
  require_within(xstar.size(), limits.max_support, "dual support size");
  DualBracket out;
  out.upper = dual_norm_upper(xstar, params, limits);
  out.lower = lp_norm(xstar, params.q.conjugate());
  if (xstar.empty()) return out;

  const std::vector<std::uint32_t> support = xstar.support();
  std::vector<double> weights;
  for (auto k : support) weights.push_back(std::fabs(xstar.get(k).get_d()));
  detail::Objective ratio = [&](const std::vector<double>& y) {
    ApproxVec v{support, y};
    double top = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) top += weights[i] * y[i];
    const double bottom = t_norm_approx(v, params, limits);
    return bottom > 0.0 ? top / bottom : 0.0;
  };
  detail::AscentOptions ascent;
  ascent.random_starts = options.restarts;
  ascent.seed = derive_seed(options.seed, "dual-bracket:" + xstar.to_string());
  const detail::AscentResult found = detail::maximize(support.size(), ratio, ascent);

  // Re-evaluate on a dyadic rounding so the reported ratio belongs to an
  // actual vector.
  FinVec y;
  for (std::size_t i = 0; i < support.size(); ++i) {
    Rational v = round_dyadic(found.point[i], 24);
    if (v < 0) v = 0;
    if (xstar.get(support[i]) < 0) v = -v;
    y.set(support[i], v);
  }
  if (y.empty()) return out;
  const Rational top = xstar.dot(y);
  const NormValue bottom = t_norm(y, params, limits);
  NormValue candidate = bottom.is_exact() ? NormValue::exact(top / bottom.rational())
                                          : NormValue::approximate(top.get_d() / bottom.value());
  if (greater(candidate, out.lower)) {
    out.lower = candidate;
    out.witness = std::move(y);
  }
  return out;
}

}  // namespace tslab
