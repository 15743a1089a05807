#include "tslab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ascent.hpp"
#include "tslab/rng.hpp"

namespace tslab {

std::string to_string(CertifyMode mode) {
  switch (mode) {
    case CertifyMode::automatic: return "auto";
    case CertifyMode::exact: return "exact";
    case CertifyMode::heuristic: return "heuristic";
  }
  return "?";
}

CertifyMode parse_certify_mode(std::string_view text) {
  if (text == "auto") return CertifyMode::automatic;
  if (text == "exact") return CertifyMode::exact;
  if (text == "heuristic") return CertifyMode::heuristic;
  throw InputError("unknown certification mode '" + std::string(text) + "' (auto, exact, heuristic)");
}

namespace {

struct Candidate {
  NormValue value;
  std::vector<Rational> alpha;  // positional, one per element of the support
};

bool same_value(const NormValue& a, const NormValue& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.value() == b.value();
}

std::vector<const FinVec*> components(const Point& x) {
  std::vector<const FinVec*> out;
  if (const auto* v = std::get_if<FinVec>(&x)) {
    out.push_back(v);
  } else {
    for (const auto& c : std::get<SumVec>(x)) out.push_back(&c);
  }
  return out;
}

bool disjoint(const std::vector<const Point*>& sub) {
  std::vector<std::set<std::uint32_t>> used;
  for (const Point* y : sub) {
    const auto comps = components(*y);
    if (used.size() < comps.size()) used.resize(comps.size());
    for (std::size_t j = 0; j < comps.size(); ++j)
      for (const auto& [n, v] : comps[j]->entries())
        if (!used[j].insert(n).second) return false;
  }
  return true;
}

/// Text key of a sub-family; with relabel, indices are replaced by their
/// rank in the union of supports.
std::string signature(const std::vector<const Point*>& sub, bool relabel) {
  std::map<std::uint32_t, std::uint32_t> rank;
  if (relabel) {
    for (const Point* y : sub)
      for (const FinVec* c : components(*y))
        for (const auto& [n, v] : c->entries()) rank.emplace(n, 0);
    std::uint32_t r = 0;
    for (auto& [n, value] : rank) value = ++r;
  }
  std::string out;
  for (const Point* y : sub) {
    out += '[';
    const auto comps = components(*y);
    for (std::size_t j = 0; j < comps.size(); ++j) {
      out += std::to_string(j) + ':';
      for (const auto& [n, v] : comps[j]->entries())
        out += std::to_string(relabel ? rank.at(n) : n) + '=' + tslab::to_string(v) + ',';
      out += ';';
    }
    out += ']';
  }
  return out;
}

class Certifier {
 public:
  Certifier(const VectorFamily& family, const Exponent& p, NormEngine& engine, const CertifyOptions& options)
      : family_(family), p_(p), engine_(engine), options_(options) {}

  Candidate sign_enumeration(const std::vector<const Point*>& sub) {
    const std::size_t r = sub.size();
    require_within(r, engine_.limits().max_sign_support, "sign enumeration support size");
    const bool one_pattern = family_.space.unconditional() && disjoint(sub);
    const std::uint64_t patterns = one_pattern ? 1 : (std::uint64_t{1} << (r - 1));
    std::optional<Candidate> best;
    std::vector<Point> ys;
    for (const Point* y : sub) ys.push_back(*y);
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      std::vector<Rational> alpha(r, Rational(1));
      for (std::size_t i = 1; i < r; ++i)
        if ((mask >> (i - 1)) & 1U) alpha[i] = -1;
      NormValue v = engine_.norm(family_.space, combine(family_.space, ys, alpha));
      if (!best || greater(v, best->value)) best = Candidate{v, alpha};
    }
    return *best;
  }

  Candidate heuristic(const std::vector<const Point*>& sub, std::uint64_t seed) {
    if (family_.space.kind == Space::Kind::tsirelson_dual) return dual_heuristic(sub, seed);
    for (const auto& part : family_.space.parts)
      if (part.space->kind == Space::Kind::tsirelson_dual)
        throw InputError("heuristic certification is not available for sums with dual Tsirelson parts");
    const std::size_t r = sub.size();
    // Dense copies of the y_k over the union of their supports.
    std::vector<ApproxPoint> ya;
    for (const Point* y : sub) ya.push_back(to_approx(family_.space, *y));
    const std::size_t ncomp = ya.front().size();
    std::vector<std::vector<std::uint32_t>> unions(ncomp);
    for (std::size_t j = 0; j < ncomp; ++j) {
      std::set<std::uint32_t> u;
      for (const auto& y : ya) u.insert(y[j].index.begin(), y[j].index.end());
      unions[j].assign(u.begin(), u.end());
    }
    std::vector<std::vector<std::vector<double>>> dense(r, std::vector<std::vector<double>>(ncomp));
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < ncomp; ++j) {
        dense[k][j].assign(unions[j].size(), 0.0);
        for (std::size_t i = 0; i < ya[k][j].index.size(); ++i) {
          const auto pos = std::lower_bound(unions[j].begin(), unions[j].end(), ya[k][j].index[i]) - unions[j].begin();
          dense[k][j][static_cast<std::size_t>(pos)] = ya[k][j].value[i];
        }
      }
    ApproxPoint work(ncomp);
    for (std::size_t j = 0; j < ncomp; ++j) work[j].index = unions[j];
    detail::Objective ratio = [&](const std::vector<double>& alpha) {
      const double denom = lp_norm(alpha, p_);
      if (denom == 0.0) return 0.0;
      for (std::size_t j = 0; j < ncomp; ++j) {
        work[j].value.assign(unions[j].size(), 0.0);
        for (std::size_t k = 0; k < r; ++k)
          if (alpha[k] != 0.0)
            for (std::size_t i = 0; i < unions[j].size(); ++i) work[j].value[i] += alpha[k] * dense[k][j][i];
      }
      return engine_.approx_norm(family_.space, work) / denom;
    };
    detail::AscentOptions ascent;
    ascent.lo = family_.space.unconditional() && disjoint(sub) ? 0.0 : -1.0;
    ascent.random_starts = options_.restarts;
    ascent.seed = seed;
    const detail::AscentResult found = detail::maximize(r, ratio, ascent);

    std::vector<Rational> alpha;
    for (double a : found.point) alpha.push_back(round_dyadic(a, 24));
    return evaluate(sub, alpha);
  }

  /// For dual spaces the sup over alpha is taken in closed form:
  /// sup_alpha sum alpha_k u_k(y) / ||alpha||_p = ||(u_k(y))_k||_{p'}.
  Candidate dual_heuristic(const std::vector<const Point*>& sub, std::uint64_t seed) {
    const TsirelsonParams& params = family_.space.tsirelson;
    const std::size_t r = sub.size();
    std::set<std::uint32_t> u;
    for (const Point* y : sub)
      for (const auto& [n, v] : std::get<FinVec>(*y).entries()) u.insert(n);
    const std::vector<std::uint32_t> support(u.begin(), u.end());
    require_within(support.size(), engine_.limits().max_support, "dual certification support size");
    std::vector<std::vector<double>> coeffs(r, std::vector<double>(support.size(), 0.0));
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < support.size(); ++i) coeffs[k][i] = std::get<FinVec>(*sub[k]).get(support[i]).get_d();
    const Exponent pc = p_.conjugate();
    std::vector<double> c(r);
    detail::Objective ratio = [&](const std::vector<double>& y) {
      for (std::size_t k = 0; k < r; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) s += coeffs[k][i] * y[i];
        c[k] = s;
      }
      const double bottom = t_norm_approx(ApproxVec{support, y}, params, engine_.limits());
      return bottom > 0.0 ? lp_norm(c, pc) / bottom : 0.0;
    };
    detail::AscentOptions ascent;
    ascent.lo = -1.0;
    ascent.random_starts = options_.restarts;
    ascent.seed = seed;
    const detail::AscentResult found = detail::maximize(support.size(), ratio, ascent);

    // Hoelder-dual coefficients of c = (u_k(y)).
    std::vector<Rational> alpha(r, Rational(0));
    for (std::size_t k = 0; k < r; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < support.size(); ++i) s += coeffs[k][i] * found.point[i];
      double a = 0.0;
      if (pc.is_infinite()) {
        a = s;  // p = 1: handled by the closed form, kept for completeness
      } else if (p_.is_infinite()) {
        a = s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
      } else {
        a = std::copysign(std::pow(std::fabs(s), pc.as_double() - 1.0), s);
      }
      alpha[k] = round_dyadic(a, 24);
    }
    if (std::all_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a == 0; })) alpha[0] = 1;
    FinVec y;
    for (std::size_t i = 0; i < support.size(); ++i) y.set(support[i], round_dyadic(found.point[i], 24));
    // Lower bound: x*(y) / ||y|| <= ||x*|| for x* = sum alpha_k u_k.
    std::vector<Point> ys;
    for (const Point* p : sub) ys.push_back(*p);
    const FinVec xstar = std::get<FinVec>(combine(family_.space, ys, alpha));
    const Rational top = tslab::abs(xstar.dot(y));
    const NormValue ynorm = y.empty() ? NormValue::exact(Rational(0)) : t_norm(y, params, engine_.limits());
    const NormValue an = lp_norm(alpha, p_);
    NormValue value = NormValue::exact(Rational(0));
    if (ynorm.value() > 0.0) {
      const NormValue lower = ynorm.is_exact() ? NormValue::exact(top / ynorm.rational())
                                               : NormValue::approximate(top.get_d() / ynorm.value());
      value = divide(lower, an);
    }
    return Candidate{value, alpha};
  }

  Candidate evaluate(const std::vector<const Point*>& sub, std::vector<Rational> alpha) {
    if (std::all_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a == 0; })) alpha[0] = 1;
    std::vector<Point> ys;
    for (const Point* y : sub) ys.push_back(*y);
    const NormValue top = engine_.norm(family_.space, combine(family_.space, ys, alpha));
    return Candidate{divide(top, lp_norm(alpha, p_)), std::move(alpha)};
  }

 private:
  const VectorFamily& family_;
  Exponent p_;
  NormEngine& engine_;
  const CertifyOptions& options_;
};

/// Strict order used to pick the reported witness.
bool better(const Candidate& a, const FinSet& fa, const Candidate& b, const FinSet& fb) {
  if (!same_value(a.value, b.value)) return greater(a.value, b.value);
  if (fa != fb) return fa < fb;
  return a.alpha < b.alpha;
}

}  // namespace

WindowReport window_constant(const VectorFamily& family, const Ordinal& xi, const Exponent& p, NormEngine& engine,
                             const CertifyOptions& options) {
  family.space.validate();
  if (family.vectors.empty()) throw InputError("the vector family is empty");
  for (const auto& y : family.vectors) check_shape(family.space, y);
  const std::uint32_t K = options.window.value_or(static_cast<std::uint32_t>(family.vectors.size()));
  if (K == 0 || K > family.vectors.size())
    throw InputError("window " + std::to_string(K) + " does not fit a family of " +
                     std::to_string(family.vectors.size()) + " vectors");
  require_within(K, engine.limits().max_window, "certification window");

  WindowReport report;
  report.p = p;
  report.xi = xi;
  report.window = K;

  const bool closed_form = p.is_one() && options.mode != CertifyMode::heuristic;
  const bool signs = p.is_infinite() && family.space.evaluable() && options.mode != CertifyMode::heuristic;
  if (options.mode == CertifyMode::exact && !closed_form && !signs)
    throw InputError("exact certification needs p = 1, or p = inf with an evaluable norm");
  const bool heuristic = !closed_form && !signs;
  if (heuristic && options.restarts == 0) throw InputError("heuristic certification needs at least one restart");
  report.mode = heuristic ? CertifyMode::heuristic : CertifyMode::exact;
  if (heuristic) {
    report.restarts = options.restarts;
    report.seed = options.seed;
  }

  std::vector<FinSet> supports;
  if (closed_form) {
    for (std::uint32_t k = 1; k <= K; ++k) supports.push_back(FinSet{k});
  } else if (xi.is_omega1()) {
    if (options.all_supports) {
      require_within(K, engine.limits().max_sign_support, "all-subsets window");
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << K); ++mask) supports.push_back(FinSet::from_mask(mask));
      std::sort(supports.begin(), supports.end());
    } else {
      supports.push_back(FinSet::range(1, K));
    }
  } else if (options.all_supports) {
    for (auto& F : members_within(xi, K, 1, engine.limits()))
      if (!F.empty()) supports.push_back(std::move(F));
  } else {
    supports = maximal_members(xi, K, engine.limits());
  }
  report.supports = supports.size();

  Certifier certifier(family, p, engine, options);
  const bool relabel = family.space.permutation_invariant();
  std::map<std::string, Candidate> memo;
  std::optional<std::pair<Candidate, FinSet>> best;
  for (const auto& F : supports) {
    std::vector<const Point*> sub;
    for (auto k : F.elements()) sub.push_back(&family.vectors[k - 1]);
    const std::string key = signature(sub, relabel);
    auto it = memo.find(key);
    if (it == memo.end()) {
      Candidate c = signs ? certifier.sign_enumeration(sub)
                  : heuristic ? certifier.heuristic(sub, derive_seed(options.seed, key))
                              : certifier.evaluate(sub, {Rational(1)});
      it = memo.emplace(key, std::move(c)).first;
      ++report.evaluated;
    }
    if (!best || better(it->second, F, best->first, best->second)) best.emplace(it->second, F);
  }

  report.constant = best->first.value;
  report.witness_support = best->second;
  const auto& elems = best->second.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) report.witness_coeffs.set(elems[i], best->first.alpha[i]);
  return report;
}

WindowReport window_constant(const VectorFamily& family, const Ordinal& xi, const Exponent& p,
                             const CertifyOptions& options, const Limits& limits) {
  NormEngine engine(limits);
  return window_constant(family, xi, p, engine, options);
}

NormValue witness_ratio(const VectorFamily& family, const WindowReport& report, NormEngine& engine) {
  std::vector<Rational> alpha;
  for (std::size_t k = 1; k <= family.vectors.size(); ++k) alpha.push_back(report.witness_coeffs.get(static_cast<std::uint32_t>(k)));
  const NormValue top = engine.norm(family.space, combine(family.space, family.vectors, alpha));
  return divide(top, lp_norm(report.witness_coeffs, report.p));
}

}  // namespace tslab
