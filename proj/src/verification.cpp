#include "tslab/verification.hpp"

#include <algorithm>
#include <cmath>

#include "tslab/estimates.hpp"
#include "tslab/rng.hpp"
#include "tslab/schreier.hpp"
#include "tslab/simplex.hpp"
#include "tslab/spaces.hpp"
#include "tslab/tsirelson.hpp"

namespace tslab {

void SuiteReport::add(std::string check, bool ok, Json values) {
  checks.push_back(Check{std::move(check), ok, std::move(values)});
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool SuiteReport::passed(std::string_view prefix) const {
  bool any = false;
  for (const auto& c : checks) {
    if (c.name.compare(0, prefix.size(), prefix) != 0) continue;
    any = true;
    if (!c.passed) return false;
  }
  return any;
}

Json SuiteReport::to_json() const {
  Json out;
  out["name"] = name;
  out["config"] = config;
  out["passed"] = passed();
  out["checks"] = Json::array();
  for (const auto& c : checks) out["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"values", c.values}});
  return out;
}

const char* version() { return TSLAB_VERSION; }

Json make_report(const std::string& command, const Json& config, const std::vector<SuiteReport>& suites,
                 double wall_seconds) {
  Json out;
  out["tool"] = "tslab";
  out["version"] = version();
  out["command"] = command;
  out["config"] = config;
  bool ok = true;
  out["suites"] = Json::array();
  for (const auto& s : suites) {
    ok = ok && s.passed();
    out["suites"].push_back(s.to_json());
  }
  out["passed"] = ok;
  out["wall_time_seconds"] = wall_seconds;
  return out;
}

namespace {

constexpr double kSlack = 1e-6;

Rational random_rational(Rng& rng, int span = 6) {
  static const int dens[] = {1, 2, 3, 4, 5, 8};
  std::int64_t num = 0;
  while (num == 0) num = rng.range(-span, span);
  return ratio(num, dens[rng.below(6)]);
}

/// Random vector on {first..last}; every index is kept with probability
/// 2/3, and at least one is.
FinVec random_vector(Rng& rng, std::uint32_t first, std::uint32_t last) {
  FinVec v;
  for (std::uint32_t n = first; n <= last; ++n)
    if (rng.below(3) != 0) v.set(n, random_rational(rng));
  if (v.empty()) v.set(static_cast<std::uint32_t>(rng.range(first, last)), random_rational(rng));
  return v;
}

Json pair_json(const NormValue& a, const NormValue& b) { return Json{{"lhs", to_json(a)}, {"rhs", to_json(b)}}; }

/// Tracks the worst case of a family of sampled checks.
struct Tally {
  std::size_t trials = 0;
  std::size_t failures = 0;
  Json first_failure = nullptr;

  void record(bool ok, const std::function<Json()>& describe) {
    ++trials;
    if (ok) return;
    if (failures++ == 0) first_failure = describe();
  }
  Json json() const { return Json{{"trials", trials}, {"failures", failures}, {"first_failure", first_failure}}; }
  bool ok() const { return failures == 0; }
};

void add_tally(SuiteReport& report, const std::string& name, const Tally& t) { report.add(name, t.ok(), t.json()); }

}  // namespace

// ---------------------------------------------------------------------------

SuiteReport verify_schreier(std::uint32_t window, const Limits& limits) {
  SuiteReport report;
  report.name = "schreier";
  report.config = {{"window", window}};
  require_within(window, std::min<std::size_t>(limits.max_membership, 20), "Schreier verification window");
  const std::vector<std::string> ordinals = {"0", "1", "2", "3", "w", "w+1", "w*2", "w^2"};
  const std::uint64_t full = std::uint64_t{1} << window;
  const Ordinal one = Ordinal::finite(1);
  std::vector<bool> s1(full);
  for (std::uint64_t mask = 0; mask < full; ++mask) s1[mask] = is_member(FinSet::from_mask(mask), one);

  for (const auto& text : ordinals) {
    const Ordinal xi = Ordinal::parse(text);
    std::vector<bool> in(full);
    Tally oracle, hereditary, spreading, contains_s1;
    std::size_t members = 0;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
      const FinSet F = FinSet::from_mask(mask);
      in[mask] = is_member(F, xi);
      members += in[mask];
      const bool slow = is_member_oracle(F, xi, limits);
      oracle.record(slow == in[mask], [&] { return Json{{"set", to_json(F)}, {"fast", bool(in[mask])}}; });
    }
    for (std::uint64_t mask = 0; mask < full; ++mask) {
      if (!in[mask]) continue;
      const FinSet F = FinSet::from_mask(mask);
      for (std::uint32_t bit = 0; bit < window; ++bit)
        if ((mask >> bit) & 1U) {
          const std::uint64_t sub = mask & ~(std::uint64_t{1} << bit);
          hereditary.record(in[sub], [&] { return Json{{"set", to_json(F)}, {"removed", bit + 1}}; });
          // Moving one element a step to the right; chains of such moves
          // reach every spread of F inside the window.
          const std::uint32_t next = bit + 1;
          if (next < window && !((mask >> next) & 1U)) {
            const std::uint64_t moved = sub | (std::uint64_t{1} << next);
            spreading.record(in[moved], [&] { return Json{{"set", to_json(F)}, {"moved", bit + 1}}; });
          }
        }
    }
    if (!xi.is_zero())
      for (std::uint64_t mask = 0; mask < full; ++mask)
        if (s1[mask]) contains_s1.record(in[mask], [&] { return Json{{"set", to_json(FinSet::from_mask(mask))}}; });
    const std::string tag = "[" + xi.to_string() + "]";
    report.add("oracle agreement " + tag, oracle.ok(), oracle.json());
    report.add("hereditary " + tag, hereditary.ok(), hereditary.json());
    report.add("spreading " + tag, spreading.ok(), spreading.json());
    if (!xi.is_zero()) report.add("contains S_1 " + tag, contains_s1.ok(), contains_s1.json());
    report.checks.back().values["members"] = members;
  }

  struct Example {
    FinSet set;
    const char* xi;
    bool expected;
  };
  const std::vector<Example> examples = {{{3, 4, 5}, "1", true},        {{}, "w^2", true},  {{1, 2}, "1", false},
                                         {{2, 3, 4, 5, 6, 7}, "2", true}, {{1, 2}, "2", false}};
  for (const auto& e : examples) {
    const bool got = is_member(e.set, Ordinal::parse(e.xi));
    report.add("membership example " + e.set.to_string() + " in S_" + e.xi, got == e.expected,
               {{"expected", e.expected}, {"got", got}});
  }
  std::vector<std::string> listed;
  for (const auto& F : maximal_members(Ordinal::finite(1), 4, limits)) listed.push_back(F.to_string());
  const std::vector<std::string> expected_max = {"{1}", "{2,3}", "{2,4}", "{3,4}"};
  report.add("maximal members S_1 in {1..4}", listed == expected_max, {{"got", listed}});

  const ThresholdResult t12 = subset_threshold(Ordinal::finite(1), Ordinal::finite(2), 12, 12, limits);
  report.add("threshold d(1,2) within {1..12}", t12.d == 1u, to_json(t12));
  const ThresholdResult t21 = subset_threshold(Ordinal::finite(2), Ordinal::finite(1), 12, 4, limits);
  report.add("threshold d(2,1) has no d <= 4", !t21.d && t21.counterexamples.size() == 4, to_json(t21));
  return report;
}

// ---------------------------------------------------------------------------

SuiteReport verify_fixed_point(unsigned trials, std::uint64_t seed, const Limits& limits) {
  SuiteReport report;
  report.name = "tsirelson";
  report.config = {{"trials", trials}, {"seed", seed}, {"window", 8}, {"theta", "1/2"}, {"q", "1"}};
  Rng rng(derive_seed(seed, "fixed-point"));
  Tally residual, sandwich, functional;
  for (unsigned t = 0; t < trials; ++t) {
    const FinVec x = random_vector(rng, 1, 8);
    for (unsigned xi = 1; xi <= 2; ++xi) {
      TsirelsonParams params;
      params.xi = Ordinal::finite(xi);
      const TsirelsonEvaluation ev = evaluate_tsirelson(x, params, limits);
      const NormValue r = fixed_point_residual(ev);
      residual.record(r.is_exact() && r.rational() == 0,
                      [&] { return Json{{"x", to_json(x)}, {"xi", xi}, {"residual", to_json(r)}}; });
      const NormValue inf = lp_norm(x, Exponent::infinity());
      const NormValue one = lp_norm(x, Exponent(1L));
      sandwich.record(leq(inf, ev.value) && leq(ev.value, one),
                      [&] { return Json{{"x", to_json(x)}, {"xi", xi}, {"norm", to_json(ev.value)}}; });
      const FinVec& f = *ev.norming_functional;
      functional.record(f.dot(x) == ev.value.rational(),
                        [&] { return Json{{"x", to_json(x)}, {"functional", to_json(f)}}; });
    }
  }
  add_tally(report, "residual is exactly zero", residual);
  add_tally(report, "l_inf <= T <= l_1", sandwich);
  add_tally(report, "norming functional attains the norm", functional);

  TsirelsonParams params;
  const NormValue a = t_norm(FinVec::constant(2, 3, 1), params, limits);
  report.add("anchor ||e_2 + e_3||_T = 1", a.is_exact() && a.rational() == 1, {{"value", to_json(a)}});
  const NormValue b = t_norm(FinVec::constant(9, 16, 1), params, limits);
  report.add("anchor ||ones{9..16}||_T = 4", b.is_exact() && b.rational() == 4, {{"value", to_json(b)}});
  const NormValue c = t_norm(FinVec::unit(5), params, limits);
  report.add("anchor ||e_5||_T = 1", c.is_exact() && c.rational() == 1, {{"value", to_json(c)}});
  return report;
}

SuiteReport verify_convexification(unsigned trials, std::uint64_t seed, const Limits& limits) {
  SuiteReport report;
  report.name = "convexification";
  report.config = {{"trials", trials}, {"seed", seed}, {"window", 6}, {"q", "2"}};
  Rng rng(derive_seed(seed, "convexification"));
  Tally agree, residual, sandwich;
  double worst = 0.0;
  for (unsigned t = 0; t < trials; ++t) {
    const FinVec x = random_vector(rng, 1, 6);
    TsirelsonParams params;
    params.q = Exponent(2L);
    params.xi = Ordinal::finite(1 + t % 2);
    const TsirelsonEvaluation ev = evaluate_tsirelson(x, params, limits);
    const NormValue conv = t_norm_via_convexification(x, params, limits);
    const double gap = std::fabs(ev.value.value() - conv.value());
    worst = std::max(worst, gap);
    agree.record(gap <= 1e-9, [&] { return Json{{"x", to_json(x)}, {"direct", ev.value.value()}, {"convex", conv.value()}}; });
    const NormValue r = fixed_point_residual(ev);
    residual.record(r.value() <= 1e-9, [&] { return Json{{"x", to_json(x)}, {"residual", r.value()}}; });
    const double inf = lp_norm(x, Exponent::infinity()).value();
    const double l2 = lp_norm(x, Exponent(2L)).value();
    sandwich.record(inf <= ev.value.value() + 1e-9 && ev.value.value() <= l2 + 1e-9,
                    [&] { return Json{{"x", to_json(x)}, {"norm", ev.value.value()}}; });
  }
  Json values = agree.json();
  values["max_gap"] = worst;
  report.add("direct and convexified norms agree within 1e-9", agree.ok(), values);
  add_tally(report, "q = 2 residual <= 1e-9", residual);
  add_tally(report, "l_inf <= T_2 <= l_2", sandwich);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

/// LP over the whole norming set on {1..window}, the slow reference for
/// the cutting-plane solver.
Rational dual_over_functional_set(const FinVec& xstar, const FunctionalSet& set) {
  const auto support = xstar.support();
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : set.functionals) {
    std::vector<Rational> row;
    bool nonzero = false;
    for (auto k : support) {
      row.push_back(f.get(k));
      nonzero = nonzero || row.back() != 0;
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  std::vector<Rational> objective;
  for (auto k : support) objective.push_back(tslab::abs(xstar.get(k)));
  return solve_packing_lp(rows, std::vector<Rational>(rows.size(), Rational(1)), objective).value;
}

bool certificate_holds(const FinVec& xstar, const DualResult& d) {
  Rational total(0);
  FinVec cover;
  for (const auto& [f, w] : d.certificate) {
    if (w < 0) return false;
    total += w;
    cover += w * f;
  }
  if (total != d.value.rational()) return false;
  for (const auto& [k, v] : xstar.entries())
    if (cover.get(k) < tslab::abs(v)) return false;
  return true;
}

}  // namespace

SuiteReport verify_dual(unsigned trials, std::uint64_t seed, const Limits& limits) {
  SuiteReport report;
  report.name = "dual";
  report.config = {{"trials", trials}, {"seed", seed}, {"window", 10}, {"q", "1"}};
  TsirelsonParams params;
  DualSolver solver(params, limits);
  const FunctionalSet set6 = functional_set(6, params, limits);
  Rng rng(derive_seed(seed, "dual"));
  Tally bracket, lower_estimate, certificate, witness, reference;
  for (unsigned t = 0; t < trials; ++t) {
    const std::uint32_t last = t < trials / 3 ? 6 : 10;
    const FinVec xstar = random_vector(rng, 1, last);
    const DualResult d = solver.solve(xstar);
    BracketOptions bo;
    bo.seed = seed + t;
    bo.restarts = 2;
    const DualBracket b = dual_norm_bracket(xstar, params, bo, limits);
    bracket.record(leq(b.lower, d.value) && leq(d.value, b.upper) && leq(b.lower, b.upper), [&] {
      return Json{{"xstar", to_json(xstar)}, {"lp", to_json(d.value)}, {"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}};
    });
    lower_estimate.record(leq(lp_norm(xstar, Exponent::infinity()), d.value),
                          [&] { return Json{{"xstar", to_json(xstar)}, {"lp", to_json(d.value)}}; });
    certificate.record(certificate_holds(xstar, d), [&] { return Json{{"xstar", to_json(xstar)}}; });
    const NormValue wn = t_norm(d.witness, params, limits);
    witness.record(wn.rational() == 1 && xstar.dot(d.witness) == d.value.rational(),
                   [&] { return Json{{"xstar", to_json(xstar)}, {"witness", to_json(d.witness)}, {"norm", to_json(wn)}}; });
    if (last <= 6) {
      const Rational ref = dual_over_functional_set(xstar, set6);
      reference.record(ref == d.value.rational(),
                       [&] { return Json{{"xstar", to_json(xstar)}, {"lp", to_json(d.value)}, {"set", tslab::to_string(ref)}}; });
    }
  }
  add_tally(report, "cutting-plane value lies in the bracket", bracket);
  add_tally(report, "l_inf <= T* (exact)", lower_estimate);
  add_tally(report, "weight certificate covers |x*|", certificate);
  add_tally(report, "witness has norm 1 and attains the value", witness);
  add_tally(report, "agrees with the LP over the full norming set on {1..6}", reference);

  const FunctionalSet set3 = functional_set(3, params, limits);
  struct Anchor {
    const char* name;
    FinVec xstar;
    Rational value;
  };
  const std::vector<Anchor> anchors = {{"||e_4*|| = 1", FinVec::unit(4), Rational(1)},
                                       {"||e_2* + e_3*|| = 2", FinVec::constant(2, 3, 1), Rational(2)},
                                       {"||ones*{1,2,3}|| = 3", FinVec::constant(1, 3, 1), Rational(3)}};
  for (const auto& a : anchors) {
    const DualResult d = dual_norm(a.xstar, params, limits);
    const Rational ref = dual_over_functional_set(a.xstar, a.xstar.max_index() <= 3 ? set3 : set6);
    const DualBracket b = dual_norm_bracket(a.xstar, params, {}, limits);
    const bool ok = d.value.rational() == a.value && ref == a.value && t_norm(d.witness, params, limits).rational() == 1 &&
                    b.lower.rational() == a.value && b.upper.rational() == a.value;
    report.add(std::string("anchor ") + a.name, ok,
               {{"lp", to_json(d.value)}, {"witness", to_json(d.witness)}, {"set_lp", tslab::to_string(ref)},
                {"bracket", pair_json(b.lower, b.upper)}});
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

/// Successive random blocks inside {1..window}.
std::vector<FinVec> random_blocks(Rng& rng, std::uint32_t window, unsigned max_blocks) {
  const auto count = static_cast<unsigned>(rng.range(1, std::min<std::int64_t>(max_blocks, window)));
  // Cut {1..window} into `count` consecutive intervals, then drop a random
  // prefix and suffix from each.
  std::vector<std::uint32_t> cuts;
  for (std::uint32_t n = 2; n <= window; ++n) cuts.push_back(n);
  for (std::size_t i = cuts.size(); i > 1; --i) std::swap(cuts[i - 1], cuts[rng.below(i)]);
  cuts.resize(count - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), 1);
  cuts.push_back(window + 1);
  std::vector<FinVec> out;
  for (unsigned b = 0; b < count; ++b) {
    const std::uint32_t lo = cuts[b];
    const std::uint32_t hi = cuts[b + 1] - 1;
    out.push_back(random_vector(rng, lo, hi));
  }
  return out;
}

}  // namespace

SuiteReport verify_block_estimate(const BlockOptions& options, const Limits& limits) {
  SuiteReport report;
  report.name = "block";
  report.config = {{"q", to_json(options.q)},      {"xi", to_json(options.xi)},
                   {"trials", options.trials},      {"window", options.window},
                   {"max_blocks", options.max_blocks}, {"restarts", options.restarts},
                   {"seed", options.seed}};
  TsirelsonParams params;
  params.q = options.q;
  params.xi = options.xi;
  params.validate();
  const Exponent p = options.q.conjugate();
  const NormValue bound = root(Rational(2), options.q);
  const Space space = Space::tsirelson_dual(params);
  NormEngine engine(limits);
  Rng rng(derive_seed(options.seed, "block:" + params.describe()));

  Tally estimate, witnesses;
  NormValue worst = NormValue::exact(Rational(0));
  CertifyOptions co;
  co.restarts = options.restarts;
  co.seed = options.seed;
  for (unsigned t = 0; t < options.trials; ++t) {
    VectorFamily family{space, {}};
    for (FinVec& v : random_blocks(rng, options.window, options.max_blocks)) {
      // Normalise so that the true norm is at most 1: exactly for q = 1,
      // by the upper end of the bracket otherwise.
      const NormValue n = params.exact_q() ? engine.dual_solver(params).solve(v).value
                                           : dual_norm_upper(v, params, limits);
      const Rational scale = n.is_exact() ? n.rational() : rational_from_double(n.value());
      family.vectors.emplace_back(Rational(1 / scale) * v);
    }
    const WindowReport r = window_constant(family, options.xi, p, engine, co);
    const bool ok = params.exact_q() ? leq(r.constant, bound) : r.constant.value() <= bound.value() + kSlack;
    if (greater(r.constant, worst)) worst = r.constant;
    estimate.record(ok, [&] {
      Json blocks = Json::array();
      for (const auto& y : family.vectors) blocks.push_back(to_json(y));
      return Json{{"blocks", blocks}, {"report", to_json(r)}};
    });
    if (params.exact_q()) {
      const NormValue again = witness_ratio(family, r, engine);
      witnesses.record(approx_equal(again, r.constant), [&] { return Json{{"report", to_json(r)}, {"ratio", to_json(again)}}; });
    }
  }
  Json values = estimate.json();
  values["bound"] = to_json(bound);
  values["max_constant"] = to_json(worst);
  report.add(params.exact_q() ? "window constant <= 2^(1/q) exactly" : "window constant <= 2^(1/q) + 1e-6",
             estimate.ok(), values);
  if (params.exact_q()) add_tally(report, "witness ratio reproduces the constant", witnesses);

  if (params.exact_q() && options.xi == Ordinal::finite(1)) {
    // (e_1*, e_2*, e_3*): the pair e_2*, e_3* is S_1-admissible and attains 2.
    VectorFamily family{space, {FinVec::unit(1), FinVec::unit(2), FinVec::unit(3)}};
    const WindowReport r = window_constant(family, options.xi, p, engine, co);
    report.add("pair (e_2*, e_3*) attains 2",
               r.constant.is_exact() && r.constant.rational() == 2 && r.witness_support == FinSet{2, 3},
               to_json(r));
    VectorFamily single{space, {FinVec::unit(5)}};
    const WindowReport s = window_constant(single, options.xi, p, engine, co);
    report.add("single block (e_5*) gives 1", s.constant.is_exact() && s.constant.rational() == 1, to_json(s));
  }
  return report;
}

// ---------------------------------------------------------------------------

SuiteReport verify_xm_bound(const Exponent& p, std::uint32_t m, const Ordinal& xi, std::uint32_t window,
                            std::uint64_t seed, const Limits& limits) {
  SuiteReport report;
  report.name = "xm";
  report.config = {{"p", to_json(p)}, {"m", m}, {"xi", to_json(xi)}, {"window", window}, {"seed", seed}};
  if (window < 2 * m) throw InputError("the X_m check needs window >= 2m");
  const Space space = Space::xm(p, m);
  const NormValue bound = dual_functional_norm_bound(m, p);
  NormEngine engine(limits);
  VectorFamily family{space, {}};
  for (std::uint32_t k = 1; k <= window; ++k) family.vectors.emplace_back(FinVec::unit(k));

  // E = {m+1, ..., 2m} lies in S_1, hence in S_xi for xi >= 1.
  const FinVec alpha = FinVec::constant(m + 1, 2 * m, 1);
  const NormValue ratio = divide(xm_norm(alpha, p, m), lp_norm(alpha, p));
  report.add("explicit witness {m+1..2m} reaches m^(1-1/p)", leq(bound, ratio, 1e-9),
             {{"ratio", to_json(ratio)}, {"bound", to_json(bound)},
              {"exact_match", ratio.is_exact() && bound.is_exact() && ratio.rational() == bound.rational()}});

  CertifyOptions co;
  co.seed = seed;
  co.restarts = 4;
  const WindowReport r = window_constant(family, xi, p, engine, co);
  report.add("window constant >= m^(1-1/p) - 1e-9", r.constant.value() >= bound.value() - 1e-9, to_json(r));

  const NormValue unit = xm_norm(FinVec::unit(3), p, m);
  report.add("unit vectors are normalised", unit.is_exact() ? unit.rational() == 1 : std::fabs(unit.value() - 1) < 1e-12,
             {{"norm", to_json(unit)}});

  // |f_E(x)| <= m^(1-1/p) ||x||_p on random x and random E of size m.
  Rng rng(derive_seed(seed, "xm-functionals"));
  Tally functionals, sandwich;
  for (unsigned t = 0; t < 100; ++t) {
    const FinVec x = random_vector(rng, 1, window);
    std::vector<std::uint32_t> pool;
    for (std::uint32_t n = 1; n <= window; ++n) pool.push_back(n);
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
    Rational fe(0);
    for (std::uint32_t i = 0; i < m; ++i) fe += x.get(pool[i]);
    const NormValue lhs = NormValue::exact(tslab::abs(fe));
    const NormValue xp = lp_norm(x, p);
    const NormValue rhs =
        bound.is_exact() && xp.is_exact() ? NormValue::exact(bound.rational() * xp.rational())
                                          : NormValue::approximate(bound.value() * xp.value());
    functionals.record(leq(lhs, rhs, 1e-9), [&] { return Json{{"x", to_json(x)}, {"fE", to_json(lhs)}}; });
    const NormValue xm = xm_norm(x, p, m);
    const NormValue top = bound.value() >= 1.0 ? rhs : xp;
    sandwich.record(leq(xp, xm, 1e-9) && leq(xm, top, 1e-9), [&] { return Json{{"x", to_json(x)}, {"xm", to_json(xm)}}; });
  }
  add_tally(report, "sampled |f_E(x)| / ||x||_p <= m^(1-1/p)", functionals);
  add_tally(report, "||x||_p <= ||x||_m <= max(1, m^(1-1/p)) ||x||_p", sandwich);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const Space> random_part(Rng& rng) {
  switch (rng.below(6)) {
    case 0: return std::make_shared<const Space>(Space::lp(Exponent(1L)));
    case 1: return std::make_shared<const Space>(Space::lp(Exponent(2L)));
    case 2: return std::make_shared<const Space>(Space::lp(Exponent::infinity()));
    case 3: return std::make_shared<const Space>(Space::c0());
    case 4: return std::make_shared<const Space>(Space::xm(Exponent::infinity(), 2));
    default: return std::make_shared<const Space>(Space::tsirelson_space(TsirelsonParams{}));
  }
}

Ordinal random_xi(Rng& rng) {
  switch (rng.below(3)) {
    case 0: return Ordinal::finite(1);
    case 1: return Ordinal::finite(2);
    default: return Ordinal::parse("w");
  }
}

}  // namespace

SuiteReport verify_sum_bound(unsigned configs, std::uint64_t seed, const Limits& limits) {
  SuiteReport report;
  report.name = "sum";
  report.config = {{"configs", configs}, {"seed", seed}};
  NormEngine engine(limits);
  Rng rng(derive_seed(seed, "sum"));
  Tally bound_tally;
  const std::vector<Rational> weights = {Rational(1), Rational(1, 2), Rational(1, 4), Rational(3, 4), Rational(1, 3)};
  const std::vector<Exponent> outer = {Exponent(1L), Exponent(2L), Exponent::infinity()};
  for (unsigned c = 0; c < configs; ++c) {
    const auto parts_count = static_cast<std::size_t>(rng.range(1, 3));
    std::vector<SumPart> parts;
    for (std::size_t j = 0; j < parts_count; ++j) parts.push_back({weights[rng.below(weights.size())], random_part(rng)});
    const Space space = Space::sum(outer[rng.below(outer.size())], parts);
    const Ordinal xi = random_xi(rng);
    const Exponent p = rng.coin() ? Exponent::infinity() : Exponent(1L);
    const auto K = static_cast<std::size_t>(rng.range(2, 7));
    VectorFamily family{space, {}};
    std::vector<VectorFamily> padded;
    for (const auto& part : parts) padded.push_back(VectorFamily{*part.space, {}});
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t home = rng.below(parts_count);
      SumVec y(parts_count);
      y[home] = random_vector(rng, 1, 6);
      for (std::size_t j = 0; j < parts_count; ++j) padded[j].vectors.emplace_back(y[j]);
      family.vectors.emplace_back(std::move(y));
    }
    const WindowReport whole = window_constant(family, xi, p, engine);
    std::vector<Rational> exact_terms;
    std::vector<double> terms;
    bool exact = true;
    Json comps = Json::array();
    for (std::size_t j = 0; j < parts_count; ++j) {
      const WindowReport cj = window_constant(padded[j], xi, p, engine);
      comps.push_back(to_json(cj.constant));
      terms.push_back(parts[j].weight.get_d() * (cj.constant.value() + cj.constant.tolerance()));
      if (cj.constant.is_exact())
        exact_terms.push_back(parts[j].weight * cj.constant.rational());
      else
        exact = false;
    }
    const NormValue bound =
        exact ? lp_norm(exact_terms, space.p) : NormValue::approximate(lp_norm(terms, space.p));
    bound_tally.record(leq(whole.constant, bound, kSlack), [&] {
      return Json{{"space", to_json(space)}, {"xi", to_json(xi)}, {"p", to_json(p)},
                  {"constant", to_json(whole.constant)}, {"components", comps}, {"bound", to_json(bound)}};
    });
  }
  add_tally(report, "window constant <= ||(w_j C_j)||_q + 1e-6", bound_tally);

  // Two copies of the orthonormal ell_2 family with weights 1/2 and 1/4.
  {
    auto l2 = std::make_shared<const Space>(Space::lp(Exponent(2L)));
    const Space space = Space::sum(Exponent(2L), {{Rational(1, 2), l2}, {Rational(1, 4), l2}});
    VectorFamily family{space, {}};
    for (std::uint32_t k = 1; k <= 8; ++k) {
      SumVec y(2);
      y[k <= 4 ? 0 : 1] = FinVec::unit(k);
      family.vectors.emplace_back(std::move(y));
    }
    CertifyOptions co;
    co.seed = seed;
    co.restarts = 4;
    const WindowReport r = window_constant(family, Ordinal::finite(1), Exponent(2L), engine, co);
    const double bound = std::sqrt(5.0) / 4.0;
    report.add("two weighted l_2 copies stay below sqrt(5)/4", r.constant.value() <= bound + kSlack,
               {{"report", to_json(r)}, {"bound", bound}});
  }
  // An X_4 family next to an always-zero component keeps its constant.
  {
    auto x4 = std::make_shared<const Space>(Space::xm(Exponent::infinity(), 4));
    const Space space = Space::sum(Exponent(2L), {{Rational(1), x4}, {Rational(1), x4}});
    VectorFamily family{space, {}};
    VectorFamily alone{*x4, {}};
    for (std::uint32_t k = 1; k <= 8; ++k) {
      family.vectors.emplace_back(SumVec{FinVec::unit(k), FinVec()});
      alone.vectors.emplace_back(FinVec::unit(k));
    }
    const WindowReport a = window_constant(family, Ordinal::finite(1), Exponent::infinity(), engine);
    const WindowReport b = window_constant(alone, Ordinal::finite(1), Exponent::infinity(), engine);
    report.add("zero-padding component leaves the constant unchanged", approx_equal(a.constant, b.constant),
               {{"padded", to_json(a.constant)}, {"alone", to_json(b.constant)}});
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

Space random_space(Rng& rng) {
  switch (rng.below(7)) {
    case 0: return Space::lp(Exponent(1L));
    case 1: return Space::lp(Exponent(2L));
    case 2: return Space::lp(Exponent::infinity());
    case 3: return Space::c0();
    case 4: return Space::xm(Exponent(2L), 3);
    case 5: return Space::xm(Exponent::infinity(), 2);
    default: return Space::tsirelson_space(TsirelsonParams{});
  }
}

VectorFamily random_family(Rng& rng, const Space& space, std::size_t K) {
  VectorFamily f{space, {}};
  for (std::size_t k = 0; k < K; ++k) f.vectors.emplace_back(random_vector(rng, 1, 6));
  return f;
}

VectorFamily scaled(const VectorFamily& f, const std::vector<Rational>& factors) {
  VectorFamily out{f.space, {}};
  for (std::size_t k = 0; k < f.vectors.size(); ++k)
    out.vectors.emplace_back(factors[k] * std::get<FinVec>(f.vectors[k]));
  return out;
}

}  // namespace

SuiteReport verify_monotonicity(unsigned families, std::uint64_t seed, const Limits& limits) {
  SuiteReport report;
  report.name = "mono";
  report.config = {{"families", families}, {"seed", seed}};
  NormEngine engine(limits);
  Rng rng(derive_seed(seed, "mono"));
  Tally ordering, subadditive, scaling, decay;
  CertifyOptions heuristic;
  heuristic.restarts = 2;
  heuristic.seed = seed;
  const Exponent one(1L), two(2L), inf = Exponent::infinity();
  for (unsigned t = 0; t < families; ++t) {
    const Space space = random_space(rng);
    const Ordinal xi = Ordinal::finite(1 + static_cast<std::uint32_t>(rng.below(2)));
    const auto K = static_cast<std::size_t>(rng.range(3, 6));
    const VectorFamily y = random_family(rng, space, K);
    const VectorFamily z = random_family(rng, space, K);
    auto describe = [&] { return Json{{"space", to_json(space)}, {"xi", to_json(xi)}, {"K", K}, {"trial", t}}; };

    const WindowReport c1 = window_constant(y, xi, one, engine);
    const WindowReport c2 = window_constant(y, xi, two, engine, heuristic);
    const WindowReport ci = window_constant(y, xi, inf, engine);
    ordering.record(leq(c1.constant, c2.constant, kSlack) && leq(c2.constant, ci.constant, kSlack) &&
                        leq(c1.constant, ci.constant),
                    [&] {
                      Json j = describe();
                      j["C_1"] = to_json(c1.constant);
                      j["C_2"] = to_json(c2.constant);
                      j["C_inf"] = to_json(ci.constant);
                      return j;
                    });

    VectorFamily sum{space, {}};
    for (std::size_t k = 0; k < K; ++k)
      sum.vectors.emplace_back(std::get<FinVec>(y.vectors[k]) + std::get<FinVec>(z.vectors[k]));
    for (const Exponent& p : {one, inf}) {
      const WindowReport a = window_constant(sum, xi, p, engine);
      const WindowReport b = p.is_one() ? c1 : ci;
      const WindowReport c = window_constant(z, xi, p, engine);
      const NormValue rhs = b.constant.is_exact() && c.constant.is_exact()
                                ? NormValue::exact(b.constant.rational() + c.constant.rational())
                                : NormValue::approximate(b.constant.value() + c.constant.value(),
                                                         b.constant.tolerance() + c.constant.tolerance());
      subadditive.record(leq(a.constant, rhs, kSlack), [&] {
        Json j = describe();
        j["p"] = to_json(p);
        j["C_sum"] = to_json(a.constant);
        j["C_y_plus_C_z"] = to_json(rhs);
        return j;
      });
    }

    const Rational c = random_rational(rng);
    const WindowReport s = window_constant(scaled(y, std::vector<Rational>(K, c)), xi, inf, engine);
    const NormValue expected = scale(ci.constant, c);
    scaling.record(approx_equal(s.constant, expected), [&] {
      Json j = describe();
      j["c"] = tslab::to_string(c);
      j["C_cy"] = to_json(s.constant);
      j["c_C_y"] = to_json(expected);
      return j;
    });

    // ||y_k|| <= eps 2^-k, using ||y_k||_1 as a rational upper bound of
    // every norm in the pool.
    const Rational eps = Rational(1, 1 + static_cast<long>(rng.below(4)));
    std::vector<Rational> factors;
    for (std::size_t k = 0; k < K; ++k) {
      const Rational n1 = lp_norm(std::get<FinVec>(y.vectors[k]), one).rational();
      factors.push_back(eps / (n1 * pow(Rational(2), static_cast<unsigned>(k + 1))));
    }
    const VectorFamily small = scaled(y, factors);
    for (const Exponent& p : {one, two, inf}) {
      const WindowReport r = p == two ? window_constant(small, xi, p, engine, heuristic) : window_constant(small, xi, p, engine);
      std::vector<Rational> geometric;
      for (std::size_t k = 0; k < K; ++k) geometric.push_back(eps / pow(Rational(2), static_cast<unsigned>(k + 1)));
      const NormValue bound = lp_norm(geometric, p.conjugate());
      decay.record(leq(r.constant, bound, kSlack), [&] {
        Json j = describe();
        j["p"] = to_json(p);
        j["constant"] = to_json(r.constant);
        j["bound"] = to_json(bound);
        return j;
      });
    }
  }
  add_tally(report, "C_1 <= C_2 <= C_inf", ordering);
  add_tally(report, "C(y + z) <= C(y) + C(z)", subadditive);
  add_tally(report, "C(c y) = |c| C(y)", scaling);
  add_tally(report, "geometric decay bound", decay);

  // The X_4 family: C_1 = max ||e_k||_m = 1 <= C_inf.
  VectorFamily x4{Space::xm(Exponent(2L), 4), {}};
  for (std::uint32_t k = 1; k <= 8; ++k) x4.vectors.emplace_back(FinVec::unit(k));
  const WindowReport a = window_constant(x4, Ordinal::finite(1), one, engine);
  const WindowReport b = window_constant(x4, Ordinal::finite(1), inf, engine);
  report.add("X_4 family: C_1 = 1 <= C_inf", a.constant.is_exact() && a.constant.rational() == 1 && leq(a.constant, b.constant),
             {{"C_1", to_json(a.constant)}, {"C_inf", to_json(b.constant)}});
  return report;
}

// ---------------------------------------------------------------------------

SuiteReport separation_demo(const Exponent& q, const Ordinal& xi, std::uint32_t window, std::uint64_t seed,
                            const Limits& limits) {
  SuiteReport report;
  report.name = "sep";
  report.config = {{"q", to_json(q)}, {"xi", to_json(xi)}, {"window", window}, {"seed", seed}};
  TsirelsonParams params;
  params.q = q;
  params.xi = xi;
  params.validate();
  require_within(window, limits.max_support, "separation window");
  const Space space = Space::tsirelson_dual(params);
  const Exponent p = q.conjugate();
  NormEngine engine(limits);
  VectorFamily family{space, {}};
  for (std::uint32_t k = 1; k <= window; ++k) family.vectors.emplace_back(FinVec::unit(k));
  CertifyOptions co;
  co.seed = seed;
  co.restarts = 4;
  const WindowReport restricted = window_constant(family, xi, p, engine, co);
  const WindowReport full = window_constant(family, Ordinal::omega1(), p, engine, co);
  const NormValue bound = root(Rational(2), q);

  const bool exact = params.exact_q();
  report.add("restricted constant <= 2^(1/q)", exact ? leq(restricted.constant, bound) : leq(restricted.constant, bound, kSlack),
             {{"restricted", to_json(restricted)}, {"bound", to_json(bound)}});
  const FinVec ones = FinVec::constant(1, window, 1);
  const NormValue ones_norm = divide(engine.norm(space, ones), lp_norm(ones, p));
  report.add("unrestricted constant >= ||ones*|| / ||ones||_p",
             exact ? leq(ones_norm, full.constant) : leq(ones_norm, full.constant, kSlack),
             {{"unrestricted", to_json(full)}, {"ones_ratio", to_json(ones_norm)}});
  report.checks.back().values["strictly_separated"] = greater(full.constant, restricted.constant);

  Rng rng(derive_seed(seed, "sep-lower"));
  Tally lower;
  for (unsigned t = 0; t < 20; ++t) {
    const FinVec alpha = random_vector(rng, 1, window);
    const NormValue lhs = engine.norm(space, alpha);
    const NormValue rhs = lp_norm(alpha, p);
    const bool ok = exact ? leq(rhs, lhs) : rhs.value() <= lhs.value() + lhs.tolerance() + kSlack;
    lower.record(ok, [&] { return Json{{"alpha", to_json(alpha)}, {"norm", to_json(lhs)}, {"lp", to_json(rhs)}}; });
  }
  add_tally(report, "||sum alpha_k e_k*|| >= ||alpha||_p", lower);
  return report;
}

std::vector<SuiteReport> run_all(std::uint64_t seed, const Limits& limits) {
  std::vector<SuiteReport> out;
  out.push_back(verify_schreier(12, limits));
  out.push_back(verify_fixed_point(200, seed, limits));
  out.push_back(verify_convexification(100, seed, limits));
  out.push_back(verify_dual(30, seed, limits));
  BlockOptions b1;
  b1.seed = seed;
  out.push_back(verify_block_estimate(b1, limits));
  BlockOptions b2;
  b2.q = Exponent(2L);
  b2.trials = 20;
  b2.window = 10;
  b2.max_blocks = 4;
  b2.restarts = 2;
  b2.seed = seed;
  out.push_back(verify_block_estimate(b2, limits));
  out.push_back(verify_xm_bound(Exponent(2L), 4, Ordinal::finite(1), 16, seed, limits));
  out.push_back(verify_xm_bound(Exponent(1L), 5, Ordinal::finite(1), 10, seed, limits));
  out.push_back(verify_xm_bound(Exponent::infinity(), 3, Ordinal::finite(1), 8, seed, limits));
  out.push_back(verify_sum_bound(20, seed, limits));
  out.push_back(verify_monotonicity(50, seed, limits));
  for (std::uint32_t K : {1u, 3u, 8u}) out.push_back(separation_demo(Exponent(1L), Ordinal::finite(1), K, seed, limits));
  return out;
}

}  // namespace tslab
