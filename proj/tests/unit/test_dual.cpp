#include <doctest.h>

#include "tslab/errors.hpp"
#include "tslab/rng.hpp"
#include "tslab/simplex.hpp"
#include "tslab/tsirelson.hpp"

using tslab::FinVec;
using tslab::Ordinal;
using tslab::Rational;
using tslab::TsirelsonParams;

namespace {

TsirelsonParams params(unsigned xi = 1, long q = 1) {
  TsirelsonParams p;
  p.xi = Ordinal::finite(xi);
  p.q = tslab::Exponent(q);
  return p;
}

// max |x*|.y over y >= 0 with f.y <= 1 for every listed functional.
Rational full_lp(const FinVec& xstar, const tslab::FunctionalSet& set) {
  const auto support = xstar.support();
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : set.functionals) {
    std::vector<Rational> row;
    for (auto n : support) row.push_back(f.get(n));
    rows.push_back(row);
  }
  std::vector<Rational> objective;
  for (auto n : support) objective.push_back(abs(xstar.get(n)));
  return tslab::solve_packing_lp(rows, std::vector<Rational>(rows.size(), Rational(1)), objective).value;
}

FinVec random_functional(tslab::Rng& rng, std::uint32_t last) {
  FinVec v;
  for (std::uint32_t n = 1; n <= last; ++n)
    if (rng.below(2)) v.set(n, tslab::ratio(rng.range(-5, 5), rng.range(1, 3)));
  return v;
}

}  // namespace

TEST_SUITE("dual") {
  TEST_CASE("dual norm examples") {
    CHECK(tslab::dual_norm(FinVec::unit(4), params()).value.rational() == 1);
    CHECK(tslab::dual_norm(FinVec::constant(2, 3, 1), params()).value.rational() == 2);
    CHECK(tslab::dual_norm(FinVec::constant(1, 3, 1), params()).value.rational() == 3);
    CHECK(tslab::dual_norm(FinVec(), params()).value.rational() == 0);
  }

  TEST_CASE("oracle: cutting planes agree with the LP over the whole norming set") {
    tslab::Rng rng(5);
    for (unsigned xi : {1u, 2u}) {
      const auto set = tslab::functional_set(7, params(xi));
      tslab::DualSolver solver(params(xi));
      for (int t = 0; t < 25; ++t) {
        const FinVec xstar = random_functional(rng, 7);
        const auto result = solver.solve(xstar);
        REQUIRE_MESSAGE(result.value.rational() == full_lp(xstar, set), xstar.to_string());
      }
    }
  }

  TEST_CASE("witness and certificate") {
    tslab::Rng rng(15);
    tslab::DualSolver solver(params());
    for (int t = 0; t < 20; ++t) {
      const FinVec xstar = random_functional(rng, 10);
      const auto r = solver.solve(xstar);
      if (xstar.empty()) continue;
      CHECK(tslab::t_norm(r.witness, params()).rational() == 1);
      CHECK(xstar.dot(r.witness) == r.value.rational());
      Rational total(0);
      FinVec cover;
      for (const auto& [f, lambda] : r.certificate) {
        CHECK(lambda >= 0);
        // Each row is a norming functional: it never exceeds the norm.
        CHECK(f.dot(r.witness) <= 1);
        total += lambda;
        cover += lambda * f;
      }
      CHECK(total == r.value.rational());
      for (const auto& [n, v] : xstar.entries()) CHECK(cover.get(n) >= abs(v));
    }
  }

  TEST_CASE("results do not depend on the constraint pool") {
    tslab::Rng rng(3);
    tslab::DualSolver shared(params());
    for (int t = 0; t < 15; ++t) {
      const FinVec xstar = random_functional(rng, 9);
      CHECK(shared.solve(xstar).value.rational() == tslab::dual_norm(xstar, params()).value.rational());
    }
  }

  TEST_CASE("dual sandwich") {
    tslab::Rng rng(2);
    for (int t = 0; t < 20; ++t) {
      const FinVec xstar = random_functional(rng, 9);
      const Rational v = tslab::dual_norm(xstar, params(2)).value.rational();
      CHECK(tslab::lp_norm(xstar, tslab::Exponent::infinity()).rational() <= v);
      CHECK(v <= tslab::lp_norm(xstar, tslab::Exponent(1L)).rational());
    }
  }

  TEST_CASE("brackets") {
    tslab::Rng rng(10);
    for (int t = 0; t < 15; ++t) {
      const FinVec xstar = random_functional(rng, 8);
      const auto exact = tslab::dual_norm(xstar, params()).value;
      const auto b1 = tslab::dual_norm_bracket(xstar, params(), {4, 1});
      CHECK(tslab::leq(b1.lower, exact));
      CHECK(tslab::leq(exact, b1.upper));

      const auto b2 = tslab::dual_norm_bracket(xstar, params(1, 2), {4, 1});
      CHECK(b2.lower.value() <= b2.upper.value() + 1e-9);
      // ||x*||_2 <= ||x*||_{T_2*} <= ||x*||_1.
      CHECK(tslab::lp_norm(xstar, tslab::Exponent(2L)).value() <= b2.lower.value() + 1e-9);
      CHECK(b2.upper.value() <= tslab::lp_norm(xstar, tslab::Exponent(1L)).value() + 1e-9);
      if (!xstar.empty()) {
        const double ratio = tslab::to_double(xstar.dot(b2.witness)) / tslab::t_norm(b2.witness, params(1, 2)).value();
        CHECK(ratio == doctest::Approx(b2.lower.value()).epsilon(1e-9));
      }
    }
    const auto unit = tslab::dual_norm_bracket(FinVec::unit(3), params(1, 2));
    CHECK(unit.lower.value() == doctest::Approx(1.0));
    CHECK(unit.upper.value() == doctest::Approx(1.0));
  }

  TEST_CASE("exact dual needs q = 1 and no depth cap") {
    CHECK_THROWS_AS(tslab::DualSolver(params(1, 2)), tslab::InputError);
    TsirelsonParams capped = params();
    capped.max_depth = 2;
    CHECK_THROWS_AS(tslab::dual_norm(FinVec::unit(1), capped), tslab::InputError);
    CHECK_THROWS_AS(tslab::dual_norm(FinVec::constant(1, 17, 1), params()), tslab::LimitError);
  }
}
