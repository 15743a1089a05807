#include <doctest.h>

#include "oracles.hpp"
#include "tslab/errors.hpp"
#include "tslab/rng.hpp"
#include "tslab/schreier.hpp"
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

FinVec random_vector(tslab::Rng& rng, std::uint32_t last, std::uint32_t first = 1) {
  FinVec v;
  for (std::uint32_t n = first; n <= last; ++n)
    if (rng.below(3)) v.set(n, tslab::ratio(rng.range(-7, 7), rng.range(1, 4)));
  return v;
}

}  // namespace

TEST_SUITE("tsirelson") {
  TEST_CASE("norm examples") {
    CHECK(tslab::t_norm(FinVec::unit(5), params()).rational() == 1);
    CHECK(tslab::t_norm(FinVec::constant(2, 3, 1), params()).rational() == 1);
    CHECK(tslab::t_norm(FinVec::constant(9, 16, 1), params()).rational() == 4);
    CHECK(tslab::t_norm(FinVec::constant(2, 3, 1), params(1, 2)).value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tslab::t_norm(FinVec(), params()).rational() == 0);
    CHECK(tslab::t_norm(FinVec::constant(1, 8, 1), params()).rational() == 2);
  }

  TEST_CASE("families may skip the beginning of the support") {
    // {3,4,5} alone is admissible and carries 3/2; covering partitions
    // starting at index 1 cannot see it.
    FinVec x;
    for (std::uint32_t n : {1u, 3u, 4u, 5u}) x.set(n, 1);
    CHECK(tslab::t_norm(x, params()).rational() == Rational(3, 2));
  }

  TEST_CASE("convexification examples") {
    auto p = params(1, 2);
    CHECK(tslab::t_norm_via_convexification(FinVec::unit(3), p).rational() == 1);
    CHECK(tslab::t_norm_via_convexification(FinVec::constant(2, 3, 1), p).rational() == 1);
    CHECK(tslab::t_norm_via_convexification(Rational(2) * FinVec::unit(2), p).rational() == 2);
  }

  TEST_CASE("parameter validation") {
    TsirelsonParams p;
    p.theta = 1;
    CHECK_THROWS_AS(tslab::t_norm(FinVec::unit(1), p), tslab::InputError);
    p = params();
    p.q = tslab::Exponent::infinity();
    CHECK_THROWS_AS(tslab::t_norm(FinVec::unit(1), p), tslab::InputError);
    p = params();
    p.xi = Ordinal::omega1();
    CHECK_THROWS_AS(tslab::t_norm(FinVec::unit(1), p), tslab::InputError);
    CHECK_THROWS_AS(tslab::t_norm(FinVec::constant(1, 17, 1), params()), tslab::LimitError);
  }

  TEST_CASE("residual of the implicit equation") {
    tslab::Rng rng(21);
    for (int t = 0; t < 40; ++t) {
      const FinVec x = random_vector(rng, 8);
      CHECK(tslab::fixed_point_residual(tslab::evaluate_tsirelson(x, params(1 + t % 2))).rational() == 0);
      CHECK(tslab::fixed_point_residual(tslab::evaluate_tsirelson(x, params(1, 2))).value() <= 1e-9);
    }
    CHECK(tslab::fixed_point_residual(tslab::evaluate_tsirelson(FinVec(), params())).rational() == 0);
    // A wrong value shows up in the residual.
    const FinVec x = FinVec::constant(1, 8, 1);
    CHECK(tslab::fixed_point_residual(x, params(), tslab::NormValue::exact(Rational(3))).rational() == 1);
  }

  TEST_CASE("oracle: slice recursion equals the subset-block recursion") {
    tslab::Rng rng(8);
    for (const char* xi : {"1", "2", "w", "0"}) {
      TsirelsonParams p;
      p.xi = Ordinal::parse(xi);
      if (p.xi.is_zero()) continue;
      for (int t = 0; t < 60; ++t) {
        const FinVec x = random_vector(rng, 1 + static_cast<std::uint32_t>(rng.range(3, 9)), 1 + static_cast<std::uint32_t>(rng.below(3)));
        if (x.size() > 7) continue;
        oracle::SubsetBlockNorm slow(x, p);
        REQUIRE_MESSAGE(tslab::t_norm(x, p).rational() == slow.value(), x.to_string(), " xi=", xi);
      }
    }
    oracle::SubsetBlockNorm ones(FinVec::constant(1, 7, 1), params());
    CHECK(tslab::t_norm(FinVec::constant(1, 7, 1), params()).rational() == ones.value());
  }

  TEST_CASE("oracle: depth-capped recursion equals the iterates ||.||_n") {
    tslab::Rng rng(9);
    for (int t = 0; t < 40; ++t) {
      const FinVec x = random_vector(rng, 7);
      for (unsigned n = 0; n <= 3; ++n) {
        TsirelsonParams p = params(1 + t % 2);
        p.max_depth = n;
        oracle::SubsetBlockNorm slow(x, p, n);
        REQUIRE_MESSAGE(tslab::t_norm(x, p).rational() == slow.value(), x.to_string(), " n=", n);
      }
      // The iterates stabilise at the fixed point.
      TsirelsonParams deep = params(1 + t % 2);
      deep.max_depth = 8;
      CHECK(tslab::t_norm(x, deep).rational() == tslab::t_norm(x, params(1 + t % 2)).rational());
    }
  }

  TEST_CASE("norming functionals") {
    tslab::Rng rng(4);
    const auto set = tslab::functional_set(6, params());
    for (int t = 0; t < 60; ++t) {
      const FinVec x = random_vector(rng, 6);
      const auto ev = tslab::evaluate_tsirelson(x, params());
      REQUIRE(ev.norming_functional);
      CHECK(ev.norming_functional->dot(x) == ev.value.rational());
      CHECK(set.contains(*ev.norming_functional));
      CHECK(set.evaluate(x).rational() == ev.value.rational());
    }
  }

  TEST_CASE("functional set examples") {
    const auto one = tslab::functional_set(1, params());
    REQUIRE(one.functionals.size() == 1);
    CHECK(one.functionals[0] == FinVec::unit(1));
    const auto three = tslab::functional_set(3, params());
    CHECK(three.contains(Rational(1, 2) * FinVec::constant(2, 3, 1)));
    CHECK(three.contains(Rational(-1, 2) * FinVec::constant(2, 3, 1)));
    CHECK(three.evaluate(FinVec::constant(2, 3, 1)).rational() == 1);
    CHECK_THROWS_AS(tslab::functional_set(11, params()), tslab::LimitError);
    CHECK_THROWS_AS(tslab::functional_set(4, params(1, 2)), tslab::InputError);
  }

  TEST_CASE("enlarging the functional window keeps norms") {
    tslab::Rng rng(6);
    const auto small = tslab::functional_set(5, params(2));
    const auto large = tslab::functional_set(7, params(2));
    for (int t = 0; t < 40; ++t) {
      const FinVec x = random_vector(rng, 5);
      CHECK(small.evaluate(x).rational() == large.evaluate(x).rational());
    }
  }

  TEST_CASE("property: sandwich, unconditionality and convexification") {
    tslab::Rng rng(12);
    for (int t = 0; t < 100; ++t) {
      const FinVec x = random_vector(rng, 9);
      const auto p1 = params(1 + t % 2);
      const Rational n = tslab::t_norm(x, p1).rational();
      CHECK(tslab::lp_norm(x, tslab::Exponent::infinity()).rational() <= n);
      CHECK(n <= tslab::lp_norm(x, tslab::Exponent(1L)).rational());
      FinVec y = x;
      for (const auto& [k, v] : x.entries()) {
        const auto roll = rng.below(3);
        if (roll == 0) y.set(k, -v);
        if (roll == 1) y.set(k, 0);
      }
      CHECK(tslab::t_norm(y, p1).rational() <= n);

      const auto p2 = params(1 + t % 2, 2);
      const double direct = tslab::t_norm(x, p2).value();
      CHECK(direct == doctest::Approx(tslab::t_norm_via_convexification(x, p2).value()).epsilon(1e-12));
      CHECK(direct <= tslab::lp_norm(x, tslab::Exponent(2L)).value() + 1e-12);
      CHECK(direct == doctest::Approx(tslab::t_norm_approx(tslab::to_approx(x), p2)).epsilon(1e-12));
    }
  }

  TEST_CASE("theta other than one half") {
    TsirelsonParams p = params();
    p.theta = Rational(1, 3);
    CHECK(tslab::t_norm(FinVec::constant(9, 11, 1), p).rational() == 1);
    oracle::SubsetBlockNorm slow(FinVec::constant(3, 8, 1), p);
    CHECK(tslab::t_norm(FinVec::constant(3, 8, 1), p).rational() == slow.value());
  }
}
