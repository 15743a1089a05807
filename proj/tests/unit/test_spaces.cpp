#include <doctest.h>

#include <memory>

#include "tslab/errors.hpp"
#include "tslab/rng.hpp"
#include "tslab/spaces.hpp"

using tslab::Exponent;
using tslab::FinVec;
using tslab::Rational;
using tslab::Space;

namespace {

std::shared_ptr<const Space> share(Space s) { return std::make_shared<const Space>(std::move(s)); }

FinVec from(std::initializer_list<std::pair<std::uint32_t, long>> entries) {
  FinVec v;
  for (auto [k, x] : entries) v.set(k, Rational(x));
  return v;
}

}  // namespace

TEST_SUITE("spaces") {
  TEST_CASE("norm examples") {
    CHECK(tslab::norm(Space::lp(Exponent(2L)), FinVec::unit(7)).rational() == 1);
    CHECK(tslab::norm(Space::lp(Exponent(1L)), from({{1, 3}, {2, -4}})).rational() == 7);
    const Space sum = Space::sum(Exponent(2L), {{1, share(Space::lp(Exponent(2L)))}, {1, share(Space::lp(Exponent(2L)))}});
    CHECK(tslab::norm(sum, tslab::SumVec{from({{1, 3}}), from({{1, 4}})}).rational() == 5);
    CHECK(tslab::norm(Space::c0(), from({{1, 3}, {2, -4}})).rational() == 4);
  }

  TEST_CASE("X_m examples") {
    CHECK(tslab::xm_norm(FinVec::unit(1), Exponent(2L), 4).rational() == 1);
    CHECK(tslab::xm_norm(FinVec::constant(1, 4, 1), Exponent(2L), 4).rational() == 4);
    CHECK(tslab::xm_norm(FinVec::constant(1, 4, 1), Exponent(2L), 2).rational() == 2);
    // Zeros outside the support fill the set E: |3 + 0| beats |3 - 2|.
    CHECK(tslab::xm_norm(from({{1, 3}, {2, -2}}), Exponent::infinity(), 2).rational() == 3);
    CHECK(tslab::xm_norm(from({{1, 3}, {2, -2}}), Exponent(1L), 2).rational() == 5);
    for (std::uint32_t n = 1; n <= 20; ++n) CHECK(tslab::xm_norm(FinVec::unit(n), Exponent(3L), 5).rational() == 1);
  }

  TEST_CASE("functional bound examples") {
    CHECK(tslab::dual_functional_norm_bound(4, Exponent(2L)).rational() == 2);
    CHECK(tslab::dual_functional_norm_bound(9, Exponent(1L)).rational() == 1);
    CHECK(tslab::dual_functional_norm_bound(5, Exponent::infinity()).rational() == 5);
    CHECK(tslab::dual_functional_norm_bound(2, Exponent(2L)).value() == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("validation and shapes") {
    CHECK_THROWS_AS(Space::xm(Exponent(2L), 0).validate(), tslab::InputError);
    const Space inner = Space::sum(Exponent(1L), {{1, share(Space::c0())}});
    CHECK_THROWS_AS(Space::sum(Exponent(1L), {{1, share(inner)}}).validate(), tslab::InputError);
    CHECK_THROWS_AS(Space::sum(Exponent(1L), {{-1, share(Space::c0())}}).validate(), tslab::InputError);
    CHECK_THROWS_AS(tslab::check_shape(inner, FinVec::unit(1)), tslab::InputError);
    CHECK_THROWS_AS(tslab::check_shape(inner, tslab::SumVec{FinVec(), FinVec()}), tslab::InputError);
    CHECK_THROWS_AS(tslab::check_shape(Space::c0(), tslab::SumVec{FinVec()}), tslab::InputError);
    CHECK_NOTHROW(tslab::check_shape(inner, tslab::SumVec{FinVec::unit(2)}));
  }

  TEST_CASE("space predicates") {
    CHECK(Space::lp(Exponent(2L)).unconditional());
    CHECK(Space::xm(Exponent(2L), 1).unconditional());
    CHECK_FALSE(Space::xm(Exponent(2L), 3).unconditional());
    CHECK(Space::xm(Exponent(2L), 3).permutation_invariant());
    tslab::TsirelsonParams t;
    CHECK_FALSE(Space::tsirelson_space(t).permutation_invariant());
    CHECK(Space::tsirelson_dual(t).evaluable());
    t.q = Exponent(2L);
    CHECK_FALSE(Space::tsirelson_dual(t).evaluable());
    CHECK(Space::tsirelson_space(t).evaluable());
  }

  TEST_CASE("combine") {
    const Space l1 = Space::lp(Exponent(1L));
    const auto c = tslab::combine(l1, {FinVec::unit(1), FinVec::unit(2)}, {Rational(2), Rational(-1)});
    CHECK(std::get<FinVec>(c) == from({{1, 2}, {2, -1}}));
    const Space sum = Space::sum(Exponent(1L), {{1, share(l1)}, {1, share(l1)}});
    const auto s = tslab::combine(sum, {tslab::SumVec{FinVec::unit(1), FinVec()}, tslab::SumVec{FinVec(), FinVec::unit(1)}},
                                  {Rational(3), Rational(4)});
    CHECK(tslab::norm(sum, s).rational() == 7);
  }

  TEST_CASE("dual norms through the engine") {
    tslab::TsirelsonParams t;
    tslab::NormEngine engine;
    CHECK(engine.norm(Space::tsirelson_dual(t), FinVec::constant(2, 3, 1)).rational() == 2);
    t.q = Exponent(2L);
    const auto v = engine.norm(Space::tsirelson_dual(t), FinVec::unit(4));
    CHECK(v.kind() == tslab::NormValue::Kind::lower_bound);
    CHECK(v.value() == doctest::Approx(1.0));
    CHECK(v.tolerance() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS(engine.approx_norm(Space::tsirelson_dual(t), tslab::to_approx(Space::tsirelson_dual(t), FinVec::unit(1))));
  }

  TEST_CASE("property: triangle inequality, homogeneity and approximate agreement") {
    tslab::Rng rng(17);
    tslab::TsirelsonParams t;
    const std::vector<Space> spaces = {Space::lp(Exponent(1L)), Space::lp(Exponent(3L)), Space::c0(),
                                       Space::xm(Exponent(2L), 3), Space::tsirelson_space(t)};
    tslab::NormEngine engine;
    for (int trial = 0; trial < 200; ++trial) {
      const Space& space = spaces[static_cast<std::size_t>(trial) % spaces.size()];
      FinVec x, y;
      for (std::uint32_t n = 1; n <= 9; ++n) {
        if (rng.below(2)) x.set(n, tslab::ratio(rng.range(-6, 6), rng.range(1, 3)));
        if (rng.below(2)) y.set(n, tslab::ratio(rng.range(-6, 6), rng.range(1, 3)));
      }
      const auto nx = engine.norm(space, x);
      const auto ny = engine.norm(space, y);
      const auto nxy = engine.norm(space, x + y);
      CHECK(nxy.value() <= nx.value() + ny.value() + 1e-9);
      const Rational c(rng.range(-5, 5), 2);
      CHECK(engine.norm(space, c * x).value() == doctest::Approx(tslab::to_double(abs(c)) * nx.value()).epsilon(1e-9));
      CHECK(engine.approx_norm(space, tslab::to_approx(space, x)) == doctest::Approx(nx.value()).epsilon(1e-9));
      CHECK(nx.value() >= tslab::lp_norm(x, Exponent::infinity()).value() - 1e-12);
    }
  }
}
