#include <doctest.h>

#include <memory>

#include "tslab/errors.hpp"
#include "tslab/estimates.hpp"
#include "tslab/rng.hpp"

using tslab::CertifyMode;
using tslab::CertifyOptions;
using tslab::Exponent;
using tslab::FinVec;
using tslab::Ordinal;
using tslab::Rational;
using tslab::Space;
using tslab::VectorFamily;

namespace {

VectorFamily units(Space space, std::uint32_t k) {
  VectorFamily f{std::move(space), {}};
  for (std::uint32_t n = 1; n <= k; ++n) f.vectors.emplace_back(FinVec::unit(n));
  return f;
}

VectorFamily dual_units(std::uint32_t k) { return units(Space::tsirelson_dual(tslab::TsirelsonParams{}), k); }

}  // namespace

TEST_SUITE("estimates") {
  TEST_CASE("orthonormal family in l2") {
    CertifyOptions o;
    o.restarts = 4;
    const auto r = tslab::window_constant(units(Space::lp(Exponent(2L)), 8), Ordinal::finite(1), Exponent(2L), o);
    CHECK(r.mode == CertifyMode::heuristic);
    CHECK(r.constant.value() == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("X_4 family") {
    CertifyOptions o;
    o.restarts = 4;
    const auto family = units(Space::xm(Exponent(2L), 4), 16);
    const auto r = tslab::window_constant(family, Ordinal::finite(1), Exponent(2L), o);
    CHECK(r.constant.value() >= 2.0 - 1e-9);
    tslab::NormEngine engine;
    CHECK(tslab::witness_ratio(family, r, engine).value() == doctest::Approx(r.constant.value()).epsilon(1e-9));
    CHECK(tslab::is_member(r.witness_support, Ordinal::finite(1)));

    const auto one = tslab::window_constant(family, Ordinal::finite(1), Exponent(1L));
    CHECK(one.mode == CertifyMode::exact);
    CHECK(one.constant.rational() == 1);
  }

  TEST_CASE("unit functionals of the Tsirelson dual") {
    const auto restricted = tslab::window_constant(dual_units(3), Ordinal::finite(1), Exponent::infinity());
    CHECK(restricted.mode == CertifyMode::exact);
    CHECK(restricted.constant.rational() == 2);
    const auto full = tslab::window_constant(dual_units(3), Ordinal::omega1(), Exponent::infinity());
    CHECK(full.constant.rational() == 3);
    CHECK(full.witness_support == tslab::FinSet({1, 2, 3}));
    CHECK(tslab::window_constant(dual_units(1), Ordinal::finite(1), Exponent::infinity()).constant.rational() == 1);
  }

  TEST_CASE("maximal supports give the same constant as all supports") {
    tslab::Rng rng(44);
    tslab::TsirelsonParams tp;
    const std::vector<Space> spaces = {Space::lp(Exponent(2L)), Space::xm(Exponent(1L), 2), Space::tsirelson_space(tp)};
    for (int t = 0; t < 9; ++t) {
      VectorFamily f{spaces[static_cast<std::size_t>(t) % spaces.size()], {}};
      for (std::uint32_t k = 1; k <= 7; ++k) {
        FinVec v;
        for (std::uint32_t n = 1; n <= 8; ++n)
          if (rng.below(3) == 0) v.set(n, Rational(rng.range(-3, 3)));
        f.vectors.emplace_back(v);
      }
      for (const auto& xi : {Ordinal::finite(1), Ordinal::finite(2)}) {
        CertifyOptions all;
        all.all_supports = true;
        const auto a = tslab::window_constant(f, xi, Exponent::infinity(), all);
        const auto m = tslab::window_constant(f, xi, Exponent::infinity());
        CHECK(a.constant.value() == doctest::Approx(m.constant.value()).epsilon(1e-12));
        CHECK(a.supports >= m.supports);
      }
    }
  }

  TEST_CASE("determinism under a fixed seed") {
    CertifyOptions o;
    o.restarts = 3;
    o.seed = 99;
    const auto family = units(Space::xm(Exponent(3L), 3), 10);
    const auto a = tslab::window_constant(family, Ordinal::finite(1), Exponent(3L), o);
    const auto b = tslab::window_constant(family, Ordinal::finite(1), Exponent(3L), o);
    CHECK(a.constant.value() == b.constant.value());
    CHECK(a.witness_coeffs == b.witness_coeffs);
    CHECK(a.witness_support == b.witness_support);
  }

  TEST_CASE("window and errors") {
    CertifyOptions o;
    o.window = 3;
    const auto r = tslab::window_constant(dual_units(8), Ordinal::finite(1), Exponent::infinity(), o);
    CHECK(r.window == 3);
    CHECK(r.constant.rational() == 2);

    CertifyOptions exact;
    exact.mode = CertifyMode::exact;
    CHECK_THROWS_AS(tslab::window_constant(units(Space::lp(Exponent(2L)), 4), Ordinal::finite(1), Exponent(2L), exact),
                    tslab::InputError);
    CertifyOptions none;
    none.restarts = 0;
    CHECK_THROWS_AS(tslab::window_constant(units(Space::lp(Exponent(2L)), 4), Ordinal::finite(1), Exponent(2L), none),
                    tslab::InputError);
    CHECK(tslab::parse_certify_mode("heuristic") == CertifyMode::heuristic);
    CHECK_THROWS_AS(tslab::parse_certify_mode("fast"), tslab::InputError);
  }

  TEST_CASE("heuristic values are lower bounds of the exact constant") {
    CertifyOptions h;
    h.mode = CertifyMode::heuristic;
    h.restarts = 4;
    const auto family = units(Space::xm(Exponent(2L), 3), 8);
    const auto exact = tslab::window_constant(family, Ordinal::finite(1), Exponent::infinity());
    const auto heur = tslab::window_constant(family, Ordinal::finite(1), Exponent::infinity(), h);
    CHECK(heur.constant.value() <= exact.constant.value() + 1e-9);
    CHECK(heur.constant.value() >= exact.constant.value() - 1e-6);
  }
}
