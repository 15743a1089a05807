#include <doctest.h>

#include "tslab/errors.hpp"
#include "tslab/rng.hpp"
#include "tslab/schreier.hpp"

using tslab::FinSet;
using tslab::Ordinal;

namespace {
Ordinal o(const char* text) { return Ordinal::parse(text); }
std::vector<std::string> names(const std::vector<FinSet>& sets) {
  std::vector<std::string> out;
  for (const auto& s : sets) out.push_back(s.to_string());
  return out;
}
}  // namespace

TEST_SUITE("schreier") {
  TEST_CASE("membership examples") {
    CHECK(tslab::is_member(FinSet{3, 4, 5}, o("1")));
    CHECK(tslab::is_member(FinSet{}, o("w^2")));
    CHECK(tslab::is_member(FinSet{}, o("0")));
    CHECK_FALSE(tslab::is_member(FinSet{1, 2}, o("1")));
    CHECK(tslab::is_member(FinSet{2, 3, 4, 5, 6, 7}, o("2")));
    CHECK(tslab::is_member(FinSet{7}, o("0")));
    CHECK_FALSE(tslab::is_member(FinSet{7, 8}, o("0")));
    CHECK(tslab::is_member(FinSet::range(1, 30), Ordinal::omega1()));
  }

  TEST_CASE("oracle examples") {
    CHECK(tslab::is_member_oracle(FinSet{3, 4, 5}, o("1")));
    CHECK(tslab::is_member_oracle(FinSet{2, 3, 4, 5, 6, 7}, o("2")));
    CHECK_FALSE(tslab::is_member_oracle(FinSet{1, 2}, o("2")));
  }

  TEST_CASE("limit levels use the fundamental sequence up to min F") {
    // S_w at min F = 2 allows S_1 or S_2.
    CHECK(tslab::is_member(FinSet{2, 3, 4, 5, 6, 7}, o("w")));
    CHECK_FALSE(tslab::is_member(FinSet{2, 3, 4, 5, 6, 7, 8}, o("w")));
    // min F = 3 allows S_3.
    CHECK(tslab::is_member(FinSet::range(3, 12), o("w")));
  }

  TEST_CASE("finite sets validate their input") {
    CHECK_THROWS_AS(FinSet({2, 2}), tslab::InputError);
    CHECK_THROWS_AS(FinSet({0, 1}), tslab::InputError);
    CHECK(FinSet({4, 2}).elements() == std::vector<std::uint32_t>{2, 4});
    CHECK(FinSet::parse("{2, 3,4}") == FinSet{2, 3, 4});
    CHECK(FinSet::parse("").empty());
    CHECK_THROWS_AS(FinSet::parse("2,,3"), tslab::InputError);
    CHECK(FinSet::from_mask(0b1011) == FinSet{1, 2, 4});
  }

  TEST_CASE("admissibility") {
    CHECK(tslab::is_admissible({FinSet{2}, FinSet{3}}, o("1")));
    CHECK_FALSE(tslab::is_admissible({FinSet{1}, FinSet{2}}, o("1")));
    CHECK_FALSE(tslab::is_admissible({FinSet{2, 5}, FinSet{3}}, o("1")));
    CHECK_THROWS_AS(tslab::is_admissible({FinSet{2}, FinSet{}}, o("1")), tslab::InputError);
  }

  TEST_CASE("maximal members") {
    CHECK(names(tslab::maximal_members(o("1"), 4)) == std::vector<std::string>{"{1}", "{2,3}", "{2,4}", "{3,4}"});
    CHECK(names(tslab::maximal_members(o("0"), 3)) == std::vector<std::string>{"{1}", "{2}", "{3}"});
    CHECK(names(tslab::maximal_members(o("1"), 2)) == std::vector<std::string>{"{1}", "{2}"});
    CHECK_THROWS_AS(tslab::maximal_members(Ordinal::omega1(), 4), tslab::InputError);
    CHECK_THROWS_AS(tslab::maximal_members(o("1"), 25), tslab::LimitError);
  }

  TEST_CASE("maximal members cover every member") {
    for (const char* xi : {"1", "2", "w", "w+1"}) {
      const auto all = tslab::members_within(o(xi), 10);
      const auto top = tslab::maximal_members(o(xi), 10);
      for (const auto& F : all) {
        bool covered = false;
        for (const auto& G : top)
          covered = covered || std::includes(G.elements().begin(), G.elements().end(), F.elements().begin(), F.elements().end());
        CHECK(covered);
      }
      for (const auto& G : top) CHECK(tslab::is_member(G, o(xi)));
    }
  }

  TEST_CASE("threshold") {
    const auto a = tslab::subset_threshold(o("1"), o("2"), 12, 12);
    CHECK(a.d == 1u);
    CHECK(a.window_relative);
    const auto b = tslab::subset_threshold(o("0"), o("1"), 12, 12);
    CHECK(b.d == 1u);
    const auto c = tslab::subset_threshold(o("2"), o("1"), 12, 4);
    CHECK_FALSE(c.d);
    REQUIRE(c.counterexamples.size() == 4);
    CHECK(c.counterexamples.back().first == 4);
    CHECK(c.counterexamples.back().second == FinSet::range(4, 12));
    // S_2 restricted to min >= d is never inside S_1 here, but S_w+1 contains S_w from the start.
    CHECK(tslab::subset_threshold(o("w"), o("w+1"), 10, 10).d == 1u);
  }

  TEST_CASE("spread out and push out") {
    using tslab::Rational;
    const auto a = tslab::spread_out({Rational(5)});
    CHECK(a == Rational(5) * tslab::FinVec::unit(1));
    const auto b = tslab::spread_out({Rational(1), Rational(1), Rational(1)});
    CHECK(b == tslab::FinVec::constant(3, 5, 1));
    const auto c = tslab::spread_out({Rational(2), Rational(-3)});
    CHECK(c.get(2) == 2);
    CHECK(c.get(3) == -3);
    CHECK_THROWS_AS(tslab::spread_out({}), tslab::InputError);

    tslab::FinVec alpha;
    alpha.set(2, 1);
    alpha.set(3, -2);
    const auto beta = tslab::push_out(alpha, [](std::uint32_t k) { return 2 * k + 1; }, o("1"));
    CHECK(beta.get(5) == 1);
    CHECK(beta.get(7) == -2);
    CHECK(tslab::is_member(FinSet(beta.support()), o("1")));
    CHECK_THROWS_AS(tslab::push_out(alpha, [](std::uint32_t k) { return k - 1; }, o("1")), tslab::InputError);
  }

  TEST_CASE("property: fast path agrees with the oracle on random sets") {
    tslab::Rng rng(5);
    for (const char* xi : {"1", "2", "3", "w", "w+2", "w*2", "w*2+1", "w^2", "w^2+w", "w^3"}) {
      for (int t = 0; t < 300; ++t) {
        std::vector<std::uint32_t> el;
        const auto lo = static_cast<std::uint32_t>(rng.range(1, 6));
        for (std::uint32_t n = lo; n <= 18; ++n)
          if (rng.below(3) != 0) el.push_back(n);
        const FinSet F(el);
        REQUIRE_MESSAGE(tslab::is_member(F, o(xi)) == tslab::is_member_oracle(F, o(xi)), F.to_string(), " in S_", xi);
      }
    }
  }
}
