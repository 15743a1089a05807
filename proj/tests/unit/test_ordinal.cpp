#include <doctest.h>

#include "tslab/errors.hpp"
#include "tslab/ordinal.hpp"
#include "tslab/rng.hpp"

using tslab::Ordinal;

TEST_SUITE("ordinal") {
  TEST_CASE("parse reads Cantor normal form") {
    CHECK(Ordinal::parse("0").is_zero());
    const Ordinal a = Ordinal::parse("w^2*3+w+5");
    REQUIRE(a.terms().size() == 3);
    CHECK(a.terms()[0] == Ordinal::Term{2, 3});
    CHECK(a.terms()[1] == Ordinal::Term{1, 1});
    CHECK(a.terms()[2] == Ordinal::Term{0, 5});
    CHECK(Ordinal::parse("w1").is_omega1());
    CHECK(Ordinal::parse(" w + 1 ") == Ordinal::parse("w+1"));
  }

  TEST_CASE("parse rejects malformed and out-of-range input") {
    for (const char* bad : {"", "w^w", "w+", "1+w", "w*0", "w^2+w^3", "x", "w^", "-1", "w*2*3", "w^1^2", "w1+1"})
      CHECK_THROWS_AS(Ordinal::parse(bad), tslab::InputError);
  }

  TEST_CASE("classify") {
    CHECK(Ordinal::parse("w+1").classify() == Ordinal::Kind::successor);
    CHECK(Ordinal::parse("w*2").classify() == Ordinal::Kind::limit);
    CHECK(Ordinal::parse("0").classify() == Ordinal::Kind::zero);
    CHECK(Ordinal::omega1().classify() == Ordinal::Kind::omega1);
  }

  TEST_CASE("predecessor") {
    CHECK(Ordinal::parse("1").predecessor() == Ordinal::parse("0"));
    CHECK(Ordinal::parse("w+3").predecessor() == Ordinal::parse("w+2"));
    CHECK(Ordinal::parse("w^2+1").predecessor() == Ordinal::parse("w^2"));
    CHECK_THROWS_AS(Ordinal::parse("w").predecessor(), tslab::InputError);
  }

  TEST_CASE("fundamental sequences follow the fixed rule") {
    CHECK(Ordinal::parse("w").fundamental_sequence(3) == Ordinal::parse("3"));
    CHECK(Ordinal::parse("w^2").fundamental_sequence(2) == Ordinal::parse("w*2+1"));
    CHECK(Ordinal::parse("w^2+w").fundamental_sequence(4) == Ordinal::parse("w^2+4"));
    CHECK(Ordinal::parse("w^3*2").fundamental_sequence(1) == Ordinal::parse("w^3+w^2+1"));
    CHECK_THROWS_AS(Ordinal::parse("w+1").fundamental_sequence(1), tslab::InputError);
  }

  TEST_CASE("order") {
    CHECK(Ordinal::parse("5") < Ordinal::parse("w"));
    CHECK(Ordinal::parse("w*3+7") < Ordinal::parse("w^2"));
    CHECK(Ordinal::parse("w^2+w") < Ordinal::parse("w^2+w+1"));
    CHECK(Ordinal::parse("w^9*9") < Ordinal::omega1());
    CHECK_FALSE(Ordinal::omega1() < Ordinal::omega1());
  }

  TEST_CASE("property: format/parse round trip and sequence monotonicity") {
    tslab::Rng rng(11);
    for (int t = 0; t < 500; ++t) {
      std::vector<Ordinal::Term> terms;
      for (int e = 4; e >= 0; --e)
        if (rng.coin()) terms.push_back({static_cast<std::uint32_t>(e), static_cast<std::uint32_t>(rng.range(1, 4))});
      const Ordinal a(terms);
      const Ordinal b = Ordinal::parse(a.to_string());
      REQUIRE(a == b);
      if (a.classify() == Ordinal::Kind::limit) {
        Ordinal prev = a.fundamental_sequence(1);
        CHECK(prev.classify() == Ordinal::Kind::successor);
        for (std::uint32_t n = 2; n <= 5; ++n) {
          const Ordinal next = a.fundamental_sequence(n);
          CHECK(prev < next);
          CHECK(next < a);
          CHECK(next.classify() == Ordinal::Kind::successor);
          prev = next;
        }
      }
      if (a.classify() == Ordinal::Kind::successor) CHECK(a.predecessor().successor() == a);
    }
  }
}
