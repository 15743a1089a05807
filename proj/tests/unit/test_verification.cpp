#include <doctest.h>

#include "tslab/verification.hpp"

namespace {

void require_pass(const tslab::SuiteReport& r) {
  for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, r.name, ": ", c.name, " ", c.values.dump());
  CHECK(!r.checks.empty());
}

}  // namespace

TEST_SUITE("verification") {
  TEST_CASE("small suites pass") {
    require_pass(tslab::verify_schreier(8));
    require_pass(tslab::verify_fixed_point(20, 3));
    require_pass(tslab::verify_convexification(10, 3));
    require_pass(tslab::verify_dual(5, 3));
    tslab::BlockOptions b;
    b.trials = 5;
    b.window = 10;
    b.max_blocks = 4;
    b.restarts = 2;
    require_pass(tslab::verify_block_estimate(b));
    require_pass(tslab::verify_xm_bound(tslab::Exponent(2L), 2, tslab::Ordinal::finite(1), 8));
    require_pass(tslab::verify_sum_bound(4, 3));
    require_pass(tslab::verify_monotonicity(6, 3));
    require_pass(tslab::separation_demo(tslab::Exponent(1L), tslab::Ordinal::finite(1), 3));
  }

  TEST_CASE("prefix queries") {
    tslab::SuiteReport r;
    r.add("a.one", true);
    r.add("a.two", true);
    r.add("b.one", false);
    CHECK(r.passed("a."));
    CHECK_FALSE(r.passed("b."));
    CHECK_FALSE(r.passed("c."));
    CHECK_FALSE(r.passed());
  }
}
