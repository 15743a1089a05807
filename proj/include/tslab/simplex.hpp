#pragma once

#include <vector>

#include "tslab/rational.hpp"

namespace tslab {

struct PackingLpResult {
  Rational value;
  std::vector<Rational> primal;  // one entry per column
  std::vector<Rational> dual;    // one entry per row, non-negative
  unsigned pivots = 0;
};

/// Exact simplex for  max c.y  s.t.  A y <= b,  y >= 0,  with b >= 0.
///
/// The origin is feasible, so no phase one is needed. Uses Bland's rule,
/// which cannot cycle. Throws Error when the program is unbounded.
PackingLpResult solve_packing_lp(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& rhs,
                                 const std::vector<Rational>& objective);

}  // namespace tslab
