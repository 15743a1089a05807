#pragma once

// Multi-start coordinate ascent for ratios that are invariant under
// positive scaling, on the box [lo, 1]^n with lo in {-1, 0}.

#include <cstdint>
#include <functional>
#include <vector>

namespace tslab::detail {

struct AscentOptions {
  double lo = 0.0;
  unsigned random_starts = 8;
  std::uint64_t seed = 0;
  unsigned grid = 12;
  unsigned golden_steps = 18;
  unsigned max_sweeps = 12;
  /// Also start from the uniform vector and from every vertex e_k.
  bool standard_starts = true;
};

struct AscentResult {
  std::vector<double> point;
  double value = 0.0;
  unsigned evaluations = 0;
};

using Objective = std::function<double(const std::vector<double>&)>;

AscentResult maximize(std::size_t n, const Objective& objective, const AscentOptions& options);

}  // namespace tslab::detail
