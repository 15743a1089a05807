#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tslab/errors.hpp"
#include "tslab/json_io.hpp"
#include "tslab/ordinal.hpp"
#include "tslab/rational.hpp"

namespace tslab {

struct Check {
  std::string name;
  bool passed = false;
  Json values;
};

/// Outcome of one verification suite: named checks with their values.
struct SuiteReport {
  std::string name;
  Json config = Json::object();
  std::vector<Check> checks;

  void add(std::string check, bool passed, Json values = Json::object());
  bool passed() const;
  /// Checks whose name starts with the prefix all passed (and one exists).
  bool passed(std::string_view prefix) const;
  Json to_json() const;
};

/// Default trial counts match the acceptance suite.
SuiteReport verify_schreier(std::uint32_t window = 12, const Limits& limits = Limits{});
SuiteReport verify_fixed_point(unsigned trials = 200, std::uint64_t seed = 0, const Limits& limits = Limits{});
SuiteReport verify_convexification(unsigned trials = 100, std::uint64_t seed = 0, const Limits& limits = Limits{});
SuiteReport verify_dual(unsigned trials = 30, std::uint64_t seed = 0, const Limits& limits = Limits{});

struct BlockOptions {
  Exponent q{1L};
  Ordinal xi = Ordinal::finite(1);
  unsigned trials = 50;
  /// Blocks are successive inside {1..window}.
  std::uint32_t window = 14;
  unsigned max_blocks = 6;
  unsigned restarts = 4;
  std::uint64_t seed = 0;
};
SuiteReport verify_block_estimate(const BlockOptions& options, const Limits& limits = Limits{});

SuiteReport verify_xm_bound(const Exponent& p, std::uint32_t m, const Ordinal& xi, std::uint32_t window,
                            std::uint64_t seed = 0, const Limits& limits = Limits{});
SuiteReport verify_sum_bound(unsigned configs = 20, std::uint64_t seed = 0, const Limits& limits = Limits{});
SuiteReport verify_monotonicity(unsigned families = 50, std::uint64_t seed = 0, const Limits& limits = Limits{});
SuiteReport separation_demo(const Exponent& q, const Ordinal& xi, std::uint32_t window, std::uint64_t seed = 0,
                            const Limits& limits = Limits{});

/// Every suite with its default parameters.
std::vector<SuiteReport> run_all(std::uint64_t seed, const Limits& limits = Limits{});

/// {"tool", "version", "command", "config", "passed", "suites", "wall_time_seconds"}.
Json make_report(const std::string& command, const Json& config, const std::vector<SuiteReport>& suites,
                 double wall_seconds);

const char* version();

}  // namespace tslab
