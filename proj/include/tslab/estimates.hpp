#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tslab/errors.hpp"
#include "tslab/finvec.hpp"
#include "tslab/ordinal.hpp"
#include "tslab/rational.hpp"
#include "tslab/schreier.hpp"
#include "tslab/spaces.hpp"

namespace tslab {

/// The finite family y_1, ..., y_K whose upper estimate is certified.
struct VectorFamily {
  Space space;
  std::vector<Point> vectors;
};

enum class CertifyMode { automatic, exact, heuristic };
std::string to_string(CertifyMode mode);
CertifyMode parse_certify_mode(std::string_view text);

struct CertifyOptions {
  CertifyMode mode = CertifyMode::automatic;
  unsigned restarts = 32;
  std::uint64_t seed = 0;
  /// Enumerate every member of S_xi in the window instead of the maximal
  /// ones. Same constant by hereditariness; used to cross-check.
  bool all_supports = false;
  /// Only y_1, ..., y_window take part; defaults to the family size.
  std::optional<std::uint32_t> window;
};

/// Best ratio ||sum_{k in F} alpha_k y_k|| / ||alpha||_p over supports F in
/// S_xi within the window.
struct WindowReport {
  NormValue constant;
  FinSet witness_support;
  /// alpha, indexed by the family position k.
  FinVec witness_coeffs;
  /// exact: the per-support maximum is provably attained (p = 1 closed
  /// form or sign enumeration). heuristic: constant is a lower bound.
  CertifyMode mode = CertifyMode::exact;
  Exponent p{1L};
  Ordinal xi;
  std::uint32_t window = 0;
  unsigned restarts = 0;
  std::uint64_t seed = 0;
  std::size_t supports = 0;
  /// Supports that needed their own evaluation after symmetry reduction.
  std::size_t evaluated = 0;
};

WindowReport window_constant(const VectorFamily& family, const Ordinal& xi, const Exponent& p, NormEngine& engine,
                             const CertifyOptions& options = {});
WindowReport window_constant(const VectorFamily& family, const Ordinal& xi, const Exponent& p,
                             const CertifyOptions& options = {}, const Limits& limits = Limits{});

/// ||sum alpha_k y_k|| / ||alpha||_p for the report's witness.
NormValue witness_ratio(const VectorFamily& family, const WindowReport& report, NormEngine& engine);

}  // namespace tslab
