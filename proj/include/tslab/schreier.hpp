#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tslab/errors.hpp"
#include "tslab/finvec.hpp"
#include "tslab/ordinal.hpp"

namespace tslab {

/// A finite set of positive integers, stored strictly increasing.
class FinSet {
 public:
  FinSet() = default;
  /// Sorts the input; throws on duplicates or zero.
  explicit FinSet(std::vector<std::uint32_t> elements);
  FinSet(std::initializer_list<std::uint32_t> elements) : FinSet(std::vector<std::uint32_t>(elements)) {}
  /// {first, ..., last}; empty when last < first.
  static FinSet range(std::uint32_t first, std::uint32_t last);
  /// Bit i of the mask stands for element i + 1.
  static FinSet from_mask(std::uint64_t mask);
  /// Comma separated list, e.g. "2,3,4"; the empty string is the empty set.
  static FinSet parse(std::string_view text);

  const std::vector<std::uint32_t>& elements() const { return elements_; }
  std::span<const std::uint32_t> span() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::uint32_t min() const;
  std::uint32_t max() const;
  bool contains(std::uint32_t n) const;
  std::uint64_t mask() const;

  std::string to_string() const;

  friend bool operator==(const FinSet&, const FinSet&) = default;
  friend auto operator<=>(const FinSet& a, const FinSet& b) { return a.elements_ <=> b.elements_; }

 private:
  std::vector<std::uint32_t> elements_;
};

/// F in S_xi, using the fixed fundamental sequences of Ordinal.
///
/// Successor levels use a greedy longest-prefix block decomposition, which
/// minimises the number of blocks because every S_zeta is hereditary.
/// Verdicts are memoised on (set, ordinal).
bool is_member(std::span<const std::uint32_t> sorted, const Ordinal& xi);
bool is_member(const FinSet& set, const Ordinal& xi);

/// Reference implementation: exhaustive search over all consecutive block
/// decompositions, no greedy shortcut. Throws LimitError above
/// limits.max_membership elements.
bool is_member_oracle(const FinSet& set, const Ordinal& xi, const Limits& limits = Limits{});

/// E_1 < ... < E_j with {min E_i} in S_xi. Throws InputError on an empty block.
bool is_admissible(const std::vector<FinSet>& blocks, const Ordinal& xi);

/// Every member of S_xi contained in {first, ..., window}, in lexicographic
/// order. Not available for w1.
std::vector<FinSet> members_within(const Ordinal& xi, std::uint32_t window, std::uint32_t first = 1,
                                   const Limits& limits = Limits{});

/// Members of S_xi inside {1..window} that are maximal there under inclusion.
std::vector<FinSet> maximal_members(const Ordinal& xi, std::uint32_t window, const Limits& limits = Limits{});

struct ThresholdResult {
  /// Least d <= d_max such that S_zeta restricted to min >= d sits inside S_xi.
  std::optional<std::uint32_t> d;
  /// One witness F in S_zeta \ S_xi with min F >= d, for each failing d
  /// (largest such set, ties broken lexicographically).
  std::vector<std::pair<std::uint32_t, FinSet>> counterexamples;
  std::uint32_t window = 0;
  std::uint32_t d_max = 0;
  /// The certificate only covers subsets of {1..window}.
  bool window_relative = true;
};

ThresholdResult subset_threshold(const Ordinal& zeta, const Ordinal& xi, std::uint32_t window, std::uint32_t d_max,
                                 const Limits& limits = Limits{});

/// Places the values at indices j, ..., 2j-1 where j is their count.
FinVec spread_out(const std::vector<Rational>& values);

/// beta with beta_{n_k} = alpha_k, for a strictly increasing map with
/// n_k >= k on supp(alpha). Requires supp(alpha) in S_xi.
FinVec push_out(const FinVec& alpha, const std::function<std::uint32_t(std::uint32_t)>& index_map,
                const Ordinal& xi);

/// Drops every cached membership verdict.
void clear_membership_cache();

}  // namespace tslab
