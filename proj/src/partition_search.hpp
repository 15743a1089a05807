#pragma once

// Optimisation over partitions of a run of support positions into
// consecutive slices whose minima form a member of S_xi.
//
// Positions 0..L-1 carry increasing indices idx[0] < ... < idx[L-1]. A
// partition of [s, j) is a list of cut points s = c_0 < c_1 < ... < c_r = j;
// its minima set is {idx[c_0], ..., idx[c_{r-1}]}. The search recurses on
// the ordinal: a successor zeta+1 groups consecutive slices into at most
// idx[s] runs that are each S_zeta-partitions, and a limit takes the best
// over its fundamental sequence up to idx[s].

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tslab/ordinal.hpp"

namespace tslab::detail {

template <class Value>
class PartitionSearch {
 public:
  enum class Goal { maximize, minimize };

  /// Value of a single slice [a, b).
  using Leaf = std::function<Value(int a, int b)>;
  using Combine = std::function<Value(const Value&, const Value&)>;

  struct Best {
    Value value;
    std::vector<int> starts;  // slice start positions; slices end at the next start or j
  };

  PartitionSearch(std::vector<std::uint32_t> indices, Goal goal, Leaf leaf, Combine combine)
      : idx_(std::move(indices)), goal_(goal), leaf_(std::move(leaf)), combine_(std::move(combine)) {}

  /// Best partition of [s, j) with minima in S_xi; multi demands at least
  /// two slices.
  std::optional<Best> best(const Ordinal& xi, int s, int j, bool multi) { return solve(intern(xi), s, j, multi); }

 private:
  struct OrdinalNode {
    Ordinal ordinal;
    Ordinal::Kind kind;
    int predecessor = -1;
    std::vector<int> sequence;  // fundamental sequence ids, index n-1
  };

  bool better(const Value& a, const Value& b) const { return goal_ == Goal::maximize ? b < a : a < b; }

  void consider(std::optional<Best>& incumbent, const Value& value, const std::vector<int>& starts) const {
    if (!incumbent || better(value, incumbent->value)) incumbent = Best{value, starts};
  }

  int intern(const Ordinal& xi) {
    auto it = ids_.find(xi);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(nodes_.size());
    ids_.emplace(xi, id);
    nodes_.push_back(OrdinalNode{xi, xi.classify(), -1, {}});
    if (xi.classify() == Ordinal::Kind::successor) {
      const int pred = intern(xi.predecessor());
      nodes_[id].predecessor = pred;
    }
    return id;
  }

  int sequence_member(int id, std::uint32_t n) {
    while (nodes_[id].sequence.size() < n) {
      const auto k = static_cast<std::uint32_t>(nodes_[id].sequence.size() + 1);
      const int child = intern(nodes_[id].ordinal.fundamental_sequence(k));
      nodes_[id].sequence.push_back(child);
    }
    return nodes_[id].sequence[n - 1];
  }

  std::uint64_t key(int id, int s, int j, bool multi) const {
    const auto len = static_cast<std::uint64_t>(idx_.size() + 1);
    return ((static_cast<std::uint64_t>(id) * len + static_cast<std::uint64_t>(s)) * len +
            static_cast<std::uint64_t>(j)) *
               2 +
           (multi ? 1 : 0);
  }

  std::optional<Best> solve(int id, int s, int j, bool multi) {
    const std::uint64_t k = key(id, s, j, multi);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    std::optional<Best> result = compute(id, s, j, multi);
    memo_.emplace(k, result);
    return result;
  }

  std::optional<Best> compute(int id, int s, int j, bool multi) {
    std::optional<Best> result;
    switch (nodes_[id].kind) {
      case Ordinal::Kind::zero:
        if (!multi) consider(result, leaf_(s, j), {s});
        return result;
      case Ordinal::Kind::omega1: {
        if (!multi) consider(result, leaf_(s, j), {s});
        for (int t = s + 1; t < j; ++t) {
          auto rest = solve(id, t, j, false);
          if (!rest) continue;
          std::vector<int> starts{s};
          starts.insert(starts.end(), rest->starts.begin(), rest->starts.end());
          consider(result, combine_(leaf_(s, t), rest->value), starts);
        }
        return result;
      }
      case Ordinal::Kind::limit: {
        const std::uint32_t top = idx_[static_cast<std::size_t>(s)];
        for (std::uint32_t n = 1; n <= top; ++n) {
          auto candidate = solve(sequence_member(id, n), s, j, multi);
          if (candidate) consider(result, candidate->value, candidate->starts);
        }
        return result;
      }
      case Ordinal::Kind::successor: return successor(id, s, j, multi);
    }
    return result;
  }

  // Groups of consecutive slices, each an S_zeta-partition, at most idx[s] groups.
  std::optional<Best> successor(int id, int s, int j, bool multi) {
    const int pred = nodes_[id].predecessor;
    std::optional<Best> result;
    if (auto single = solve(pred, s, j, multi)) consider(result, single->value, single->starts);

    const auto max_groups = static_cast<int>(std::min<std::uint64_t>(idx_[static_cast<std::size_t>(s)],
                                                                      static_cast<std::uint64_t>(j - s)));
    if (max_groups < 2) return result;
    // table[g][t]: best with g groups covering [s, t)
    const int width = j - s + 1;
    std::vector<std::vector<std::optional<Best>>> table(
        static_cast<std::size_t>(max_groups + 1), std::vector<std::optional<Best>>(static_cast<std::size_t>(width)));
    for (int t = s + 1; t < j; ++t) table[1][static_cast<std::size_t>(t - s)] = solve(pred, s, t, false);
    for (int g = 2; g <= max_groups; ++g) {
      const int t_min = s + g;
      for (int t = t_min; t <= j; ++t) {
        std::optional<Best> cell;
        for (int a = s + g - 1; a < t; ++a) {
          const auto& head = table[static_cast<std::size_t>(g - 1)][static_cast<std::size_t>(a - s)];
          if (!head) continue;
          auto tail = solve(pred, a, t, false);
          if (!tail) continue;
          Value v = combine_(head->value, tail->value);
          if (!cell || better(v, cell->value)) {
            std::vector<int> starts = head->starts;
            starts.insert(starts.end(), tail->starts.begin(), tail->starts.end());
            cell = Best{std::move(v), std::move(starts)};
          }
        }
        table[static_cast<std::size_t>(g)][static_cast<std::size_t>(t - s)] = std::move(cell);
      }
      const auto& full = table[static_cast<std::size_t>(g)][static_cast<std::size_t>(j - s)];
      if (full) consider(result, full->value, full->starts);
    }
    return result;
  }

  std::vector<std::uint32_t> idx_;
  Goal goal_;
  Leaf leaf_;
  Combine combine_;
  std::vector<OrdinalNode> nodes_;
  std::unordered_map<Ordinal, int> ids_;
  std::unordered_map<std::uint64_t, std::optional<Best>> memo_;
};

}  // namespace tslab::detail
