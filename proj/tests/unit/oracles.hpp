#pragma once

// Slow reference evaluators used only by the tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tslab/finvec.hpp"
#include "tslab/schreier.hpp"
#include "tslab/tsirelson.hpp"

namespace oracle {

/// The implicit equation with arbitrary successive subsets of the support
/// as blocks (not just slices), the whole support excluded as a single
/// block. Exponential; meant for supports of at most 8 points. q = 1 only.
class SubsetBlockNorm {
 public:
  SubsetBlockNorm(const tslab::FinVec& x, const tslab::TsirelsonParams& params, std::optional<unsigned> depth = {})
      : params_(params), depth_(depth) {
    for (const auto& [k, v] : x.entries()) {
      idx_.push_back(k);
      mag_.push_back(abs(v));
    }
  }

  tslab::Rational value() { return idx_.empty() ? tslab::Rational(0) : norm((1u << idx_.size()) - 1, depth_); }

 private:
  using Mask = std::uint32_t;

  tslab::Rational norm(Mask set, std::optional<unsigned> depth) {
    const auto key = std::make_pair(set, depth ? static_cast<int>(*depth) : -1);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    tslab::Rational best(0);
    for (std::size_t i = 0; i < idx_.size(); ++i)
      if ((set >> i) & 1U) best = std::max(best, mag_[i]);
    if (!depth || *depth > 0) {
      std::optional<unsigned> below = depth ? std::optional<unsigned>(*depth - 1) : std::nullopt;
      std::vector<std::uint32_t> minima;
      tslab::Rational sup(0);
      search(set, set, 0, below, minima, tslab::Rational(0), sup);
      best = std::max(best, tslab::Rational(params_.theta * sup));
      // ||x||_{n+1} keeps the max with ||x||_n.
      if (depth) best = std::max(best, norm(set, below));
    }
    memo_[key] = best;
    return best;
  }

  // Chooses successive blocks inside `set`, each after position `from`.
  void search(Mask set, Mask whole, std::size_t from, std::optional<unsigned> depth, std::vector<std::uint32_t>& minima,
              tslab::Rational acc, tslab::Rational& sup) {
    if (!minima.empty()) sup = std::max(sup, acc);
    Mask rest = 0;
    for (std::size_t i = from; i < idx_.size(); ++i)
      if ((set >> i) & 1U) rest |= Mask{1} << i;
    // Every non-empty subset of the remaining points as the next block.
    for (Mask block = rest; block; block = (block - 1) & rest) {
      if (block == whole && depth_ == std::nullopt) continue;
      const int low = __builtin_ctz(block);
      const int high = 31 - __builtin_clz(block);
      minima.push_back(idx_[static_cast<std::size_t>(low)]);
      if (tslab::is_member(minima, params_.xi))
        search(set, whole, static_cast<std::size_t>(high + 1), depth, minima, acc + norm(block, depth), sup);
      minima.pop_back();
    }
  }

  tslab::TsirelsonParams params_;
  std::optional<unsigned> depth_;
  std::vector<std::uint32_t> idx_;
  std::vector<tslab::Rational> mag_;
  std::map<std::pair<Mask, int>, tslab::Rational> memo_;
};

}  // namespace oracle
