#include "tslab/schreier.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace tslab {

// ---------------------------------------------------------------------------
// FinSet

FinSet::FinSet(std::vector<std::uint32_t> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (!elements_.empty() && elements_.front() == 0) throw InputError("set elements must be positive integers");
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
    throw InputError("set elements must be distinct");
}

FinSet FinSet::range(std::uint32_t first, std::uint32_t last) {
  std::vector<std::uint32_t> e;
  for (std::uint32_t n = first; n <= last && last != 0; ++n) e.push_back(n);
  return FinSet(std::move(e));
}

FinSet FinSet::from_mask(std::uint64_t mask) {
  std::vector<std::uint32_t> e;
  for (std::uint32_t i = 0; i < 64; ++i)
    if (mask >> i & 1U) e.push_back(i + 1);
  FinSet s;
  s.elements_ = std::move(e);
  return s;
}

FinSet FinSet::parse(std::string_view text) {
  std::vector<std::uint32_t> e;
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '{' && text.back() == '}') text = trim(text.substr(1, text.size() - 2));
  if (text.empty()) return FinSet();
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    std::uint32_t value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size())
      throw InputError("malformed set element '" + std::string(item) + "'");
    e.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return FinSet(std::move(e));
}

std::uint32_t FinSet::min() const {
  if (elements_.empty()) throw InputError("empty set has no minimum");
  return elements_.front();
}

std::uint32_t FinSet::max() const {
  if (elements_.empty()) throw InputError("empty set has no maximum");
  return elements_.back();
}

bool FinSet::contains(std::uint32_t n) const { return std::binary_search(elements_.begin(), elements_.end(), n); }

std::uint64_t FinSet::mask() const {
  std::uint64_t m = 0;
  for (auto e : elements_) {
    if (e > 64) throw LimitError("set element exceeds 64 in mask conversion");
    m |= std::uint64_t{1} << (e - 1);
  }
  return m;
}

std::string FinSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(elements_[i]);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Membership caches

namespace {

struct MemoKey {
  Ordinal ordinal;
  std::vector<std::uint32_t> set;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = k.ordinal.hash();
    for (auto e : k.set) h = h * 0x100000001b3ULL ^ e;
    return h;
  }
};

/// Write-once verdict cache; racing writers store identical values.
class VerdictCache {
 public:
  std::optional<bool> find(const MemoKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  void store(MemoKey key, bool verdict) {
    std::unique_lock lock(mutex_);
    if (table_.size() >= kMaxEntries) table_.clear();
    table_.emplace(std::move(key), verdict);
  }
  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  static constexpr std::size_t kMaxEntries = 1U << 22;
  mutable std::shared_mutex mutex_;
  std::unordered_map<MemoKey, bool, MemoKeyHash> table_;
};

VerdictCache& fast_cache() {
  static VerdictCache cache;
  return cache;
}

VerdictCache& oracle_cache() {
  static VerdictCache cache;
  return cache;
}

bool member_fast(std::span<const std::uint32_t> f, const Ordinal& xi);

bool member_fast_uncached(std::span<const std::uint32_t> f, const Ordinal& xi) {
  switch (xi.classify()) {
    case Ordinal::Kind::omega1: return true;
    case Ordinal::Kind::zero: return f.size() <= 1;
    case Ordinal::Kind::successor: {
      // S_1 is contained in every S_xi with xi >= 1.
      if (f.size() <= f.front()) return true;
      const Ordinal zeta = xi.predecessor();
      std::size_t pos = 0;
      std::uint32_t blocks = 0;
      while (pos < f.size()) {
        if (++blocks > f.front()) return false;
        // Valid prefix lengths are downward closed (hereditary), so binary search.
        std::size_t lo = 1, hi = f.size() - pos;
        while (lo < hi) {
          std::size_t mid = (lo + hi + 1) / 2;
          if (member_fast(f.subspan(pos, mid), zeta))
            lo = mid;
          else
            hi = mid - 1;
        }
        pos += lo;
      }
      return true;
    }
    case Ordinal::Kind::limit: {
      if (f.size() <= f.front()) return true;
      for (std::uint32_t n = f.front(); n >= 1; --n)
        if (member_fast(f, xi.fundamental_sequence(n))) return true;
      return false;
    }
  }
  return false;
}

bool member_fast(std::span<const std::uint32_t> f, const Ordinal& xi) {
  if (f.size() <= 1 || xi.is_omega1()) return true;
  if (xi.is_zero()) return false;
  if (xi.is_finite() && xi.finite_value() == 1) return f.size() <= f.front();
  MemoKey key{xi, std::vector<std::uint32_t>(f.begin(), f.end())};
  if (auto hit = fast_cache().find(key)) return *hit;
  bool verdict = member_fast_uncached(f, xi);
  fast_cache().store(std::move(key), verdict);
  return verdict;
}

bool member_oracle(std::span<const std::uint32_t> f, const Ordinal& xi);

// Tries every split of f into at most budget consecutive blocks in S_zeta.
bool decompose(std::span<const std::uint32_t> f, const Ordinal& zeta, std::uint32_t budget) {
  if (f.empty()) return true;
  if (budget == 0) return false;
  for (std::size_t len = 1; len <= f.size(); ++len)
    if (member_oracle(f.first(len), zeta) && decompose(f.subspan(len), zeta, budget - 1)) return true;
  return false;
}

bool member_oracle(std::span<const std::uint32_t> f, const Ordinal& xi) {
  if (f.empty() || xi.is_omega1()) return true;
  if (xi.is_zero()) return f.size() == 1;
  if (xi.is_finite() && xi.finite_value() == 1) return f.size() <= f.front();
  MemoKey key{xi, std::vector<std::uint32_t>(f.begin(), f.end())};
  if (auto hit = oracle_cache().find(key)) return *hit;
  bool verdict = false;
  if (xi.classify() == Ordinal::Kind::successor) {
    verdict = decompose(f, xi.predecessor(), f.front());
  } else {
    for (std::uint32_t n = 1; n <= f.front() && !verdict; ++n)
      verdict = member_oracle(f, xi.fundamental_sequence(n));
  }
  oracle_cache().store(std::move(key), verdict);
  return verdict;
}

void check_sorted(std::span<const std::uint32_t> f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) throw InputError("set elements must be positive integers");
    if (i && f[i] <= f[i - 1]) throw InputError("set elements must be strictly increasing");
  }
}

}  // namespace

bool is_member(std::span<const std::uint32_t> sorted, const Ordinal& xi) {
  check_sorted(sorted);
  return member_fast(sorted, xi);
}

bool is_member(const FinSet& set, const Ordinal& xi) { return member_fast(set.span(), xi); }

bool is_member_oracle(const FinSet& set, const Ordinal& xi, const Limits& limits) {
  require_within(set.size(), limits.max_membership, "oracle membership set size");
  return member_oracle(set.span(), xi);
}

void clear_membership_cache() {
  fast_cache().clear();
  oracle_cache().clear();
}

bool is_admissible(const std::vector<FinSet>& blocks, const Ordinal& xi) {
  std::vector<std::uint32_t> minima;
  minima.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) throw InputError("admissible families cannot contain empty blocks");
    if (i && blocks[i - 1].max() >= blocks[i].min()) return false;
    minima.push_back(blocks[i].min());
  }
  return member_fast(minima, xi);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void enumerate(const Ordinal& xi, std::uint32_t window, std::vector<std::uint32_t>& current,
               std::vector<FinSet>& out) {
  const std::uint32_t next = current.empty() ? 0 : current.back();
  for (std::uint32_t n = next + 1; n <= window; ++n) {
    // Children of a non-member are never members, so prune.
    current.push_back(n);
    if (member_fast(current, xi)) {
      FinSet s;
      s = FinSet(current);
      out.push_back(std::move(s));
      enumerate(xi, window, current, out);
    }
    current.pop_back();
  }
}

void require_enumerable(const Ordinal& xi, std::uint32_t window, const Limits& limits) {
  if (xi.is_omega1())
    throw InputError("enumeration over w1 is not supported: every finite subset is a member");
  if (window == 0) throw InputError("window must be positive");
  require_within(window, limits.max_window, "enumeration window");
}

}  // namespace

std::vector<FinSet> members_within(const Ordinal& xi, std::uint32_t window, std::uint32_t first,
                                   const Limits& limits) {
  require_enumerable(xi, window, limits);
  std::vector<FinSet> out;
  std::vector<std::uint32_t> current;
  for (std::uint32_t n = std::max<std::uint32_t>(first, 1); n <= window; ++n) {
    current.assign(1, n);
    out.push_back(FinSet({n}));
    enumerate(xi, window, current, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FinSet> maximal_members(const Ordinal& xi, std::uint32_t window, const Limits& limits) {
  std::vector<FinSet> members = members_within(xi, window, 1, limits);
  std::vector<FinSet> out;
  std::vector<std::uint32_t> grown;
  for (const auto& f : members) {
    bool maximal = true;
    for (std::uint32_t n = 1; n <= window && maximal; ++n) {
      if (f.contains(n)) continue;
      grown = f.elements();
      grown.insert(std::upper_bound(grown.begin(), grown.end(), n), n);
      // Hereditary: any strict superset member contains a one-point extension member.
      if (member_fast(grown, xi)) maximal = false;
    }
    if (maximal) out.push_back(f);
  }
  return out;
}

ThresholdResult subset_threshold(const Ordinal& zeta, const Ordinal& xi, std::uint32_t window, std::uint32_t d_max,
                                 const Limits& limits) {
  ThresholdResult result;
  result.window = window;
  result.d_max = d_max;
  std::vector<FinSet> members = members_within(zeta, window, 1, limits);
  // best counterexample per minimum value
  std::vector<std::optional<FinSet>> by_min(window + 2);
  for (const auto& f : members) {
    if (member_fast(f.span(), xi)) continue;
    auto& slot = by_min[f.min()];
    if (!slot || f.size() > slot->size() || (f.size() == slot->size() && f < *slot)) slot = f;
  }
  // counterexample for d: best among those with min >= d
  std::optional<FinSet> best;
  std::vector<std::optional<FinSet>> suffix_best(window + 2);
  for (std::uint32_t m = window; m >= 1; --m) {
    if (by_min[m] &&
        (!best || by_min[m]->size() > best->size() || (by_min[m]->size() == best->size() && *by_min[m] < *best)))
      best = by_min[m];
    suffix_best[m] = best;
  }
  for (std::uint32_t d = 1; d <= d_max; ++d) {
    const std::optional<FinSet>& witness = d <= window ? suffix_best[d] : std::optional<FinSet>{};
    if (!witness) {
      result.d = d;
      return result;
    }
    result.counterexamples.emplace_back(d, *witness);
  }
  return result;
}

// ---------------------------------------------------------------------------

FinVec spread_out(const std::vector<Rational>& values) {
  if (values.empty()) throw InputError("spread_out needs at least one value");
  const auto j = static_cast<std::uint32_t>(values.size());
  FinVec out;
  for (std::uint32_t i = 0; i < j; ++i) out.set(j + i, values[i]);
  return out;
}

FinVec push_out(const FinVec& alpha, const std::function<std::uint32_t(std::uint32_t)>& index_map,
                const Ordinal& xi) {
  const std::vector<std::uint32_t> support = alpha.support();
  if (!member_fast(support, xi)) throw InputError("push_out requires supp(alpha) in S_" + xi.to_string());
  FinVec beta;
  std::uint32_t previous = 0;
  for (const auto& [k, v] : alpha.entries()) {
    const std::uint32_t n = index_map(k);
    if (n < k) throw InputError("push_out map must satisfy n_k >= k");
    if (n <= previous) throw InputError("push_out map must be strictly increasing");
    previous = n;
    beta.set(n, v);
  }
  if (!member_fast(beta.support(), xi)) throw Error("spreading property violated in push_out");
  return beta;
}

}  // namespace tslab
