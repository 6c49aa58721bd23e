// Incremental-mean action values keyed by an arbitrary hashable key.
#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "banditsweeper/engine.hpp"

namespace banditsweeper {

/// Q starts at -1 ("surely safe") with no plays.
struct ActionStats {
  double q = -1.0;
  std::uint64_t n = 0;

  /// Every reward seen so far agreed: always safe (-1) or always a mine (+1).
  bool perfect() const { return q == -1.0 || q == 1.0; }

  friend bool operator==(const ActionStats&, const ActionStats&) = default;
};

/// N is incremented first, then Q moves 1/N of the way to R, so Q is the
/// running mean of all rewards applied.
constexpr ActionStats q_update(ActionStats stats, double reward) {
  stats.n += 1;
  stats.q += (reward - stats.q) / static_cast<double>(stats.n);
  return stats;
}

/// +1 for revealing a mine, -1 for a safe tile.
constexpr double reward_of(RevealOutcome outcome) {
  return outcome == RevealOutcome::Mine ? 1.0 : -1.0;
}

template <class Key, class Hash = std::hash<Key>>
class ValueTable {
 public:
  using Map = std::unordered_map<Key, ActionStats, Hash>;

  /// Null for keys never updated. Pointers stay valid while the table lives
  /// (node-based storage; entries are never erased).
  const ActionStats* find(const Key& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  ActionStats get(const Key& key) const {
    const ActionStats* s = find(key);
    return s ? *s : ActionStats{};
  }

  const ActionStats& update(const Key& key, double reward) {
    auto [it, inserted] = map_.try_emplace(key);
    ActionStats& s = it->second;
    const bool was_perfect = !inserted && s.perfect();
    s = q_update(s, reward);
    perfect_ += static_cast<std::int64_t>(s.perfect()) - static_cast<std::int64_t>(was_perfect);
    return s;
  }

  /// Replaces an entry wholesale; used when loading persisted tables.
  void insert(const Key& key, ActionStats stats) {
    auto [it, inserted] = map_.try_emplace(key, stats);
    if (!inserted) {
      perfect_ -= it->second.perfect();
      it->second = stats;
    }
    perfect_ += stats.perfect();
  }

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  std::size_t perfect_count() const { return static_cast<std::size_t>(perfect_); }
  const Map& entries() const { return map_; }
  void reserve(std::size_t n) { map_.reserve(n); }

  /// Entries ordered by key.
  std::vector<std::pair<Key, ActionStats>> sorted() const {
    std::vector<std::pair<Key, ActionStats>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  friend bool operator==(const ValueTable& a, const ValueTable& b) { return a.map_ == b.map_; }

 private:
  Map map_;
  std::int64_t perfect_ = 0;
};

}  // namespace banditsweeper
