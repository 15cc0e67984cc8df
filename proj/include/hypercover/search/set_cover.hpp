#pragma once

// Exact minimum set cover by branch-and-bound.
//
// Phase 1 finds the minimum size k: branch on the uncovered element with the fewest covering sets,
// prune with a greedy upper bound and the lower bound ceil(|R| / max_s |s & R|). Top levels of the
// tree run as tasks on a work-stealing pool sharing a monotone best bound.
//
// Phase 2 makes the answer deterministic: it returns the lexicographically least sorted index tuple
// of size k, found by fixing one position at a time with serial feasibility searches. The result
// does not depend on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypercover/bitset.hpp"
#include "hypercover/rational.hpp"
#include "hypercover/search/work_stealing_pool.hpp"

namespace hypercover {

/// Some universe element lies in no candidate set.
class InfeasibleError : public std::invalid_argument {
 public:
  explicit InfeasibleError(std::size_t element)
      : std::invalid_argument("infeasible: element " + std::to_string(element) + " is covered by no candidate"),
        element(element) {}

  std::size_t element;
};

struct SetCoverOptions {
  unsigned threads = 1;
  bool prune_dominated = true;
  /// Dominance pruning is quadratic; above this many distinct sets it is skipped.
  std::size_t dominance_limit = 20000;
  bool memoize = true;  // only used when the universe has <= 32 elements
  int spawn_depth = 2;  // tree levels explored as separate pool tasks
};

struct SetCoverSolution {
  std::size_t minimum = 0;
  std::vector<std::size_t> chosen;  // ascending indices into the caller's candidate list
  std::size_t candidates_in = 0;
  std::size_t candidates_kept = 0;  // after restriction, deduplication and dominance pruning
  std::uint64_t nodes = 0;
};

namespace detail {

class SetCoverInstance {
 public:
  SetCoverInstance(const DynamicBitset& universe, const std::vector<DynamicBitset>& sets, const SetCoverOptions& opt)
      : opt_(opt), universe_size_(universe.count()) {
    // Compact the universe to positions 0..u-1.
    std::vector<std::size_t> position(universe.size(), kNone);
    std::size_t u = 0;
    universe.for_each_set([&](std::size_t e) { position[e] = u++; });
    element_of_.resize(u);
    universe.for_each_set([&](std::size_t e) { element_of_[position[e]] = e; });

    DynamicBitset reach(u);
    std::unordered_map<DynamicBitset, std::size_t, DynamicBitsetHash> seen;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].size() != universe.size()) throw InputError("candidate set size differs from universe size");
      DynamicBitset s(u);
      sets[i].for_each_set([&](std::size_t e) {
        if (position[e] != kNone) s.set(position[e]);
      });
      if (s.none() || !seen.emplace(s, i).second) continue;
      reach |= s;
      sets_.push_back(std::move(s));
      original_.push_back(i);
    }
    if (!reach.all()) {
      std::size_t missing = 0;
      while (reach.test(missing)) ++missing;
      throw InfeasibleError(element_of_[missing]);
    }
    if (opt_.prune_dominated && sets_.size() <= opt_.dominance_limit) prune_dominated();

    covers_.resize(u);
    for (std::size_t j = 0; j < sets_.size(); ++j) sets_[j].for_each_set([&](std::size_t e) { covers_[e].push_back(j); });
    small_ = u <= 32;
  }

  std::size_t kept() const noexcept { return sets_.size(); }
  std::size_t universe_size() const noexcept { return universe_size_; }

  SetCoverSolution solve() {
    SetCoverSolution out;
    out.candidates_kept = sets_.size();
    const DynamicBitset all = DynamicBitset::full(universe_size_);
    if (universe_size_ == 0) return out;

    const std::size_t k = minimum_size(all);
    std::vector<std::size_t> chosen = lex_least(all, k);
    for (auto j : chosen) out.chosen.push_back(original_[j]);
    out.minimum = k;
    out.nodes = nodes_.load();
    return out;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void prune_dominated() {
    std::vector<std::size_t> order(sets_.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> size(sets_.size());
    for (std::size_t i = 0; i < sets_.size(); ++i) size[i] = sets_[i].count();
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return size[a] > size[b]; });
    std::vector<bool> drop(sets_.size(), false);
    std::vector<std::size_t> kept_larger;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const auto i = order[pos];
      for (auto j : kept_larger) {
        if (size[j] > size[i] && sets_[i].is_subset_of(sets_[j])) {
          drop[i] = true;
          break;
        }
      }
      if (!drop[i]) kept_larger.push_back(i);
    }
    std::vector<DynamicBitset> sets;
    std::vector<std::size_t> original;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (drop[i]) continue;
      sets.push_back(std::move(sets_[i]));
      original.push_back(original_[i]);
    }
    sets_ = std::move(sets);
    original_ = std::move(original);
  }

  /// ceil(|R| / max coverage), considering only sets with index >= lo.
  std::size_t lower_bound(const DynamicBitset& remaining, std::size_t lo = 0) const {
    const std::size_t r = remaining.count();
    if (r == 0) return 0;
    std::size_t best = 0;
    for (std::size_t j = lo; j < sets_.size(); ++j) best = std::max(best, sets_[j].intersection_count(remaining));
    if (best == 0) return kNone;
    return (r + best - 1) / best;
  }

  std::vector<std::size_t> greedy(DynamicBitset remaining) const {
    std::vector<std::size_t> pick;
    while (remaining.any()) {
      std::size_t best = 0, best_gain = 0;
      for (std::size_t j = 0; j < sets_.size(); ++j) {
        const auto g = sets_[j].intersection_count(remaining);
        if (g > best_gain) best = j, best_gain = g;
      }
      pick.push_back(best);
      remaining.subtract(sets_[best]);
    }
    return pick;
  }

  /// Uncovered element with the fewest covering sets of index >= lo.
  std::size_t branch_element(const DynamicBitset& remaining, std::size_t lo = 0) const {
    std::size_t best = kNone, best_count = kNone;
    remaining.for_each_set([&](std::size_t e) {
      const auto& c = covers_[e];
      const auto cnt = static_cast<std::size_t>(c.end() - std::lower_bound(c.begin(), c.end(), lo));
      if (cnt < best_count) best = e, best_count = cnt;
    });
    return best;
  }

  std::vector<std::size_t> ordered_children(const DynamicBitset& remaining, std::size_t e, std::size_t lo = 0) const {
    const auto& c = covers_[e];
    std::vector<std::size_t> kids(std::lower_bound(c.begin(), c.end(), lo), c.end());
    std::vector<std::size_t> gain(sets_.size());
    for (auto j : kids) gain[j] = sets_[j].intersection_count(remaining);
    std::stable_sort(kids.begin(), kids.end(), [&](auto a, auto b) { return gain[a] > gain[b]; });
    return kids;
  }

  // ---- memo (universe <= 32): remaining mask -> proven lower bound on sets still needed
  static std::uint32_t key32(const DynamicBitset& r) { return static_cast<std::uint32_t>(r.words()[0]); }

  std::size_t memo_get(const DynamicBitset& r) {
    if (!small_ || !opt_.memoize) return 0;
    std::lock_guard lock(memo_mutex_);
    auto it = memo_.find(key32(r));
    return it == memo_.end() ? 0 : it->second;
  }
  void memo_put(const DynamicBitset& r, std::size_t lb) {
    if (!small_ || !opt_.memoize) return;
    std::lock_guard lock(memo_mutex_);
    auto& slot = memo_[key32(r)];
    slot = std::max<std::size_t>(slot, lb);
  }

  // ---- phase 1
  void record(std::size_t size, const std::vector<std::size_t>& path) {
    std::lock_guard lock(best_mutex_);
    if (size < best_.load()) {
      best_.store(size);
      best_path_ = path;
    }
  }

  void explore(const DynamicBitset& remaining, std::vector<std::size_t>& path, int depth, WorkStealingPool* pool) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    if (remaining.none()) {
      record(path.size(), path);
      return;
    }
    const std::size_t lb = std::max(lower_bound(remaining), memo_get(remaining));
    if (lb == kNone || path.size() + lb >= best_.load()) return;

    const std::size_t e = branch_element(remaining);
    for (auto j : ordered_children(remaining, e)) {
      if (path.size() + 1 >= best_.load()) break;
      DynamicBitset next = remaining;
      next.subtract(sets_[j]);
      if (pool != nullptr && depth < opt_.spawn_depth) {
        auto child_path = path;
        child_path.push_back(j);
        pool->submit([this, next = std::move(next), child_path = std::move(child_path), depth, pool]() mutable {
          explore(next, child_path, depth + 1, pool);
        });
      } else {
        path.push_back(j);
        explore(next, path, depth + 1, pool);
        path.pop_back();
      }
    }
    if (pool == nullptr || depth >= opt_.spawn_depth) {
      const std::size_t b = best_.load();
      if (b > path.size()) memo_put(remaining, b - path.size());
    }
  }

  std::size_t minimum_size(const DynamicBitset& all) {
    best_path_ = greedy(all);
    best_.store(best_path_.size());
    std::vector<std::size_t> path;
    if (opt_.threads <= 1) {
      explore(all, path, 0, nullptr);
    } else {
      WorkStealingPool pool(opt_.threads);
      pool.submit([&] {
        std::vector<std::size_t> p;
        explore(all, p, 0, &pool);
      });
      pool.wait_idle();
    }
    return best_.load();
  }

  // ---- phase 2
  /// Can `remaining` be covered by at most `budget` sets of index >= lo?
  bool feasible(const DynamicBitset& remaining, std::size_t budget, std::size_t lo) {
    nodes_.fetch_add(1, std::memory_order_relaxed);
    if (remaining.none()) return true;
    if (budget == 0) return false;
    const std::size_t lb = std::max(lower_bound(remaining, lo), memo_get(remaining));
    if (lb == kNone || lb > budget) return false;
    const std::uint64_t fkey = small_ ? (static_cast<std::uint64_t>(key32(remaining)) << 32) | lo : 0;
    if (small_) {
      auto it = infeasible_.find(fkey);
      if (it != infeasible_.end() && it->second >= budget) return false;
    }
    const std::size_t e = branch_element(remaining, lo);
    for (auto j : ordered_children(remaining, e, lo)) {
      DynamicBitset next = remaining;
      next.subtract(sets_[j]);
      if (feasible(next, budget - 1, lo)) return true;
    }
    if (small_) {
      auto& slot = infeasible_[fkey];
      slot = std::max(slot, budget);
    }
    return false;
  }

  std::vector<std::size_t> lex_least(const DynamicBitset& all, std::size_t k) {
    std::vector<std::size_t> chosen;
    DynamicBitset remaining = all;
    std::size_t lo = 0;
    for (std::size_t slot = 0; slot < k; ++slot) {
      bool placed = false;
      for (std::size_t j = lo; j < sets_.size(); ++j) {
        if (!sets_[j].intersects(remaining)) continue;
        DynamicBitset next = remaining;
        next.subtract(sets_[j]);
        if (feasible(next, k - slot - 1, j + 1)) {
          chosen.push_back(j);
          remaining = std::move(next);
          lo = j + 1;
          placed = true;
          break;
        }
      }
      if (!placed) throw InternalConsistencyError("set cover: no lexicographic completion of a minimum cover");
      if (remaining.none()) break;
    }
    if (remaining.any() || chosen.size() != k)
      throw InternalConsistencyError("set cover: phase 2 disagrees with phase 1 minimum");
    return chosen;
  }

  SetCoverOptions opt_;
  std::size_t universe_size_;
  std::vector<std::size_t> element_of_;
  std::vector<DynamicBitset> sets_;
  std::vector<std::size_t> original_;
  std::vector<std::vector<std::size_t>> covers_;
  bool small_ = false;

  std::atomic<std::size_t> best_{0};
  std::vector<std::size_t> best_path_;
  std::mutex best_mutex_;
  std::atomic<std::uint64_t> nodes_{0};

  std::mutex memo_mutex_;
  std::unordered_map<std::uint32_t, std::size_t> memo_;
  std::unordered_map<std::uint64_t, std::size_t> infeasible_;
};

}  // namespace detail

/// Exact minimum number of `sets` whose union contains `universe` (all bitsets share one length).
/// Throws InfeasibleError if some universe element is in no set.
inline SetCoverSolution min_set_cover(const DynamicBitset& universe, const std::vector<DynamicBitset>& sets,
                                      const SetCoverOptions& options = {}) {
  detail::SetCoverInstance inst(universe, sets, options);
  auto sol = inst.solve();
  sol.candidates_in = sets.size();
  return sol;
}

/// Brute-force minimum over all subsets of size <= max_size, or nullopt if none covers. Exponential;
/// intended for cross-checking the solver on small instances.
inline std::optional<std::size_t> exhaustive_min_cover(const DynamicBitset& universe,
                                                       const std::vector<DynamicBitset>& sets, std::size_t max_size) {
  if (universe.none()) return 0;
  std::vector<std::size_t> idx;
  DynamicBitset acc(universe.size());
  std::optional<std::size_t> found;
  for (std::size_t k = 1; k <= std::min(max_size, sets.size()) && !found; ++k) {
    idx.assign(k, 0);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      acc = DynamicBitset(universe.size());
      for (auto i : idx) acc |= sets[i];
      if (universe.is_subset_of(acc)) {
        found = k;
        break;
      }
      std::size_t p = k;
      while (p > 0 && idx[p - 1] == sets.size() - k + p - 1) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return found;
}

}  // namespace hypercover
