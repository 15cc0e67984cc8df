#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypercover/family.hpp"
#include "hypercover/search/candidates.hpp"
#include "hypercover/search/set_cover.hpp"

namespace hypercover {

/// A fully enumerated instance: the universe to cover and the candidate planes.
struct SearchProblem {
  SearchMode mode;
  int dim;
  std::optional<int> box;  // required for skew, nondegenerate and slicing modes
  DynamicBitset universe;
  std::vector<Candidate> candidates;
  bool complete;  // candidate space provably complete for the mode, not just within the box
};

struct SearchResult {
  SearchMode mode;
  int dim;
  std::optional<int> box;
  std::size_t minimum = 0;
  Family optimal{1};
  std::size_t candidates_considered = 0;
  std::size_t candidates_kept = 0;
  std::uint64_t nodes = 0;
  bool certified = false;  // exact over all hyperplanes; false means exact within the C-box only
};

struct SearchOptions {
  unsigned threads = 1;
  bool prune_dominated = true;
};

inline bool is_punctured_cover(const Family& f) {
  const auto idx = incidence(f);
  if (idx.counts[0] != 0) return false;
  for (std::size_t v = 1; v < idx.counts.size(); ++v)
    if (idx.counts[v] == 0) return false;
  return true;
}

inline SearchProblem build_problem(int n, SearchMode mode, std::optional<int> box, const SearchOptions& opt = {}) {
  check_cube_dim(n);
  SearchProblem p{mode, n, box, {}, {}, false};
  switch (mode) {
    case SearchMode::plain_cover:
    case SearchMode::punctured_cover: {
      const bool avoid = mode == SearchMode::punctured_cover;
      p.candidates = enumerate_sections(n, avoid);
      p.universe = DynamicBitset::full(vertex_count(n));
      if (avoid) p.universe.reset(0);
      p.complete = true;
      p.box.reset();
      break;
    }
    case SearchMode::skew_cover:
    case SearchMode::nondegenerate_cover:
    case SearchMode::edge_slicing: {
      if (!box) throw InputError(std::string(to_string(mode)) + " search requires a coefficient bound C");
      p.candidates = enumerate_box_hyperplanes(n, *box, mode, opt.prune_dominated).candidates;
      const std::size_t u = mode == SearchMode::nondegenerate_cover ? static_cast<std::size_t>(n) * vertex_count(n)
                            : mode == SearchMode::edge_slicing      ? edge_count(n)
                                                                    : vertex_count(n);
      p.universe = DynamicBitset::full(u);
      break;
    }
  }
  return p;
}

namespace detail {

inline void verify_search_result(const SearchResult& r) {
  const Family& f = r.optimal;
  bool ok = f.size() == r.minimum;
  switch (r.mode) {
    case SearchMode::plain_cover: ok = ok && is_cover(f).ok; break;
    case SearchMode::punctured_cover: ok = ok && is_punctured_cover(f); break;
    case SearchMode::skew_cover: ok = ok && is_skew_cover(f).ok; break;
    case SearchMode::nondegenerate_cover:
      ok = ok && is_nondegenerate_cover(f).ok && 2 * r.minimum >= static_cast<std::size_t>(r.dim);
      break;
    case SearchMode::edge_slicing:
      ok = ok && is_slicing_family(f).ok && 4 * static_cast<std::size_t>(*r.box) * r.minimum >= static_cast<std::size_t>(r.dim) &&
           r.minimum <= static_cast<std::size_t>(r.dim);
      break;
  }
  if (!ok)
    throw InternalConsistencyError("search result for mode " + std::string(to_string(r.mode)) +
                                   " fails re-verification or a proven bound");
}

}  // namespace detail

inline SearchResult solve(const SearchProblem& p, const SearchOptions& opt = {}) {
  std::vector<DynamicBitset> masks;
  masks.reserve(p.candidates.size());
  for (const auto& c : p.candidates) masks.push_back(c.mask(p.mode));
  SetCoverOptions sco;
  sco.threads = opt.threads;
  sco.prune_dominated = opt.prune_dominated;
  const auto sol = min_set_cover(p.universe, masks, sco);

  SearchResult r{p.mode, p.dim, p.box};
  r.minimum = sol.minimum;
  r.optimal = Family(p.dim);
  for (auto i : sol.chosen) r.optimal.add(p.candidates[i].plane);
  r.candidates_considered = p.candidates.size();
  r.candidates_kept = sol.candidates_kept;
  r.nodes = sol.nodes;
  r.certified = p.complete;
  detail::verify_search_result(r);
  return r;
}

/// Exact minimum cover size for a covering mode; box C is required for skew and nondegenerate modes.
inline SearchResult min_cover(int n, SearchMode mode, std::optional<int> box = std::nullopt,
                              const SearchOptions& opt = {}) {
  if (mode == SearchMode::edge_slicing) throw InputError("use min_slicing for edge-slicing mode");
  return solve(build_problem(n, mode, box, opt), opt);
}

/// Exact minimum slicing family with normals in [-C, C]^n.
inline SearchResult min_slicing(int n, int box, const SearchOptions& opt = {}) {
  return solve(build_problem(n, SearchMode::edge_slicing, box, opt), opt);
}

/// Minimum punctured cover of {0,1}^s equals s (s <= 4).
inline bool verify_alon_furedi(int s, const SearchOptions& opt = {}) {
  if (s < 1 || s > 4) throw BudgetError("verify_alon_furedi supports s in 1..4");
  return min_cover(s, SearchMode::punctured_cover, std::nullopt, opt).minimum == static_cast<std::size_t>(s);
}

struct OracleCheck {
  bool ran = false;
  bool agrees = false;
  std::optional<std::size_t> oracle_minimum;
  std::string note;
};

/// Exhaustive subset search over the problem's candidates, capped at `max_subsets` subsets.
inline OracleCheck oracle_check(const SearchProblem& p, const SearchResult& r, double max_subsets = 5e7) {
  OracleCheck out;
  std::vector<DynamicBitset> masks;
  for (const auto& c : p.candidates) masks.push_back(c.mask(p.mode));
  double work = 0, binom = 1;
  for (std::size_t k = 1; k <= r.minimum; ++k) {
    binom = binom * static_cast<double>(masks.size() - k + 1) / static_cast<double>(k);
    work += binom;
  }
  if (work > max_subsets) {
    out.note = "skipped: candidate space too large for exhaustive subsets";
    return out;
  }
  out.ran = true;
  out.oracle_minimum = exhaustive_min_cover(p.universe, masks, r.minimum);
  out.agrees = out.oracle_minimum && *out.oracle_minimum == r.minimum;
  out.note = out.agrees ? "exhaustive subset search agrees" : "exhaustive subset search DISAGREES";
  return out;
}

}  // namespace hypercover
