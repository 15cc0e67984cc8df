#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hypercover/family.hpp"

namespace hypercover {

enum class SearchMode { plain_cover, punctured_cover, skew_cover, nondegenerate_cover, edge_slicing };

inline std::string_view to_string(SearchMode m) {
  switch (m) {
    case SearchMode::plain_cover: return "plain-cover";
    case SearchMode::punctured_cover: return "punctured-cover";
    case SearchMode::skew_cover: return "skew-cover";
    case SearchMode::nondegenerate_cover: return "nondegenerate-cover";
    case SearchMode::edge_slicing: return "edge-slicing";
  }
  return "?";
}

inline SearchMode parse_search_mode(std::string_view s) {
  for (auto m : {SearchMode::plain_cover, SearchMode::punctured_cover, SearchMode::skew_cover,
                 SearchMode::nondegenerate_cover, SearchMode::edge_slicing})
    if (s == to_string(m)) return m;
  throw InputError("unknown search mode \"" + std::string(s) + "\"");
}

/// Candidate enumeration would exceed the configured work budget.
class BudgetError : public InputError {
 public:
  using InputError::InputError;
};

/// A candidate plane with its behaviour on the cube.
struct Candidate {
  Hyperplane plane;
  DynamicBitset covered;    // vertex bits, or edge bits in slicing mode
  DynamicBitset pair_mask;  // nondegenerate mode only: bit v*n + (i-1) for v on the plane, i in its support

  const DynamicBitset& mask(SearchMode m) const {
    return m == SearchMode::nondegenerate_cover ? pair_mask : covered;
  }
};

inline DynamicBitset pair_mask_of(const Hyperplane& h, const VertexSet& covered) {
  const int n = h.dim();
  DynamicBitset m(static_cast<std::size_t>(n) * vertex_count(n));
  const CoordMask supp = h.support().mask;
  covered.bits().for_each_set([&](std::size_t v) {
    for (CoordMask s = supp; s != 0; s &= s - 1) m.set(v * static_cast<std::size_t>(n) + std::countr_zero(s));
  });
  return m;
}

namespace detail {

/// Fraction-free Gaussian elimination; exact for small integer matrices.
inline std::int64_t bareiss_det(std::vector<std::int64_t> m, int k) {
  if (k == 0) return 1;
  std::int64_t sign = 1, prev = 1;
  auto at = [&](int r, int c) -> std::int64_t& { return m[static_cast<std::size_t>(r * k + c)]; };
  for (int p = 0; p < k - 1; ++p) {
    if (at(p, p) == 0) {
      int swap = -1;
      for (int r = p + 1; r < k; ++r)
        if (at(r, p) != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      for (int c = 0; c < k; ++c) std::swap(at(p, c), at(swap, c));
      sign = -sign;
    }
    for (int r = p + 1; r < k; ++r)
      for (int c = p + 1; c < k; ++c) at(r, c) = (at(r, c) * at(p, p) - at(r, p) * at(p, c)) / prev;
    prev = at(p, p);
  }
  return sign * at(k - 1, k - 1);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace detail

inline constexpr int kMaxSectionDim = 5;

/// Every hyperplane spanned by n affinely independent cube vertices, deduplicated and sorted in
/// canonical order. With `avoid_origin`, only planes missing the origin are kept (equivalently, the
/// solutions of <a, v> = 1 over n linearly independent non-zero vertices). Every cube section is
/// contained in one of these.
inline std::vector<Candidate> enumerate_sections(int n, bool avoid_origin) {
  check_cube_dim(n);
  if (n > kMaxSectionDim)
    throw BudgetError("section enumeration supports n <= " + std::to_string(kMaxSectionDim) + ", got " +
                      std::to_string(n));
  std::vector<std::uint32_t> pool;
  for (std::uint32_t v = avoid_origin ? 1 : 0; v < (1U << n); ++v) pool.push_back(v);

  std::map<std::vector<std::int64_t>, bool> seen;  // normal..., offset
  std::vector<std::size_t> pick(static_cast<std::size_t>(n));
  std::iota(pick.begin(), pick.end(), 0);
  const std::size_t cols = static_cast<std::size_t>(n) + 1;
  std::vector<std::int64_t> minor(static_cast<std::size_t>(n * n));
  if (pool.size() >= static_cast<std::size_t>(n)) {
    while (true) {
      // Cofactor expansion of the n x (n+1) matrix [p_k | 1] gives its null vector (a, -b).
      std::vector<std::int64_t> cof(cols);
      for (std::size_t drop = 0; drop < cols; ++drop) {
        std::size_t w = 0;
        for (int r = 0; r < n; ++r)
          for (std::size_t c = 0; c < cols; ++c) {
            if (c == drop) continue;
            const auto p = pool[pick[static_cast<std::size_t>(r)]];
            minor[w++] = c == static_cast<std::size_t>(n) ? 1 : static_cast<std::int64_t>((p >> c) & 1U);
          }
        const auto d = detail::bareiss_det(minor, n);
        cof[drop] = (drop % 2 == 0) ? d : -d;
      }
      std::int64_t g = 0;
      for (int i = 0; i < n; ++i) g = detail::gcd64(g, cof[static_cast<std::size_t>(i)]);
      if (g != 0) {
        std::vector<std::int64_t> key(cof.begin(), cof.begin() + n);
        std::int64_t b = -cof.back();
        const auto first = *std::find_if(key.begin(), key.end(), [](auto x) { return x != 0; });
        const std::int64_t s = first < 0 ? -g : g;
        for (auto& x : key) x /= s;
        b /= s;
        if (!(avoid_origin && b == 0)) {
          key.push_back(b);
          seen.emplace(std::move(key), true);
        }
      }
      std::size_t p = pick.size();
      while (p > 0 && pick[p - 1] == pool.size() - pick.size() + p - 1) --p;
      if (p == 0) break;
      ++pick[p - 1];
      for (std::size_t q = p; q < pick.size(); ++q) pick[q] = pick[q - 1] + 1;
    }
  }

  std::vector<Candidate> out;
  out.reserve(seen.size());
  for (const auto& [key, unused] : seen) {
    std::vector<BigInt> a(key.begin(), key.end() - 1);
    Hyperplane h(std::move(a), Rational(key.back()));
    VertexSet cov = covered_set(h, n);
    DynamicBitset pm = pair_mask_of(h, cov);
    out.push_back({std::move(h), std::move(cov.bits()), std::move(pm)});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return canonical_less(x.plane, y.plane); });
  return out;
}

struct BoxEnumerationStats {
  std::size_t normals = 0;   // primitive canonical normals visited
  std::size_t raw = 0;       // (normal, offset) pairs with non-empty behaviour
  std::size_t distinct = 0;  // behaviour-distinct candidates
  std::size_t kept = 0;      // after dominance pruning
};

struct BoxCandidates {
  std::vector<Candidate> candidates;  // canonical order
  BoxEnumerationStats stats;
};

inline constexpr std::uint64_t kBoxWorkBudget = std::uint64_t{1} << 32;

/// All canonical planes with normal in [-C, C]^n and offset k/2, |k/2| <= Cn, reduced to one
/// representative (the canonically least) per behaviour in `mode`'s universe. Optionally drops
/// candidates whose behaviour is a strict subset of another's.
inline BoxCandidates enumerate_box_hyperplanes(int n, int box, SearchMode mode, bool prune_dominated = true) {
  check_cube_dim(n);
  if (box < 1) throw InputError("coefficient bound C must be >= 1");
  if (mode == SearchMode::plain_cover || mode == SearchMode::punctured_cover)
    throw InputError("box enumeration supports skew-cover, nondegenerate-cover and edge-slicing");
  const bool slicing = mode == SearchMode::edge_slicing;
  const std::uint64_t side = 2 * static_cast<std::uint64_t>(box) + 1;
  std::uint64_t normals_total = 1;
  for (int i = 0; i < n; ++i) {
    normals_total *= side;
    if (normals_total > (std::uint64_t{1} << 26)) throw BudgetError("too many candidate normals");
  }
  const std::uint64_t per_normal = slicing ? (4ULL * box * n + 1) * edge_count(n) : vertex_count(n);
  if (normals_total * per_normal > kBoxWorkBudget)
    throw BudgetError("box enumeration budget exceeded for n=" + std::to_string(n) + ", C=" + std::to_string(box));

  const std::size_t verts = vertex_count(n);
  BoxCandidates out;
  std::unordered_map<DynamicBitset, std::size_t, DynamicBitsetHash> index;
  std::vector<std::int64_t> a(static_cast<std::size_t>(n), -box);
  std::vector<std::int64_t> val(verts);
  const std::size_t per_dir = verts / 2;

  auto emit = [&](const std::vector<std::int64_t>& normal, Rational offset, DynamicBitset covered) {
    if (covered.none()) return;
    ++out.stats.raw;
    Hyperplane h(std::vector<BigInt>(normal.begin(), normal.end()), std::move(offset));
    DynamicBitset pm;
    if (mode == SearchMode::nondegenerate_cover) pm = pair_mask_of(h, VertexSet(n, covered));
    const DynamicBitset& key = mode == SearchMode::nondegenerate_cover ? pm : covered;
    if (index.count(key)) return;
    index.emplace(key, out.candidates.size());
    out.candidates.push_back({std::move(h), std::move(covered), std::move(pm)});
  };

  // Odometer over [-C, C]^n in lexicographic order.
  while (true) {
    std::int64_t g = 0;
    std::int64_t first = 0;
    bool skew = true;
    for (auto x : a) {
      g = detail::gcd64(g, x);
      if (first == 0) first = x;
      skew = skew && x != 0;
    }
    if (g == 1 && first > 0 && (mode != SearchMode::skew_cover || skew)) {
      ++out.stats.normals;
      val[0] = 0;
      std::int64_t lo = 0, hi = 0;
      for (std::size_t v = 1; v < verts; ++v) {
        val[v] = val[v & (v - 1)] + a[static_cast<std::size_t>(std::countr_zero(v))];
        lo = std::min(lo, val[v]);
        hi = std::max(hi, val[v]);
      }
      if (!slicing) {
        for (std::int64_t t = lo; t <= hi; ++t) {
          DynamicBitset cov(verts);
          for (std::size_t v = 0; v < verts; ++v)
            if (val[v] == t) cov.set(v);
          emit(a, Rational(t), std::move(cov));
        }
      } else {
        for (std::int64_t k = 2 * lo; k <= 2 * hi; ++k) {
          DynamicBitset cut(edge_count(n));
          for (int d = 0; d < n; ++d) {
            const std::size_t bit = std::size_t{1} << d;
            for (std::size_t v = 0; v < verts; ++v) {
              if (v & bit) continue;
              const std::int64_t x = 2 * val[v] - k, y = 2 * val[v | bit] - k;
              if ((x < 0 && y > 0) || (x > 0 && y < 0)) {
                const std::size_t rank = (v & (bit - 1)) | ((v >> (d + 1)) << d);
                cut.set(static_cast<std::size_t>(d) * per_dir + rank);
              }
            }
          }
          emit(a, Rational(k, 2), std::move(cut));
        }
      }
    }
    int p = n - 1;
    while (p >= 0 && a[static_cast<std::size_t>(p)] == box) a[static_cast<std::size_t>(p--)] = -box;
    if (p < 0) break;
    ++a[static_cast<std::size_t>(p)];
  }
  std::sort(out.candidates.begin(), out.candidates.end(),
            [](const auto& x, const auto& y) { return canonical_less(x.plane, y.plane); });
  out.stats.distinct = out.candidates.size();

  if (prune_dominated) {
    std::vector<std::size_t> size(out.candidates.size());
    for (std::size_t i = 0; i < size.size(); ++i) size[i] = out.candidates[i].mask(mode).count();
    std::vector<std::size_t> order(size.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return size[x] > size[y]; });
    std::vector<bool> drop(size.size(), false);
    std::vector<std::size_t> kept;
    for (auto i : order) {
      for (auto j : kept)
        if (size[j] > size[i] && out.candidates[i].mask(mode).is_subset_of(out.candidates[j].mask(mode))) {
          drop[i] = true;
          break;
        }
      if (!drop[i]) kept.push_back(i);
    }
    std::vector<Candidate> filtered;
    for (std::size_t i = 0; i < out.candidates.size(); ++i)
      if (!drop[i]) filtered.push_back(std::move(out.candidates[i]));
    out.candidates = std::move(filtered);
  }
  out.stats.kept = out.candidates.size();
  return out;
}

}  // namespace hypercover
