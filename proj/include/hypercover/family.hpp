#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "hypercover/geometry.hpp"

namespace hypercover {

/// Ordered, duplicate-free hyperplane collection in a fixed cube dimension. Keeps insertion order.
class Family {
 public:
  explicit Family(int dim) : dim_(dim) { check_cube_dim(dim); }

  Family(int dim, std::vector<Hyperplane> planes) : Family(dim) {
    for (auto& h : planes) add(std::move(h));
  }

  /// Appends `h` unless an equal (canonical) plane is already present. Returns whether it was added.
  bool add(Hyperplane h) {
    if (h.dim() != dim_)
      throw DimensionError("plane of dimension " + std::to_string(h.dim()) + " added to family of dimension " +
                           std::to_string(dim_));
    if (!seen_.insert(h).second) return false;
    planes_.push_back(std::move(h));
    return true;
  }

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return planes_.size(); }
  bool empty() const noexcept { return planes_.empty(); }
  const std::vector<Hyperplane>& planes() const noexcept { return planes_; }
  const Hyperplane& operator[](std::size_t i) const { return planes_.at(i); }
  auto begin() const noexcept { return planes_.begin(); }
  auto end() const noexcept { return planes_.end(); }

  friend bool operator==(const Family& x, const Family& y) { return x.dim_ == y.dim_ && x.planes_ == y.planes_; }

 private:
  int dim_;
  std::vector<Hyperplane> planes_;
  std::unordered_set<Hyperplane, HyperplaneHash> seen_;
};

/// Per-vertex incidence: how many planes pass through each vertex, and the union of their supports.
struct IncidenceIndex {
  int dim = 0;
  std::vector<std::uint32_t> counts;
  std::vector<std::uint32_t> support_union;

  std::uint32_t count(const Vertex& v) const { return counts.at(v.bits()); }
  CoordMask support_of(const Vertex& v) const { return support_union.at(v.bits()); }
};

inline IncidenceIndex incidence(const Family& f) {
  IncidenceIndex idx;
  idx.dim = f.dim();
  idx.counts.assign(vertex_count(f.dim()), 0);
  idx.support_union.assign(vertex_count(f.dim()), 0);
  for (const auto& h : f) {
    const auto supp = static_cast<std::uint32_t>(h.support().mask);
    detail::for_each_vertex_value(h, [&](std::uint32_t v, const auto& value) {
      if (value == 0) {
        ++idx.counts[v];
        idx.support_union[v] |= supp;
      }
    });
  }
  return idx;
}

struct CoverCheck {
  bool ok = false;
  std::optional<Vertex> uncovered;  // smallest uncovered vertex
};

inline CoverCheck is_cover(const Family& f) {
  VertexSet covered(f.dim());
  for (const auto& h : f) covered.bits() |= covered_set(h, f.dim()).bits();
  if (covered.bits().all()) return {true, std::nullopt};
  std::size_t first = 0;
  while (covered.bits().test(first)) ++first;
  return {false, Vertex(f.dim(), static_cast<std::uint32_t>(first))};
}

struct SkewCoverCheck {
  bool ok = false;
  std::optional<Vertex> uncovered;
  std::optional<std::size_t> non_skew_plane;  // first plane with a zero normal entry
};

inline SkewCoverCheck is_skew_cover(const Family& f) {
  SkewCoverCheck out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!is_skew(f[i])) {
      out.non_skew_plane = i;
      break;
    }
  }
  const auto cover = is_cover(f);
  out.uncovered = cover.uncovered;
  out.ok = cover.ok && !out.non_skew_plane;
  return out;
}

/// A (vertex, direction) pair for which no plane through the vertex has a non-zero coefficient in
/// that direction. `uncovered` is set when no plane passes through the vertex at all.
struct Violation {
  Vertex vertex;
  int direction;  // 1-based
  bool uncovered = false;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct NondegeneracyCheck {
  bool ok = false;
  std::optional<Violation> violation;  // lexicographically smallest (vertex, direction)
};

inline NondegeneracyCheck is_nondegenerate_cover(const Family& f, const IncidenceIndex& idx) {
  const auto full = static_cast<std::uint32_t>(full_coord_mask(f.dim()));
  for (std::size_t v = 0; v < idx.counts.size(); ++v) {
    const std::uint32_t missing = full & ~idx.support_union[v];
    if (missing != 0) {
      return {false, Violation{Vertex(f.dim(), static_cast<std::uint32_t>(v)), std::countr_zero(missing) + 1,
                               idx.counts[v] == 0}};
    }
  }
  return {true, std::nullopt};
}

inline NondegeneracyCheck is_nondegenerate_cover(const Family& f) { return is_nondegenerate_cover(f, incidence(f)); }

/// True iff the violation genuinely fails the nondegeneracy condition for `f`.
inline bool violation_holds(const Family& f, const Violation& viol) {
  for (const auto& h : f)
    if (contains(h, viol.vertex) && h.coefficient(viol.direction) != 0) return false;
  return true;
}

struct SlicingCheck {
  bool ok = false;
  std::optional<Edge> unsliced;  // smallest unsliced edge index
};

inline SlicingCheck is_slicing_family(const Family& f) {
  EdgeSet sliced(f.dim());
  for (const auto& h : f) sliced.bits() |= sliced_set(h, f.dim()).bits();
  if (sliced.bits().all()) return {true, std::nullopt};
  std::size_t first = 0;
  while (sliced.bits().test(first)) ++first;
  return {false, Edge::from_index(f.dim(), first)};
}

/// Smallest C with every canonical normal entry in [-C, C]; 0 for the empty family.
inline BigInt max_abs_coefficient(const Family& f) {
  BigInt c = 0;
  for (const auto& h : f)
    for (const auto& a : h.normal()) c = std::max(c, BigInt(boost::multiprecision::abs(a)));
  return c;
}

}  // namespace hypercover
