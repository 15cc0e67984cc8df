#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hypercover/family.hpp"

namespace hypercover {

/// A plane whose canonical normal has an entry outside [-C, C].
class CoefficientBoxError : public InputError {
 public:
  CoefficientBoxError(std::size_t plane_index, const Hyperplane& plane, int box)
      : InputError("plane #" + std::to_string(plane_index + 1) + " (" + plane.to_string() +
                   ") has a coefficient outside [-" + std::to_string(box) + ", " + std::to_string(box) + "]"),
        plane_index(plane_index),
        box(box) {}

  std::size_t plane_index;
  int box;
};

/// The input to the reduction does not slice every edge.
class NotSlicingError : public std::invalid_argument {
 public:
  explicit NotSlicingError(Edge e)
      : std::invalid_argument("family is not a slicing family: edge " + e.to_string() + " is not sliced"),
        edge(e) {}

  Edge edge;
};

inline bool in_box(const Hyperplane& h, int box) {
  for (const auto& a : h.normal())
    if (a > box || a < -box) return false;
  return true;
}

/// S_H for one source plane: same normal, offsets floor(b) + z for z = -(C-1)..C.
struct ExpansionRecord {
  Hyperplane source;
  std::vector<Hyperplane> produced;
  int box;
};

inline ExpansionRecord expand_hyperplane(const Hyperplane& h, int box) {
  if (box < 1) throw InputError("coefficient bound C must be >= 1");
  if (!in_box(h, box)) throw CoefficientBoxError(0, h, box);
  ExpansionRecord rec{h, {}, box};
  const BigInt base = floor_rational(h.offset());
  rec.produced.reserve(static_cast<std::size_t>(2 * box));
  for (int z = -(box - 1); z <= box; ++z) rec.produced.emplace_back(h.normal(), Rational(base + z));
  return rec;
}

struct ReductionResult {
  Family cover;                           // union of all S_H, deduplicated, in source order
  std::vector<ExpansionRecord> expansions;
  std::size_t size_bound = 0;             // 2C * |source family|
};

/// Every slicing plane of every edge satisfies |<a,v> - <a,v'>| = |a_i| <= C with opposite non-zero
/// signs, hence |<a,v> - b| < C at both endpoints. Throws InternalConsistencyError if not; returns
/// the number of (edge, plane) pairs checked.
inline std::size_t check_slicing_inequalities(const Family& f, int box) {
  std::size_t checked = 0;
  for (const auto& h : f) {
    const EdgeSet sliced = sliced_set(h, f.dim());
    sliced.bits().for_each_set([&](std::size_t idx) {
      const Edge e = Edge::from_index(f.dim(), idx);
      const Rational lo = eval(h, e.base());
      const Rational hi = eval(h, e.tip());
      const Rational gap = hi - lo;
      const BigInt& ai = h.coefficient(e.direction());
      const bool ok = gap == Rational(ai) && ai != 0 && boost::multiprecision::abs(ai) <= box &&
                      lo.sign() * hi.sign() < 0 && boost::multiprecision::abs(lo) < box &&
                      boost::multiprecision::abs(hi) < box;
      if (!ok)
        throw InternalConsistencyError("slicing inequality fails for plane " + h.to_string() + " on edge " +
                                       e.to_string());
      ++checked;
    });
  }
  return checked;
}

/// Replaces each plane of a box-C slicing family by its 2C parallel integer translates. The result
/// satisfies the nondegeneracy condition and has at most 2C |f| planes.
inline ReductionResult reduce_slicing_to_cover(const Family& f, int box) {
  if (box < 1) throw InputError("coefficient bound C must be >= 1");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!in_box(f[i], box)) throw CoefficientBoxError(i, f[i], box);
  if (const auto check = is_slicing_family(f); !check.ok) throw NotSlicingError(*check.unsliced);

  ReductionResult out{Family(f.dim()), {}, 2 * static_cast<std::size_t>(box) * f.size()};
  out.expansions.reserve(f.size());
  for (const auto& h : f) {
    out.expansions.push_back(expand_hyperplane(h, box));
    for (const auto& p : out.expansions.back().produced) out.cover.add(p);
  }
  return out;
}

}  // namespace hypercover
