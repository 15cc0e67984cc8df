#pragma once

// Mechanical executor of the n/2 lower-bound argument for nondegenerate covers. Given a family
// satisfying the nondegeneracy condition it rebuilds every intermediate object of the argument
// (minimizing vertex, flipped family, planes through the origin, greedy support partition,
// sign-majority refinement, the subcube Q_S) and checks the two subcube claims exhaustively.
// A failed check means a bug somewhere in this library, never bad input.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypercover/family.hpp"

namespace hypercover {

/// The input does not satisfy the nondegeneracy condition.
class PreconditionViolation : public std::invalid_argument {
 public:
  explicit PreconditionViolation(Violation v)
      : std::invalid_argument("family is not a nondegenerate cover: vertex " + v.vertex.to_string() +
                              ", direction " + std::to_string(v.direction)),
        violation(v) {}

  Violation violation;
};

/// Replaces x_i by 1 - x_i for every i with w_i = 1. Vertex v lies on H iff v xor w lies on the image.
inline Hyperplane flip_to_origin(const Hyperplane& h, const Vertex& w) {
  detail::check_same_dim(h, w.dim());
  std::vector<BigInt> a = h.normal();
  Rational b = h.offset();
  for (int i = 1; i <= h.dim(); ++i) {
    if (w.coordinate(i) == 0) continue;
    auto& ai = a[static_cast<std::size_t>(i - 1)];
    b -= ai;
    ai = -ai;
  }
  return Hyperplane(std::move(a), std::move(b));
}

inline Family flip_to_origin(const Family& f, const Vertex& w) {
  if (f.dim() != w.dim()) throw DimensionError("flip vertex dimension does not match family");
  Family out(f.dim());
  for (const auto& h : f) out.add(flip_to_origin(h, w));
  return out;
}

/// Vertex with the fewest incident planes; ties go to the smallest bitmask.
inline Vertex minimizing_vertex(const Family& f, const IncidenceIndex& idx) {
  std::size_t best = 0;
  for (std::size_t v = 1; v < idx.counts.size(); ++v)
    if (idx.counts[v] < idx.counts[best]) best = v;
  return Vertex(f.dim(), static_cast<std::uint32_t>(best));
}

inline Vertex minimizing_vertex(const Family& f) { return minimizing_vertex(f, incidence(f)); }

/// T_j = supp(a_j) minus the supports of all earlier normals. Blocks may be empty.
inline std::vector<CoordMask> greedy_support_partition(int dim, const std::vector<SupportMask>& supports) {
  std::vector<CoordMask> blocks;
  blocks.reserve(supports.size());
  CoordMask seen = 0;
  for (const auto& s : supports) {
    if (s.dim != dim) throw DimensionError("support mask dimension mismatch");
    blocks.push_back(s.mask & ~seen);
    seen |= s.mask;
  }
  if (seen != full_coord_mask(dim))
    throw InputError("supports do not exhaust all coordinates; missing coordinate " +
                     std::to_string(std::countr_zero(~seen & full_coord_mask(dim)) + 1));
  return blocks;
}

inline std::vector<CoordMask> greedy_support_partition(const std::vector<Hyperplane>& planes) {
  if (planes.empty()) throw InputError("greedy_support_partition needs at least one normal");
  std::vector<SupportMask> supports;
  for (const auto& h : planes) supports.push_back(h.support());
  return greedy_support_partition(planes.front().dim(), supports);
}

struct RefinedBlock {
  CoordMask block = 0;    // T_j
  CoordMask refined = 0;  // T_j', the larger sign class inside T_j
  int sign = 0;           // common sign of a_j on T_j'; 0 when T_j is empty
};

/// Larger sign class of `normal` restricted to `block`; ties go to the positive class.
inline RefinedBlock sign_majority_refine(CoordMask block, const std::vector<BigInt>& normal) {
  CoordMask pos = 0, neg = 0;
  for (CoordMask m = block; m != 0; m &= m - 1) {
    const int i = std::countr_zero(m);
    const auto& a = normal.at(static_cast<std::size_t>(i));
    if (a > 0) pos |= CoordMask{1} << i;
    else if (a < 0) neg |= CoordMask{1} << i;
    else throw InputError("block contains a coordinate outside the normal's support");
  }
  if (block == 0) return {};
  if (std::popcount(pos) >= std::popcount(neg)) return {block, pos, +1};
  return {block, neg, -1};
}

/// Trace of a plane on U = {x : supp(x) within S}, written in the |S| coordinates of S (ascending).
/// `plane` is empty when the restricted normal vanishes, i.e. the trace is empty.
struct RestrictedHyperplane {
  int dim = 0;
  std::optional<Hyperplane> plane;

  bool empty_trace() const noexcept { return !plane.has_value(); }
};

inline RestrictedHyperplane restrict_to_subspace(const Hyperplane& h, CoordMask subset) {
  const int n = h.dim();
  if (subset == 0 || (subset & ~full_coord_mask(n)) != 0) throw InputError("restriction subset invalid");
  if (h.offset() == 0) throw InputError("cannot restrict a plane through the origin: " + h.to_string());
  std::vector<BigInt> a;
  bool nonzero = false;
  for (CoordMask m = subset; m != 0; m &= m - 1) {
    a.push_back(h.normal()[static_cast<std::size_t>(std::countr_zero(m))]);
    nonzero = nonzero || a.back() != 0;
  }
  RestrictedHyperplane out{static_cast<int>(a.size()), std::nullopt};
  if (nonzero) out.plane.emplace(std::move(a), h.offset());
  return out;
}

struct WitnessReport {
  int dim = 0;
  std::size_t family_size = 0;
  Vertex w{1, 0};
  CoordMask flip_mask = 0;
  std::uint32_t min_incidence = 0;
  Family flipped{1};
  std::vector<std::size_t> h0_indices;  // 0-based positions in the family, in family order
  std::vector<CoordMask> partition;     // T_1..T_m
  std::vector<RefinedBlock> refined;    // T_1'..T_m'
  CoordMask s = 0;
  VertexSet qs{1};  // in the flipped frame: vertices supported inside S
  bool claim_qs_ok = false;
  bool claim_qs_mechanism_ok = false;
  bool claim_subcube_ok = false;
  std::vector<std::size_t> outside_indices;  // planes of H \ H_0
  std::vector<RestrictedHyperplane> restricted;
  bool restricted_cover_ok = false;
  std::size_t lower_bound = 0;  // ceil(n/2)
  bool certified = false;       // |H| >= |H \ H_0| >= |S| >= ceil(n/2)

  int s_size() const noexcept { return std::popcount(s); }
};

namespace detail {

[[noreturn]] inline void claim_failure(const std::string& what) {
  throw InternalConsistencyError("witness pipeline: " + what);
}

}  // namespace detail

/// Runs the full argument on `f`. Throws PreconditionViolation if `f` is not a nondegenerate cover
/// and InternalConsistencyError if any claim fails to verify.
inline WitnessReport run_pipeline(const Family& f) {
  const int n = f.dim();
  const IncidenceIndex idx = incidence(f);
  if (auto check = is_nondegenerate_cover(f, idx); !check.ok) throw PreconditionViolation(*check.violation);

  WitnessReport r;
  r.dim = n;
  r.family_size = f.size();
  r.w = minimizing_vertex(f, idx);
  r.flip_mask = r.w.bits();
  r.min_incidence = idx.counts[r.w.bits()];
  r.flipped = flip_to_origin(f, r.w);
  const Vertex origin(n, 0);

  std::vector<Hyperplane> h0;
  for (std::size_t i = 0; i < r.flipped.size(); ++i) {
    if (contains(r.flipped[i], origin)) {
      r.h0_indices.push_back(i);
      h0.push_back(r.flipped[i]);
    } else {
      r.outside_indices.push_back(i);
    }
  }
  if (h0.size() != r.min_incidence) detail::claim_failure("|H_0| differs from the minimum incidence count");

  r.partition = greedy_support_partition(n, [&] {
    std::vector<SupportMask> s;
    for (const auto& h : h0) s.push_back(h.support());
    return s;
  }());
  CoordMask union_check = 0;
  for (std::size_t j = 0; j < h0.size(); ++j) {
    if (union_check & r.partition[j]) detail::claim_failure("T blocks overlap");
    union_check |= r.partition[j];
    r.refined.push_back(sign_majority_refine(r.partition[j], h0[j].normal()));
    const auto& blk = r.refined.back();
    if ((blk.refined & ~blk.block) != 0 || 2 * std::popcount(blk.refined) < std::popcount(blk.block))
      detail::claim_failure("refined block too small");
    r.s |= blk.refined;
  }
  r.lower_bound = static_cast<std::size_t>((n + 1) / 2);
  if (static_cast<std::size_t>(r.s_size()) < r.lower_bound) detail::claim_failure("|S| < ceil(n/2)");

  // Q_S and the two claims, exhaustively.
  r.qs = VertexSet(n);
  const auto s32 = static_cast<std::uint32_t>(r.s);
  r.claim_qs_ok = r.claim_qs_mechanism_ok = r.claim_subcube_ok = true;
  for (std::uint32_t v = s32;; v = (v - 1) & s32) {
    r.qs.bits().set(v);
    if (v != 0) {
      const Vertex vert(n, v);
      bool missed_by_h0 = false;
      for (const auto& h : h0) missed_by_h0 = missed_by_h0 || !contains(h, vert);
      if (!missed_by_h0) r.claim_qs_ok = false;

      // The first H_0 plane touching supp(v) meets it only inside T_j' and has <a_j, v> != 0.
      for (std::size_t j = 0; j < h0.size(); ++j) {
        const CoordMask meet = h0[j].support().mask & v;
        if (meet == 0) continue;
        if ((meet & ~r.refined[j].refined) != 0 || eval(h0[j], vert) == 0) r.claim_qs_mechanism_ok = false;
        break;
      }

      bool covered_outside = false;
      for (std::size_t i : r.outside_indices) covered_outside = covered_outside || contains(r.flipped[i], vert);
      if (!covered_outside) r.claim_subcube_ok = false;
    }
    if (v == 0) break;
  }
  for (std::size_t i : r.outside_indices)
    if (contains(r.flipped[i], origin)) r.claim_subcube_ok = false;
  if (!r.claim_qs_ok) detail::claim_failure("some non-zero vertex of Q_S lies on every plane of H_0");
  if (!r.claim_qs_mechanism_ok) detail::claim_failure("first-meeting plane argument fails on Q_S");
  if (!r.claim_subcube_ok) detail::claim_failure("H \\ H_0 does not cover Q_S minus the origin");

  // Restrict H \ H_0 to U and re-check the punctured cover in |S| dimensions.
  const int s_dim = r.s_size();
  std::vector<Hyperplane> traces;
  for (std::size_t i : r.outside_indices) {
    r.restricted.push_back(restrict_to_subspace(r.flipped[i], r.s));
    if (r.restricted.back().plane) traces.push_back(*r.restricted.back().plane);
  }
  r.restricted_cover_ok = true;
  for (std::uint32_t v = 0; v < (std::uint32_t{1} << s_dim); ++v) {
    bool hit = false;
    for (const auto& t : traces) hit = hit || contains(t, Vertex(s_dim, v));
    if (hit != (v != 0)) r.restricted_cover_ok = false;
  }
  if (!r.restricted_cover_ok) detail::claim_failure("restricted planes do not form a punctured cover of Q_S");

  // Punctured-cube bound applied to the restricted family.
  if (r.outside_indices.size() < static_cast<std::size_t>(s_dim))
    detail::claim_failure("|H \\ H_0| < |S| contradicts the punctured-cube bound");
  r.certified = f.size() >= r.outside_indices.size() && r.outside_indices.size() >= static_cast<std::size_t>(s_dim) &&
                static_cast<std::size_t>(s_dim) >= r.lower_bound;
  if (!r.certified) detail::claim_failure("final chain of inequalities fails");
  return r;
}

namespace detail {

inline std::string format_mask(CoordMask m) {
  std::string s = "{";
  bool first = true;
  for (int i : mask_to_indices(m)) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

}  // namespace detail

/// Human-readable walk through the report.
inline std::string format_trace(const WitnessReport& r) {
  std::ostringstream os;
  os << "family: " << r.family_size << " planes in dimension " << r.dim << "\n";
  os << "minimizing vertex w = " << r.w.to_string() << " with " << r.min_incidence << " incident planes\n";
  os << "flipped coordinates: " << detail::format_mask(r.flip_mask) << "\n";
  for (std::size_t i = 0; i < r.flipped.size(); ++i) os << "  H" << i + 1 << ": " << r.flipped[i].to_string() << "\n";
  os << "planes through the origin:";
  for (auto i : r.h0_indices) os << " H" << i + 1;
  os << "\n";
  for (std::size_t j = 0; j < r.partition.size(); ++j) {
    os << "  T" << j + 1 << " = " << detail::format_mask(r.partition[j]) << ", T" << j + 1
       << "' = " << detail::format_mask(r.refined[j].refined);
    if (r.refined[j].sign != 0) os << " (sign " << (r.refined[j].sign > 0 ? '+' : '-') << ")";
    os << "\n";
  }
  os << "S = " << detail::format_mask(r.s) << ", |S| = " << r.s_size() << " >= " << r.lower_bound << "\n";
  os << "Q_S: " << r.qs.size() << " vertices\n";
  os << "claim (some plane through 0 misses each v in Q_S \\ {0}): " << (r.claim_qs_ok ? "verified" : "FAILED")
     << "\n";
  os << "claim (remaining planes cover Q_S \\ {0}, avoid 0): " << (r.claim_subcube_ok ? "verified" : "FAILED")
     << "\n";
  std::size_t nonempty = 0;
  for (const auto& t : r.restricted) nonempty += t.plane ? 1 : 0;
  os << "restricted to U: " << r.restricted.size() << " traces (" << nonempty << " non-empty), punctured cover "
     << (r.restricted_cover_ok ? "verified" : "FAILED") << "\n";
  os << "chain: |H| = " << r.family_size << " >= |H \\ H_0| = " << r.outside_indices.size() << " >= |S| = "
     << r.s_size() << " >= ceil(n/2) = " << r.lower_bound << "\n";
  return os.str();
}

}  // namespace hypercover
