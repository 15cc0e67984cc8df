#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hypercover/bitset.hpp"
#include "hypercover/rational.hpp"

namespace hypercover {

/// Largest cube dimension supported by the bitset-backed types (2^24 vertices).
inline constexpr int kMaxCubeDim = 24;
/// Largest hyperplane dimension (support masks are 64-bit).
inline constexpr int kMaxPlaneDim = 64;

using CoordMask = std::uint64_t;  // bit i <-> coordinate i+1

inline void check_cube_dim(int n) {
  if (n < 1 || n > kMaxCubeDim)
    throw DimensionError("cube dimension " + std::to_string(n) + " outside 1.." + std::to_string(kMaxCubeDim));
}

inline CoordMask full_coord_mask(int n) { return n >= 64 ? ~CoordMask{0} : (CoordMask{1} << n) - 1; }

// ---------------------------------------------------------------------------
// Vertex / Edge

/// A vertex of {0,1}^n; bit i of `bits` is coordinate x_{i+1}.
class Vertex {
 public:
  Vertex(int dim, std::uint32_t bits) : dim_(dim), bits_(bits) {
    check_cube_dim(dim);
    if (dim < 32 && (bits >> dim) != 0) throw DimensionError("vertex bits exceed dimension");
  }

  static Vertex from_coordinates(std::initializer_list<int> coords) {
    std::uint32_t bits = 0;
    int i = 0;
    for (int c : coords) {
      if (c != 0 && c != 1) throw InputError("vertex coordinates must be 0 or 1");
      if (c) bits |= std::uint32_t{1} << i;
      ++i;
    }
    return Vertex(i, bits);
  }

  int dim() const noexcept { return dim_; }
  std::uint32_t bits() const noexcept { return bits_; }
  /// Coordinate x_i for i in 1..dim.
  int coordinate(int i) const noexcept { return static_cast<int>((bits_ >> (i - 1)) & 1U); }
  int weight() const noexcept { return std::popcount(bits_); }

  Vertex flipped(std::uint32_t mask) const { return Vertex(dim_, bits_ ^ mask); }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (int i = 1; i <= dim_; ++i) {
      if (i > 1) s += ',';
      s += static_cast<char>('0' + coordinate(i));
    }
    return s + ")";
  }

 private:
  int dim_;
  std::uint32_t bits_;
};

/// Cube edge: `base` has a 0 in coordinate `direction` (1-based); the other endpoint has a 1 there.
class Edge {
 public:
  Edge(Vertex base, int direction) : base_(base), direction_(direction) {
    if (direction < 1 || direction > base.dim()) throw DimensionError("edge direction out of range");
    if (base.coordinate(direction) != 0) throw InputError("edge base must have a 0 in its direction");
  }

  int dim() const noexcept { return base_.dim(); }
  Vertex base() const noexcept { return base_; }
  Vertex tip() const { return base_.flipped(std::uint32_t{1} << (direction_ - 1)); }
  int direction() const noexcept { return direction_; }

  /// (direction-1) * 2^(n-1) + rank of base among vertices with a 0 in that direction.
  std::size_t index() const noexcept {
    const int d = direction_ - 1;
    const std::uint32_t low = base_.bits() & ((std::uint32_t{1} << d) - 1);
    const std::uint32_t high = base_.bits() >> (d + 1);
    const std::size_t rank = low | (static_cast<std::size_t>(high) << d);
    return (static_cast<std::size_t>(d) << (dim() - 1)) + rank;
  }

  static Edge from_index(int n, std::size_t index) {
    check_cube_dim(n);
    const std::size_t per_dir = std::size_t{1} << (n - 1);
    if (index >= per_dir * static_cast<std::size_t>(n)) throw DimensionError("edge index out of range");
    const int d = static_cast<int>(index / per_dir);
    const std::size_t rank = index % per_dir;
    const std::uint32_t low = static_cast<std::uint32_t>(rank) & ((std::uint32_t{1} << d) - 1);
    const std::uint32_t high = static_cast<std::uint32_t>(rank >> d);
    return Edge(Vertex(n, low | (high << (d + 1))), d + 1);
  }

  friend bool operator==(const Edge&, const Edge&) = default;

  std::string to_string() const { return "(" + base_.to_string() + ", dir " + std::to_string(direction_) + ")"; }

 private:
  Vertex base_;
  int direction_;
};

inline std::size_t vertex_count(int n) { return std::size_t{1} << n; }
inline std::size_t edge_count(int n) { return static_cast<std::size_t>(n) << (n - 1); }

// ---------------------------------------------------------------------------
// Vertex / edge / support sets

class VertexSet {
 public:
  explicit VertexSet(int dim) : dim_(dim), bits_((check_cube_dim(dim), vertex_count(dim))) {}
  VertexSet(int dim, DynamicBitset bits) : dim_(dim), bits_(std::move(bits)) {
    check_cube_dim(dim);
    if (bits_.size() != vertex_count(dim)) throw DimensionError("vertex set size mismatch");
  }
  static VertexSet full(int dim) { return VertexSet(dim, DynamicBitset::full((check_cube_dim(dim), vertex_count(dim)))); }

  int dim() const noexcept { return dim_; }
  const DynamicBitset& bits() const noexcept { return bits_; }
  DynamicBitset& bits() noexcept { return bits_; }
  bool contains(const Vertex& v) const noexcept { return bits_.test(v.bits()); }
  void insert(const Vertex& v) noexcept { bits_.set(v.bits()); }
  std::size_t size() const noexcept { return bits_.count(); }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    bits_.for_each_set([&](std::size_t i) { out.emplace_back(dim_, static_cast<std::uint32_t>(i)); });
    return out;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  int dim_;
  DynamicBitset bits_;
};

class EdgeSet {
 public:
  explicit EdgeSet(int dim) : dim_(dim), bits_((check_cube_dim(dim), edge_count(dim))) {}
  EdgeSet(int dim, DynamicBitset bits) : dim_(dim), bits_(std::move(bits)) {
    check_cube_dim(dim);
    if (bits_.size() != edge_count(dim)) throw DimensionError("edge set size mismatch");
  }
  static EdgeSet full(int dim) { return EdgeSet(dim, DynamicBitset::full((check_cube_dim(dim), edge_count(dim)))); }

  int dim() const noexcept { return dim_; }
  const DynamicBitset& bits() const noexcept { return bits_; }
  DynamicBitset& bits() noexcept { return bits_; }
  bool contains(const Edge& e) const noexcept { return bits_.test(e.index()); }
  void insert(const Edge& e) noexcept { bits_.set(e.index()); }
  std::size_t size() const noexcept { return bits_.count(); }

  std::vector<Edge> to_vector() const {
    std::vector<Edge> out;
    bits_.for_each_set([&](std::size_t i) { out.push_back(Edge::from_index(dim_, i)); });
    return out;
  }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  int dim_;
  DynamicBitset bits_;
};

struct SupportMask {
  int dim = 0;
  CoordMask mask = 0;

  bool contains(int coordinate) const noexcept { return (mask >> (coordinate - 1)) & 1U; }
  int size() const noexcept { return std::popcount(mask); }
  bool is_full() const noexcept { return mask == full_coord_mask(dim); }

  friend bool operator==(const SupportMask&, const SupportMask&) = default;
};

/// 1-based coordinate list of a mask, ascending.
inline std::vector<int> mask_to_indices(CoordMask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

inline CoordMask indices_to_mask(std::initializer_list<int> indices) {
  CoordMask m = 0;
  for (int i : indices) m |= CoordMask{1} << (i - 1);
  return m;
}

// ---------------------------------------------------------------------------
// Hyperplane

class Hyperplane;
Hyperplane canonicalize(std::span<const Rational> normal, const Rational& offset);

/// {x : <normal, x> = offset}, always stored in canonical form: primitive integer normal
/// (gcd of entries is 1) whose first non-zero entry is positive.
class Hyperplane {
 public:
  /// Canonicalizes; throws InputError on an all-zero normal.
  Hyperplane(std::vector<BigInt> normal, Rational offset) {
    std::vector<Rational> q(normal.begin(), normal.end());
    *this = canonicalize(q, offset);
  }

  Hyperplane(std::initializer_list<long long> normal, Rational offset)
      : Hyperplane(std::vector<BigInt>(normal.begin(), normal.end()), std::move(offset)) {}

  int dim() const noexcept { return static_cast<int>(normal_.size()); }
  const std::vector<BigInt>& normal() const noexcept { return normal_; }
  const Rational& offset() const noexcept { return offset_; }
  const BigInt& coefficient(int i) const { return normal_.at(static_cast<std::size_t>(i - 1)); }

  SupportMask support() const noexcept { return {dim(), support_}; }

  /// Integer form q*a and p for offset p/q: sign(<a,x> - b) == sign(<qa,x> - p). Present when all
  /// partial sums fit comfortably in 64 bits.
  bool has_fast_form() const noexcept { return fast_ok_; }
  std::span<const std::int64_t> fast_normal() const noexcept { return fast_normal_; }
  std::int64_t fast_offset() const noexcept { return fast_offset_; }

  friend bool operator==(const Hyperplane& x, const Hyperplane& y) {
    return x.normal_ == y.normal_ && x.offset_ == y.offset_;
  }

  std::string to_string() const {
    std::string s;
    bool first = true;
    for (int i = 1; i <= dim(); ++i) {
      const BigInt& c = coefficient(i);
      if (c == 0) continue;
      if (c < 0) s += first ? "-" : " - ";
      else if (!first) s += " + ";
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (mag != 1) s += mag.str();
      s += "x" + std::to_string(i);
      first = false;
    }
    s += " = ";
    s += is_integral(offset_) ? numerator(offset_).str() : format_fraction(offset_);
    return s;
  }

 private:
  struct CanonicalTag {};
  Hyperplane(CanonicalTag, std::vector<BigInt> normal, Rational offset)
      : normal_(std::move(normal)), offset_(std::move(offset)) {
    for (std::size_t i = 0; i < normal_.size(); ++i)
      if (normal_[i] != 0) support_ |= CoordMask{1} << i;
    build_fast_form();
  }

  void build_fast_form() {
    static const BigInt limit = BigInt(1) << 61;
    const BigInt q = denominator(offset_);
    BigInt total = boost::multiprecision::abs(numerator(offset_));
    for (const auto& a : normal_) total += boost::multiprecision::abs(a) * q;
    if (total >= limit) return;
    fast_normal_.reserve(normal_.size());
    for (const auto& a : normal_) fast_normal_.push_back(static_cast<std::int64_t>(a * q));
    fast_offset_ = static_cast<std::int64_t>(numerator(offset_));
    fast_ok_ = true;
  }

  friend Hyperplane canonicalize(std::span<const Rational> normal, const Rational& offset);

  std::vector<BigInt> normal_;
  Rational offset_;
  CoordMask support_ = 0;
  std::vector<std::int64_t> fast_normal_;
  std::int64_t fast_offset_ = 0;
  bool fast_ok_ = false;
};

/// Scales (normal, offset) by a positive rational so the normal becomes a primitive integer
/// vector, then negates if needed so the first non-zero entry is positive.
inline Hyperplane canonicalize(std::span<const Rational> normal, const Rational& offset) {
  if (normal.empty() || static_cast<int>(normal.size()) > kMaxPlaneDim)
    throw DimensionError("hyperplane dimension outside 1.." + std::to_string(kMaxPlaneDim));
  BigInt lcm = 1;
  for (const auto& a : normal) lcm = boost::multiprecision::lcm(lcm, denominator(a));
  std::vector<BigInt> ints;
  ints.reserve(normal.size());
  BigInt g = 0;
  for (const auto& a : normal) {
    ints.push_back(numerator(a) * (lcm / denominator(a)));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  if (g == 0) throw InputError("hyperplane normal must be non-zero");
  Rational b = offset * Rational(lcm, g);
  for (auto& a : ints) a /= g;
  const auto first = std::find_if(ints.begin(), ints.end(), [](const BigInt& a) { return a != 0; });
  if (*first < 0) {
    for (auto& a : ints) a = -a;
    b = -b;
  }
  return Hyperplane(Hyperplane::CanonicalTag{}, std::move(ints), std::move(b));
}

inline Hyperplane canonicalize(const Hyperplane& h) { return h; }

/// Strict total order: normal lexicographically, then offset.
inline bool canonical_less(const Hyperplane& x, const Hyperplane& y) {
  if (x.dim() != y.dim()) return x.dim() < y.dim();
  for (int i = 1; i <= x.dim(); ++i)
    if (x.coefficient(i) != y.coefficient(i)) return x.coefficient(i) < y.coefficient(i);
  return x.offset() < y.offset();
}

struct HyperplaneHash {
  std::size_t operator()(const Hyperplane& h) const {
    std::size_t s = std::hash<std::string>{}(format_fraction(h.offset()));
    for (const auto& a : h.normal()) s = s * 1000003U ^ std::hash<std::string>{}(a.str());
    return s;
  }
};

// ---------------------------------------------------------------------------
// Predicates

namespace detail {

inline void check_same_dim(const Hyperplane& h, int n) {
  if (h.dim() != n)
    throw DimensionError("dimension mismatch: hyperplane in R^" + std::to_string(h.dim()) + ", cube point in R^" +
                         std::to_string(n));
}

/// Sign of <a,v> - b.
inline int side(const Hyperplane& h, std::uint32_t bits) {
  if (h.has_fast_form()) {
    const auto a = h.fast_normal();
    std::int64_t s = -h.fast_offset();
    for (std::uint32_t m = bits; m != 0; m &= m - 1) s += a[static_cast<std::size_t>(std::countr_zero(m))];
    return (s > 0) - (s < 0);
  }
  Rational s = -h.offset();
  for (std::uint32_t m = bits; m != 0; m &= m - 1) s += h.normal()[static_cast<std::size_t>(std::countr_zero(m))];
  return s.sign();
}

}  // namespace detail

/// <a, v> - b, exactly.
inline Rational eval(const Hyperplane& h, const Vertex& v) {
  detail::check_same_dim(h, v.dim());
  Rational s = -h.offset();
  for (std::uint32_t m = v.bits(); m != 0; m &= m - 1) s += h.normal()[static_cast<std::size_t>(std::countr_zero(m))];
  return s;
}

inline bool contains(const Hyperplane& h, const Vertex& v) {
  detail::check_same_dim(h, v.dim());
  return detail::side(h, v.bits()) == 0;
}

/// Strictly opposite, non-zero signs at the two endpoints.
inline bool slices(const Hyperplane& h, const Edge& e) {
  detail::check_same_dim(h, e.dim());
  const int s0 = detail::side(h, e.base().bits());
  const int s1 = detail::side(h, e.tip().bits());
  return s0 * s1 < 0;
}

inline SupportMask support(const Hyperplane& h) { return h.support(); }

inline bool is_skew(const Hyperplane& h) { return h.support().is_full(); }

namespace detail {

/// Visits every vertex of {0,1}^n in Gray-code order with the scaled value <qa,v> - p.
template <typename F>
void for_each_vertex_value(const Hyperplane& h, F&& f) {
  const int n = h.dim();
  const std::size_t total = vertex_count(n);
  if (h.has_fast_form()) {
    const auto a = h.fast_normal();
    std::int64_t value = -h.fast_offset();
    std::uint32_t gray = 0;
    f(gray, value);
    for (std::size_t i = 1; i < total; ++i) {
      const int bit = std::countr_zero(i);
      const std::uint32_t mask = std::uint32_t{1} << bit;
      value += (gray & mask) ? -a[static_cast<std::size_t>(bit)] : a[static_cast<std::size_t>(bit)];
      gray ^= mask;
      f(gray, value);
    }
    return;
  }
  const BigInt q = denominator(h.offset());
  std::vector<BigInt> a;
  for (const auto& c : h.normal()) a.push_back(c * q);
  BigInt value = -numerator(h.offset());
  std::uint32_t gray = 0;
  f(gray, value);
  for (std::size_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    const std::uint32_t mask = std::uint32_t{1} << bit;
    if (gray & mask) value -= a[static_cast<std::size_t>(bit)];
    else value += a[static_cast<std::size_t>(bit)];
    gray ^= mask;
    f(gray, value);
  }
}

template <typename T>
int sgn(const T& x) {
  return (x > 0) - (x < 0);
}

}  // namespace detail

/// Bit v set iff v lies on h.
inline VertexSet covered_set(const Hyperplane& h, int n) {
  check_cube_dim(n);
  detail::check_same_dim(h, n);
  VertexSet out(n);
  detail::for_each_vertex_value(h, [&](std::uint32_t v, const auto& value) {
    if (value == 0) out.bits().set(v);
  });
  return out;
}

/// Bit e set iff h slices edge e (edge indexing as in Edge::index).
inline EdgeSet sliced_set(const Hyperplane& h, int n) {
  check_cube_dim(n);
  detail::check_same_dim(h, n);
  EdgeSet out(n);
  const std::size_t per_dir = std::size_t{1} << (n - 1);
  const BigInt q = denominator(h.offset());
  std::vector<BigInt> big_a;
  if (!h.has_fast_form())
    for (const auto& c : h.normal()) big_a.push_back(c * q);
  detail::for_each_vertex_value(h, [&](std::uint32_t v, const auto& value) {
    const int s0 = detail::sgn(value);
    if (s0 == 0) return;
    for (int d = 0; d < n; ++d) {
      if ((v >> d) & 1U) continue;
      int s1;
      if constexpr (std::is_same_v<std::decay_t<decltype(value)>, std::int64_t>)
        s1 = detail::sgn(value + h.fast_normal()[static_cast<std::size_t>(d)]);
      else
        s1 = detail::sgn(BigInt(value + big_a[static_cast<std::size_t>(d)]));
      if (s0 * s1 < 0) {
        const std::uint32_t low = v & ((std::uint32_t{1} << d) - 1);
        const std::size_t rank = low | (static_cast<std::size_t>(v >> (d + 1)) << d);
        out.bits().set(static_cast<std::size_t>(d) * per_dir + rank);
      }
    }
  });
  return out;
}

}  // namespace hypercover
