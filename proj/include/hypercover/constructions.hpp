#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hypercover/family.hpp"

namespace hypercover {

namespace detail {

inline std::vector<BigInt> unit_normal(int n, int i) {
  std::vector<BigInt> a(static_cast<std::size_t>(n), 0);
  a[static_cast<std::size_t>(i - 1)] = 1;
  return a;
}

inline void require_at_least(int n, int lo, std::string_view name) {
  if (n < lo)
    throw InputError(std::string(name) + " requires n >= " + std::to_string(lo) + ", got " + std::to_string(n));
  check_cube_dim(n);
}

}  // namespace detail

/// x_1 = 0 and x_1 = 1.
inline Family trivial_cover(int n) {
  detail::require_at_least(n, 1, "trivial_cover");
  Family f(n);
  f.add(Hyperplane(detail::unit_normal(n, 1), 0));
  f.add(Hyperplane(detail::unit_normal(n, 1), 1));
  return f;
}

/// x_1 + ... + x_{n-1} - (n-1) x_n = 0, then the layers x_1 + ... + x_n = t for t = 1..n-1.
inline Family tight_cover(int n) {
  detail::require_at_least(n, 2, "tight_cover");
  Family f(n);
  std::vector<BigInt> skew(static_cast<std::size_t>(n), 1);
  skew.back() = -(n - 1);
  f.add(Hyperplane(skew, 0));
  const std::vector<BigInt> ones(static_cast<std::size_t>(n), 1);
  for (int t = 1; t <= n - 1; ++t) f.add(Hyperplane(ones, t));
  return f;
}

/// All n+1 weight layers x_1 + ... + x_n = t, t = 0..n.
inline Family sum_layer_cover(int n) {
  detail::require_at_least(n, 1, "sum_layer_cover");
  Family f(n);
  const std::vector<BigInt> ones(static_cast<std::size_t>(n), 1);
  for (int t = 0; t <= n; ++t) f.add(Hyperplane(ones, t));
  return f;
}

/// x_i = 1/2 for i = 1..n; plane i slices exactly the direction-i edges.
inline Family axis_slicing_family(int n) {
  detail::require_at_least(n, 1, "axis_slicing_family");
  Family f(n);
  for (int i = 1; i <= n; ++i) f.add(Hyperplane(detail::unit_normal(n, i), Rational(1, 2)));
  return f;
}

/// Dispatch by CLI name: trivial | tight | sum-layers | axis-slicing.
inline Family construct(std::string_view name, int n) {
  if (name == "trivial") return trivial_cover(n);
  if (name == "tight") return tight_cover(n);
  if (name == "sum-layers") return sum_layer_cover(n);
  if (name == "axis-slicing") return axis_slicing_family(n);
  throw InputError("unknown construction \"" + std::string(name) +
                   "\" (expected trivial, tight, sum-layers or axis-slicing)");
}

}  // namespace hypercover
