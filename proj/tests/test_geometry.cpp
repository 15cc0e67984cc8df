#include <gtest/gtest.h>

#include <random>

#include "hypercover/hypercover.hpp"
#include "support/oracles.hpp"

using namespace hypercover;
using hypercover::oracle::raw_eval;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p, d); }

Vertex vx(std::initializer_list<int> c) { return Vertex::from_coordinates(c); }

}  // namespace

TEST(Rational, FloorHandlesNegativesAndFractions) {
  EXPECT_EQ(floor_rational(q(1, 2)), 0);
  EXPECT_EQ(floor_rational(q(-1, 2)), -1);
  EXPECT_EQ(floor_rational(q(3)), 3);
  EXPECT_EQ(floor_rational(q(-7, 3)), -3);
  EXPECT_EQ(floor_rational(q(-6, 3)), -2);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_fraction("1/2"), q(1, 2));
  EXPECT_EQ(parse_fraction("-3/6"), q(-1, 2));
  EXPECT_EQ(parse_fraction("4"), q(4));
  EXPECT_THROW(parse_fraction("0.5"), InputError);
  EXPECT_THROW(parse_fraction("1/0"), InputError);
  EXPECT_THROW(parse_fraction(""), InputError);
  EXPECT_EQ(format_fraction(q(-1, 2)), "-1/2");
  EXPECT_EQ(format_fraction(q(0)), "0/1");
  const BigInt big = parse_integer("123456789012345678901234567890");
  EXPECT_EQ(big.str(), "123456789012345678901234567890");
}

TEST(Bitset, BasicOps) {
  DynamicBitset b(130);
  EXPECT_TRUE(b.none());
  b.set(0);
  b.set(64);
  b.set(129);
  EXPECT_EQ(b.count(), 3u);
  EXPECT_EQ(b.find_first(), 0u);
  EXPECT_EQ(b.find_next_from(1), 64u);
  EXPECT_EQ(b.find_next_from(65), 129u);
  DynamicBitset f = DynamicBitset::full(130);
  EXPECT_TRUE(f.all());
  EXPECT_TRUE(b.is_subset_of(f));
  EXPECT_EQ(b.intersection_count(f), 3u);
  f.subtract(b);
  EXPECT_EQ(f.count(), 127u);
  EXPECT_FALSE(f.intersects(b));
}

TEST(Geometry, VertexAndEdgeIndexing) {
  const Vertex v = vx({1, 0, 1});
  EXPECT_EQ(v.bits(), 0b101u);
  EXPECT_EQ(v.coordinate(1), 1);
  EXPECT_EQ(v.coordinate(2), 0);
  for (int n = 1; n <= 6; ++n) {
    ASSERT_EQ(edge_count(n), static_cast<std::size_t>(n) << (n - 1));
    for (std::size_t i = 0; i < edge_count(n); ++i) {
      const Edge e = Edge::from_index(n, i);
      EXPECT_EQ(e.index(), i);
      EXPECT_EQ(e.base().coordinate(e.direction()), 0);
      EXPECT_EQ(e.tip().coordinate(e.direction()), 1);
    }
  }
  EXPECT_THROW(check_cube_dim(0), DimensionError);
  EXPECT_THROW(check_cube_dim(kMaxCubeDim + 1), DimensionError);
}

TEST(Geometry, EvalExamples) {
  EXPECT_EQ(eval(Hyperplane({1, 1, -2}, 0), vx({1, 1, 1})), 0);
  EXPECT_EQ(eval(Hyperplane({1, 0}, q(1, 2)), vx({0, 0})), q(-1, 2));
  EXPECT_EQ(eval(Hyperplane({1, 1, 1}, 2), vx({1, 1, 0})), 0);
}

TEST(Geometry, ContainsExamples) {
  EXPECT_TRUE(contains(Hyperplane({1, 1, -2}, 0), vx({1, 1, 1})));
  EXPECT_FALSE(contains(Hyperplane({1, 1, -2}, 0), vx({1, 0, 0})));
  EXPECT_TRUE(contains(Hyperplane({1, 0}, 0), vx({0, 1})));
}

TEST(Geometry, SlicesExamples) {
  EXPECT_TRUE(slices(Hyperplane({1, 0}, q(1, 2)), Edge(vx({0, 0}), 1)));
  EXPECT_FALSE(slices(Hyperplane({1, 0}, q(1, 2)), Edge(vx({0, 0}), 2)));
  EXPECT_TRUE(slices(Hyperplane({2, -1}, 1), Edge(vx({0, 0}), 1)));
  EXPECT_THROW(Edge(vx({1, 0}), 1), InputError);
}

TEST(Geometry, CoveredSetExamples) {
  auto verts = [](const VertexSet& s) {
    std::vector<std::uint32_t> out;
    for (const auto& v : s.to_vector()) out.push_back(v.bits());
    return out;
  };
  EXPECT_EQ(verts(covered_set(Hyperplane({1, 1}, 1), 2)), (std::vector<std::uint32_t>{0b01, 0b10}));
  EXPECT_EQ(verts(covered_set(Hyperplane({1, 0}, 0), 2)), (std::vector<std::uint32_t>{0b00, 0b10}));
  EXPECT_EQ(verts(covered_set(Hyperplane({1, 1, -2}, 0), 3)), (std::vector<std::uint32_t>{0b000, 0b111}));
}

TEST(Geometry, SlicedSetExamples) {
  auto edges = [](const EdgeSet& s) {
    std::vector<std::pair<std::uint32_t, int>> out;
    for (const auto& e : s.to_vector()) out.emplace_back(e.base().bits(), e.direction());
    return out;
  };
  using P = std::vector<std::pair<std::uint32_t, int>>;
  EXPECT_EQ(edges(sliced_set(Hyperplane({1, 0}, q(1, 2)), 2)), (P{{0b00, 1}, {0b10, 1}}));
  EXPECT_EQ(edges(sliced_set(Hyperplane({1, 1}, q(1, 2)), 2)), (P{{0b00, 1}, {0b00, 2}}));
  EXPECT_TRUE(sliced_set(Hyperplane({1, 1}, 1), 2).bits().none());
}

TEST(Geometry, SupportAndSkew) {
  EXPECT_EQ(support(Hyperplane({1, 0, -2}, 0)).mask, indices_to_mask({1, 3}));
  EXPECT_EQ(support(Hyperplane({1, 1, 1}, 0)).mask, indices_to_mask({1, 2, 3}));
  EXPECT_EQ(support(Hyperplane({0, 5}, 0)).mask, indices_to_mask({2}));
  EXPECT_TRUE(is_skew(Hyperplane({1, 1, -2}, 0)));
  EXPECT_FALSE(is_skew(Hyperplane({1, 0}, 0)));
  EXPECT_TRUE(is_skew(Hyperplane({-3, 2, 1, 1}, 0)));
}

TEST(Geometry, CanonicalForm) {
  const Hyperplane a({2, 2, -4}, 0);
  EXPECT_EQ(a.normal(), (std::vector<BigInt>{1, 1, -2}));
  EXPECT_EQ(a.offset(), 0);

  const Hyperplane b({-1, 0}, q(-1, 2));
  EXPECT_EQ(b.normal(), (std::vector<BigInt>{1, 0}));
  EXPECT_EQ(b.offset(), q(1, 2));

  // primitive normal, first non-zero entry positive
  const std::vector<Rational> half{q(1, 2), q(1, 2)};
  const Hyperplane c = canonicalize(half, q(1, 4));
  EXPECT_EQ(c.normal(), (std::vector<BigInt>{1, 1}));
  EXPECT_EQ(c.offset(), q(1, 2));
  EXPECT_EQ(c, Hyperplane({2, 2}, 1));
  EXPECT_EQ(c, Hyperplane({-4, -4}, -2));

  EXPECT_THROW(Hyperplane({0, 0}, 1), InputError);
  EXPECT_EQ(Hyperplane({1, 1, -2}, 0).to_string(), "x1 + x2 - 2x3 = 0");
}

TEST(Geometry, CanonicalFormIsIdempotentAndScaleInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-6, 6), den(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 5;
    std::vector<Rational> a;
    bool nz = false;
    for (int i = 0; i < n; ++i) {
      a.emplace_back(c(rng), den(rng));
      nz = nz || a.back() != 0;
    }
    if (!nz) continue;
    const Rational b(c(rng), den(rng));
    const Hyperplane h = canonicalize(a, b);
    std::uniform_int_distribution<int> mag(1, 4);
    const Rational s(c(rng) < 0 ? -mag(rng) : mag(rng), den(rng));
    std::vector<Rational> scaled;
    for (const auto& x : a) scaled.push_back(x * s);
    EXPECT_EQ(canonicalize(scaled, b * s), h);
    EXPECT_EQ(canonicalize(h), h);
    // same zero set on the cube
    for (std::uint32_t v = 0; v < (1U << n); ++v) {
      oracle::RawPlane raw{a, b};
      EXPECT_EQ(raw_eval(raw, v) == 0, contains(h, Vertex(n, v)));
    }
  }
}

TEST(Geometry, FastPathMatchesRawEvaluation) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-9, 9), den(1, 7);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + trial % 7;
    std::vector<BigInt> a;
    for (int i = 0; i < n; ++i) a.emplace_back(c(rng));
    if (std::all_of(a.begin(), a.end(), [](const BigInt& x) { return x == 0; })) a[0] = 1;
    const Hyperplane h(a, Rational(c(rng), den(rng)));
    const VertexSet cov = covered_set(h, n);
    const EdgeSet sl = sliced_set(h, n);
    for (std::uint32_t v = 0; v < (1U << n); ++v) EXPECT_EQ(cov.bits().test(v), raw_eval(h, v) == 0);
    for (std::size_t i = 0; i < edge_count(n); ++i) {
      const Edge e = Edge::from_index(n, i);
      EXPECT_EQ(sl.bits().test(i), oracle::raw_slices(h, e.base().bits(), e.direction()));
    }
  }
}

TEST(Geometry, HugeCoefficientsUseExactPath) {
  const BigInt big = parse_integer("100000000000000000000000000001");
  const Hyperplane h({big, BigInt(1)}, Rational(big));
  EXPECT_FALSE(h.has_fast_form());
  const VertexSet s = covered_set(h, 2);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.bits().test(0b01));
}

TEST(Geometry, DimensionMismatchThrows) {
  EXPECT_THROW(covered_set(Hyperplane({1, 1}, 1), 3), DimensionError);
  EXPECT_THROW(eval(Hyperplane({1, 1}, 1), vx({1, 0, 0})), DimensionError);
}
