#include <gtest/gtest.h>

#include <random>

#include "hypercover/hypercover.hpp"
#include "support/oracles.hpp"

using namespace hypercover;

namespace {

DynamicBitset bits(std::size_t size, std::initializer_list<std::size_t> on) {
  DynamicBitset b(size);
  for (auto i : on) b.set(i);
  return b;
}

}  // namespace

TEST(SetCover, SmallExample) {
  const auto sol = min_set_cover(DynamicBitset::full(3), {bits(3, {0, 1}), bits(3, {1, 2}), bits(3, {2})});
  EXPECT_EQ(sol.minimum, 2u);
  EXPECT_EQ(sol.chosen, (std::vector<std::size_t>{0, 1}));
}

TEST(SetCover, EmptyUniverse) {
  const auto sol = min_set_cover(DynamicBitset(0), {});
  EXPECT_EQ(sol.minimum, 0u);
  EXPECT_TRUE(sol.chosen.empty());
}

TEST(SetCover, Infeasible) {
  try {
    min_set_cover(DynamicBitset::full(3), {bits(3, {0}), bits(3, {2})});
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.element, 1u);
  }
}

TEST(SetCover, MatchesSubsetScanAcrossThreadCounts) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t u = 1 + rng() % 16;
    const std::size_t k = 1 + rng() % 12;
    const std::uint64_t full = (std::uint64_t{1} << u) - 1;
    std::vector<std::uint64_t> raw;
    for (std::size_t i = 0; i < k; ++i) raw.push_back(rng() & rng() & full);
    const auto expect = oracle::subset_scan_min_cover(full, raw);
    std::vector<DynamicBitset> sets;
    for (auto m : raw) sets.push_back(oracle::to_bitset(m, u));
    std::optional<std::vector<std::size_t>> first;
    for (unsigned threads : {1U, 2U, 8U}) {
      SetCoverOptions opt;
      opt.threads = threads;
      if (!expect) {
        EXPECT_THROW(min_set_cover(DynamicBitset::full(u), sets, opt), InfeasibleError);
        continue;
      }
      const auto sol = min_set_cover(DynamicBitset::full(u), sets, opt);
      EXPECT_EQ(sol.minimum, *expect);
      std::uint64_t acc = 0;
      for (auto i : sol.chosen) acc |= raw[i];
      EXPECT_EQ(acc & full, full);
      if (!first) first = sol.chosen;
      EXPECT_EQ(sol.chosen, *first);
    }
  }
}

TEST(SetCover, ExhaustiveHelperAgrees) {
  const std::vector<DynamicBitset> sets{bits(4, {0, 1}), bits(4, {2}), bits(4, {3}), bits(4, {2, 3})};
  EXPECT_EQ(exhaustive_min_cover(DynamicBitset::full(4), sets, 4), 2u);
  EXPECT_FALSE(exhaustive_min_cover(DynamicBitset::full(4), sets, 1));
}

TEST(Candidates, SectionsAvoidingOrigin) {
  const auto c = enumerate_sections(2, true);
  for (const auto& cand : c) {
    EXPECT_FALSE(cand.covered.test(0));
    EXPECT_EQ(cand.covered, covered_set(cand.plane, 2).bits());
    EXPECT_NE(cand.plane.offset(), 0);
  }
  auto has = [&](const Hyperplane& h) {
    return std::any_of(c.begin(), c.end(), [&](const Candidate& x) { return x.plane == h; });
  };
  EXPECT_TRUE(has(Hyperplane({1, 0}, 1)));
  EXPECT_TRUE(has(Hyperplane({0, 1}, 1)));
  EXPECT_TRUE(has(Hyperplane({1, 1}, 1)));
}

TEST(Candidates, SectionsIncludingOrigin) {
  const auto c = enumerate_sections(2, false);
  const auto it = std::find_if(c.begin(), c.end(), [](const Candidate& x) { return x.plane == Hyperplane({1, 0}, 0); });
  ASSERT_NE(it, c.end());
  EXPECT_TRUE(it->covered.test(0b00));
  EXPECT_TRUE(it->covered.test(0b10));
  EXPECT_EQ(it->covered.count(), 2u);
  for (int n = 1; n <= 4; ++n)
    for (const auto& cand : enumerate_sections(n, false)) EXPECT_EQ(cand.covered, covered_set(cand.plane, n).bits());
  EXPECT_THROW(enumerate_sections(kMaxSectionDim + 1, false), BudgetError);
}

TEST(Candidates, SlicingBoxTwoOne) {
  const auto box = enumerate_box_hyperplanes(2, 1, SearchMode::edge_slicing, false);
  // behaviour-distinct count, frozen from an independent brute force over the box
  EXPECT_EQ(box.stats.distinct, 6u);
  bool axis = false;
  for (const auto& c : box.candidates) {
    const EdgeSet s = sliced_set(c.plane, 2);
    EXPECT_LE(s.size(), 2u);
    if (s.contains(Edge(Vertex(2, 0), 1)) && s.contains(Edge(Vertex(2, 0b10), 1))) axis = true;
  }
  EXPECT_TRUE(axis);
  EXPECT_THROW(enumerate_box_hyperplanes(2, 1, SearchMode::plain_cover), InputError);
}

TEST(Candidates, SkewModeOnlySkewNormals) {
  for (const auto& c : enumerate_box_hyperplanes(3, 2, SearchMode::skew_cover).candidates) EXPECT_TRUE(is_skew(c.plane));
}

TEST(Search, PlainCover) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(min_cover(n, SearchMode::plain_cover).minimum, 2u);
}

TEST(Search, PuncturedCover) {
  for (int s = 1; s <= 3; ++s) {
    const auto r = min_cover(s, SearchMode::punctured_cover);
    EXPECT_EQ(r.minimum, static_cast<std::size_t>(s));
    EXPECT_TRUE(r.certified);
    EXPECT_TRUE(is_punctured_cover(r.optimal));
  }
}

TEST(Search, SkewCoverBoxTwo) {
  const auto r = min_cover(2, SearchMode::skew_cover, 2);
  EXPECT_EQ(r.minimum, 2u);
  EXPECT_FALSE(r.certified);
  EXPECT_TRUE(is_skew_cover(r.optimal).ok);
  EXPECT_THROW(min_cover(2, SearchMode::skew_cover), InputError);
}

TEST(Search, SkewCoverThreeBoxTwo) { EXPECT_EQ(min_cover(3, SearchMode::skew_cover, 2).minimum, 3u); }

TEST(Search, NondegenerateMinima) {
  // frozen regression values, cross-checked by an independent brute force
  EXPECT_EQ(min_cover(2, SearchMode::nondegenerate_cover, 1).minimum, 2u);
  EXPECT_EQ(min_cover(3, SearchMode::nondegenerate_cover, 2).minimum, 3u);
}

TEST(Search, SlicingMinima) {
  EXPECT_EQ(min_slicing(1, 1).minimum, 1u);
  EXPECT_EQ(min_slicing(2, 1).minimum, 2u);
  const auto r3 = min_slicing(3, 1);
  EXPECT_EQ(r3.minimum, 3u);
  EXPECT_TRUE(is_slicing_family(r3.optimal).ok);
  EXPECT_EQ(min_slicing(2, 2).minimum, 2u);
  EXPECT_THROW(min_cover(2, SearchMode::edge_slicing, 1), InputError);
}

TEST(Search, OracleCheckAgrees) {
  const auto p = build_problem(3, SearchMode::edge_slicing, 1);
  const auto r = solve(p);
  const auto o = oracle_check(p, r);
  EXPECT_TRUE(o.ran);
  EXPECT_TRUE(o.agrees);
}

TEST(Search, ThreadCountDoesNotChangeResult) {
  SearchOptions one, many;
  many.threads = 4;
  const auto a = min_cover(4, SearchMode::punctured_cover, std::nullopt, one);
  const auto b = min_cover(4, SearchMode::punctured_cover, std::nullopt, many);
  EXPECT_EQ(a.minimum, b.minimum);
  EXPECT_EQ(a.optimal, b.optimal);
}

TEST(Search, PuncturedCubeSmall) {
  EXPECT_TRUE(verify_alon_furedi(2));
  EXPECT_TRUE(verify_alon_furedi(3));
  EXPECT_THROW(verify_alon_furedi(5), BudgetError);
}

TEST(Search, ModeNames) {
  for (auto m : {SearchMode::plain_cover, SearchMode::punctured_cover, SearchMode::skew_cover,
                 SearchMode::nondegenerate_cover, SearchMode::edge_slicing})
    EXPECT_EQ(parse_search_mode(to_string(m)), m);
  EXPECT_THROW(parse_search_mode("cover"), InputError);
}

TEST(Search, PruningKeepsMinimum) {
  for (auto [n, c] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
    SearchOptions raw;
    raw.prune_dominated = false;
    EXPECT_EQ(min_slicing(n, c).minimum, min_slicing(n, c, raw).minimum);
  }
  SearchOptions raw;
  raw.prune_dominated = false;
  EXPECT_EQ(min_cover(3, SearchMode::nondegenerate_cover, 2).minimum,
            min_cover(3, SearchMode::nondegenerate_cover, 2, raw).minimum);
}

TEST(SetCover, MinimumIgnoresInputOrder) {
  std::mt19937_64 rng(17);
  auto p = build_problem(3, SearchMode::edge_slicing, 1);
  std::vector<DynamicBitset> masks;
  for (const auto& c : p.candidates) masks.push_back(c.mask(p.mode));
  const auto base = min_set_cover(p.universe, masks).minimum;
  for (int k = 0; k < 5; ++k) {
    std::shuffle(masks.begin(), masks.end(), rng);
    EXPECT_EQ(min_set_cover(p.universe, masks).minimum, base);
  }
}

TEST(Candidates, SectionsContainEveryCubeSection) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int n = 2; n <= 4; ++n) {
    const auto sections = enumerate_sections(n, false);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<BigInt> a;
      for (int i = 0; i < n; ++i) a.emplace_back(coef(rng));
      if (std::all_of(a.begin(), a.end(), [](const BigInt& x) { return x == 0; })) continue;
      const Vertex v(n, static_cast<std::uint32_t>(rng() % vertex_count(n)));
      BigInt b = 0;
      for (int i = 1; i <= n; ++i)
        if (v.coordinate(i)) b += a[static_cast<std::size_t>(i - 1)];
      const DynamicBitset s = covered_set(Hyperplane(a, Rational(b)), n).bits();
      EXPECT_TRUE(std::any_of(sections.begin(), sections.end(), [&](const Candidate& c) { return s.is_subset_of(c.covered); }));
    }
  }
}
