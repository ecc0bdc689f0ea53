#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace roundpack;

namespace {

Instance general_instance(std::uint64_t seed, int n = 40) {
  return random_instance({.n = n, .m = 16, .cmin = 1, .cmax = 64, .dmax = 64}, seed);
}

std::vector<int> large_ids(const Instance& inst) {
  std::vector<int> ids;
  for (int j = 0; j < inst.n(); ++j)
    if (4 * inst.jobs[static_cast<std::size_t>(j)].d > bottleneck_of(inst, inst.jobs[static_cast<std::size_t>(j)])) ids.push_back(j);
  return ids;
}

Rational larger(Rational a, Rational b) { return a.num * b.den >= b.num * a.den ? a : b; }

}  // namespace

TEST(TopDrawn, HangsFromBottleneck) {
  const auto rects = top_drawn(oracle::figure1());
  ASSERT_EQ(rects.size(), 7u);
  EXPECT_EQ(rects[1].top, 1);
  EXPECT_EQ(rects[1].bottom, 0);
  EXPECT_EQ(rects[6].top, 5);
  EXPECT_EQ(rects[6].bottom, 1);
}

TEST(Clique, Figure1) {
  const auto rects = top_drawn(oracle::figure1());
  const auto w = clique_number(rects);
  EXPECT_EQ(w.omega, oracle::clique_by_corners(rects));
  EXPECT_GE(w.omega, 1);
}

TEST(Clique, MatchesCornerOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = general_instance(seed, 25);
    const auto rects = top_drawn(inst);
    const auto w = clique_number(rects);
    ASSERT_EQ(w.omega, oracle::clique_by_corners(rects)) << "seed " << seed;
    int at = 0;
    for (const auto& r : rects)
      if (r.s <= w.x && w.x < r.t && r.bottom <= w.y_low && w.y_high <= r.top) ++at;
    ASSERT_EQ(at, w.omega);
  }
}

TEST(Snap, BottomsOnProfileLinesAndNeverRaised) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = general_instance(seed, 25);
    const auto ids = large_ids(inst);
    const auto rects = top_drawn(inst, ids);
    const auto snapped = snap_demands(inst, rects);
    for (std::size_t k = 0; k < rects.size(); ++k) {
      ASSERT_LE(snapped[k].bottom, rects[k].bottom);
      ASSERT_EQ(snapped[k].top, rects[k].top);
      const bool on_line = snapped[k].bottom == 0 || std::find(inst.capacities.begin(), inst.capacities.end(), snapped[k].bottom) != inst.capacities.end();
      ASSERT_TRUE(on_line);
    }
    ASSERT_GE(clique_number(snapped).omega, clique_number(rects).omega);
  }
}

TEST(Partition, GroupCount) {
  EXPECT_EQ(partition_group_count(64, 16), 16);
  EXPECT_EQ(partition_group_count(1, 16), 1);
  EXPECT_EQ(partition_group_count(5, 1), 5);
  EXPECT_EQ(partition_group_count(0, 16), 1);
}

// Frozen: largest group clique of a 64-clique split into 16 groups, seed 1.
TEST(Partition, SixtyFourCliqueFrozen) {
  std::vector<TopDrawnRect> rects;
  for (int k = 0; k < 64; ++k) rects.push_back({k, 0, 16, 0, 64});
  const Partition p = partition_random(rects, 64, 16, 1);
  EXPECT_EQ(p.groups, 16);
  EXPECT_EQ(*std::max_element(p.group_clique.begin(), p.group_clique.end()), 7);
  EXPECT_EQ(p.group_of, partition_random(rects, 64, 16, 1).group_of);
}

TEST(Color, ProperColoring) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = general_instance(seed, 30);
    const auto rects = top_drawn(inst);
    int used = 0;
    const auto color = color_rects(rects, &used);
    ASSERT_GE(used, clique_number(rects).omega);
    for (std::size_t a = 0; a < rects.size(); ++a)
      for (std::size_t b = a + 1; b < rects.size(); ++b)
        if (rects_overlap(rects[a], rects[b])) {
          ASSERT_NE(color[a], color[b]);
        }
  }
}

TEST(UfpToSap, Figure1NeedsTwoRounds) {
  const Instance inst = oracle::figure1();
  const std::vector<int> ids{0, 1, 2, 3, 4, 5, 6};
  const auto rounds = ufp_round_to_sap(inst, ids);
  EXPECT_GE(rounds.size(), 2u);
  SapPacking p{std::vector<int>(7, -1), std::vector<Amount>(7, -1), static_cast<int>(rounds.size())};
  for (std::size_t r = 0; r < rounds.size(); ++r)
    for (const auto& [id, h] : rounds[r]) p.round_of[static_cast<std::size_t>(id)] = static_cast<int>(r), p.height_of[static_cast<std::size_t>(id)] = h;
  EXPECT_TRUE(oracle::sap_ok(inst, p));
}

TEST(Bands, ClampExample) {
  const Instance inst{2, {1, 8}, {{0, 1, 1}, {1, 2, 3}}};
  const auto bands = bottleneck_bands(inst, 2);
  ASSERT_EQ(bands.size(), 2u);
  EXPECT_EQ(bands[0].index, 0);
  EXPECT_EQ(bands[0].capacities, (std::vector<Amount>{1, 4}));
  EXPECT_EQ(bands[1].index, 3);
  EXPECT_EQ(bands[1].capacities, (std::vector<Amount>{1, 8}));
  EXPECT_THROW(bottleneck_bands(inst, 1), PreconditionError);
}

TEST(Bands, Index) {
  EXPECT_EQ(band_index(1, 2), 0);
  EXPECT_EQ(band_index(2, 2), 1);
  EXPECT_EQ(band_index(7, 2), 2);
  EXPECT_EQ(band_index(9, 3), 2);
  EXPECT_EQ(band_shift(0, 2), 2);
  EXPECT_EQ(augmented_capacity(3, 2), 7);
}

TEST(Augment, ParityMixedRejected) {
  const Instance inst{2, {4, 8}, {{0, 1, 1}, {1, 2, 1}}};
  EXPECT_THROW(augment_combine(inst, {{0, {0}, {0}}, {1, {1}, {0}}}, 2, Problem::Sap), BandParityMixed);
}

// Same-parity bands packed separately combine into one round under
// augmented capacities.
TEST(Augment, CombinedRoundsValid) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_instance({.n = 30, .m = 10, .cmin = 1, .cmax = 200, .dmax = 50}, seed);
    for (Amount k : {Amount{2}, Amount{3}}) {
      const auto bands = bottleneck_bands(inst, k);
      for (int parity : {0, 1}) {
        std::vector<BandRound> ufp_rounds, sap_rounds;
        for (const auto& b : bands) {
          if ((b.index & 1) != parity) continue;
          Instance sub = restrict_jobs(inst, b.jobs);
          sub.capacities = b.capacities;
          // One round per band: greedy keep-if-fits in bottom-up SAP.
          BandRound br{b.index, {}, {}};
          std::vector<Amount> hs;
          Instance kept{sub.m, sub.capacities, {}};
          for (std::size_t q = 0; q < sub.jobs.size(); ++q) {
            for (Amount h = 0; h + sub.jobs[q].d <= bottleneck_of(sub, sub.jobs[q]); ++h) {
              kept.jobs.push_back(sub.jobs[q]);
              hs.push_back(h);
              if (oracle::sap_ok(kept, {std::vector<int>(hs.size(), 0), hs, 1})) {
                br.jobs.push_back(b.jobs[q]);
                br.heights.push_back(h);
                break;
              }
              kept.jobs.pop_back(), hs.pop_back();
            }
          }
          ufp_rounds.push_back({br.band, br.jobs, {}});
          sap_rounds.push_back(br);
        }
        const auto cs = augment_combine(inst, sap_rounds, k, Problem::Sap);
        ASSERT_FALSE(verify_combined(inst, cs, k, Problem::Sap)) << "seed " << seed << " k " << k;
        const auto cu = augment_combine(inst, ufp_rounds, k, Problem::Ufp);
        ASSERT_FALSE(verify_combined(inst, cu, k, Problem::Ufp));
      }
    }
  }
}

TEST(SolveGeneral, Empty) { EXPECT_EQ(solve_general(Instance{3, {1, 2, 3}, {}}, Problem::Sap).packing.rounds, 0); }

TEST(SolveGeneral, Figure1) {
  const Instance inst = oracle::figure1();
  const auto u = solve_general(inst, Problem::Ufp);
  const auto s = solve_general(inst, Problem::Sap);
  EXPECT_TRUE(oracle::ufp_ok(inst, u.packing.as_ufp()));
  EXPECT_TRUE(oracle::sap_ok(inst, s.packing));
  EXPECT_GE(s.packing.rounds, 2);
}

TEST(SolveGeneral, ValidAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = general_instance(seed);
    const auto u = solve_general(inst, Problem::Ufp, seed);
    const auto s = solve_general(inst, Problem::Sap, seed);
    ASSERT_TRUE(oracle::ufp_ok(inst, u.packing.as_ufp())) << "seed " << seed;
    ASSERT_TRUE(oracle::sap_ok(inst, s.packing)) << "seed " << seed;
    ASSERT_EQ(s.packing.round_of, solve_general(inst, Problem::Sap, seed).packing.round_of);
    ASSERT_EQ(u.diag.rounds, u.packing.rounds);
    ASSERT_EQ(u.diag.large_rounds + u.diag.small_rounds, u.diag.rounds);
  }
}

// Worst ratios over the fixed 100-seed corpus, measured once and frozen.
TEST(SolveGeneral, FrozenCorpusRatios) {
  Rational colors{0, 1}, ufp{0, 1}, sap{0, 1};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = general_instance(seed);
    const auto u = solve_general(inst, Problem::Ufp, seed);
    const auto s = solve_general(inst, Problem::Sap, seed);
    if (u.diag.omega) colors = larger(colors, Rational::of(u.diag.colors, u.diag.omega));
    ufp = larger(ufp, Rational::of(u.packing.rounds, u.diag.r));
    sap = larger(sap, Rational::of(s.packing.rounds, s.diag.r));
  }
  EXPECT_EQ(colors, Rational::of(14, 9));
  EXPECT_EQ(ufp, Rational::of(17, 5));
  EXPECT_EQ(sap, Rational::of(3, 1));
}
