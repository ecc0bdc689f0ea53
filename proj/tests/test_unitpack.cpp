#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace roundpack;

namespace {

Instance random_unit(std::uint64_t seed, int n = 60, int m = 20) {
  return random_instance({.n = n, .m = m, .cmin = 1, .cmax = 5, .dmin = 1, .dmax = 1}, seed);
}

}  // namespace

TEST(PeelBounds, FractionalPointFeasible) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = random_unit(seed);
    const Amount r = oracle::congestion(inst);
    if (r == 0) continue;
    const PeelBounds b = peel_bounds(inst, r);
    for (int e = 0; e < inst.m; ++e) {
      const Amount l = oracle::load_on(inst.jobs, e);
      ASSERT_LE(0, b.lb[static_cast<std::size_t>(e)]);
      ASSERT_LE(b.lb[static_cast<std::size_t>(e)], b.ub[static_cast<std::size_t>(e)]);
      // lb <= l / r <= ub
      ASSERT_LE(b.lb[static_cast<std::size_t>(e)] * r, l);
      ASSERT_LE(l, b.ub[static_cast<std::size_t>(e)] * r);
    }
  }
}

TEST(PeelRound, CongestionOneTakesEverything) {
  const Instance inst{3, {1, 1, 1}, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}};
  const PeelResult p = peel_round(inst, 1);
  EXPECT_EQ(p.selected.size(), 3u);
  EXPECT_TRUE(p.residual.empty());
}

TEST(PeelRound, UnitCapacityClique) {
  const Instance inst{3, {1, 1, 1}, {{0, 2, 1}, {1, 3, 1}, {0, 3, 1}}};
  const PeelResult p = peel_round(inst, 3);
  int crossing = 0;
  for (int k : p.selected) crossing += inst.jobs[static_cast<std::size_t>(k)].crosses(1);
  EXPECT_EQ(crossing, 1);
}

TEST(PeelRound, RejectsNonUnit) { EXPECT_THROW(peel_round(Instance{1, {2}, {{0, 1, 2}}}, 1), NonUnitDemand); }

TEST(PeelRound, BoundsHoldAndCongestionDrops) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance cur = random_unit(seed);
    Amount r = oracle::congestion(cur);
    while (!cur.jobs.empty()) {
      const PeelBounds b = peel_bounds(cur, r);
      const PeelResult p = peel_round(cur, r);
      std::vector<Job> sel, rest;
      for (int k : p.selected) sel.push_back(cur.jobs[static_cast<std::size_t>(k)]);
      for (int k : p.residual) rest.push_back(cur.jobs[static_cast<std::size_t>(k)]);
      for (int e = 0; e < cur.m; ++e) {
        const Amount x = oracle::load_on(sel, e);
        ASSERT_GE(x, b.lb[static_cast<std::size_t>(e)]);
        ASSERT_LE(x, b.ub[static_cast<std::size_t>(e)]);
      }
      cur.jobs = rest;
      const Amount next = oracle::congestion(cur);
      ASSERT_LE(next, r - 1);
      r = next;
    }
  }
}

TEST(PackUnit, DisjointJobsOneRound) {
  const Instance inst{4, {1, 2, 1, 3}, {{0, 1, 1}, {1, 2, 1}, {2, 4, 1}}};
  EXPECT_EQ(pack_unit(inst).rounds, 1);
}

TEST(PackUnit, SixOverlappingCapacityTwo) {
  const Instance inst = make_uniform_instance(3, 2, std::vector<Job>(6, Job{0, 3, 1}));
  const UfpPacking p = pack_unit(inst);
  EXPECT_EQ(p.rounds, 3);
  EXPECT_TRUE(oracle::ufp_ok(inst, p));
}

TEST(PackUnit, RoundsEqualCongestion) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Instance inst = random_unit(seed, rng.range(0, 60), rng.range(1, 20));
    const UfpPacking p = pack_unit(inst);
    ASSERT_EQ(p.rounds, oracle::congestion(inst)) << format_instance(inst);
    ASSERT_TRUE(oracle::ufp_ok(inst, p));
  }
}

TEST(MaxFlow, SmallNetwork) {
  MaxFlow f(4);
  f.add_arc(0, 1, 3);
  f.add_arc(0, 2, 2);
  f.add_arc(1, 2, 1);
  f.add_arc(1, 3, 2);
  f.add_arc(2, 3, 3);
  EXPECT_EQ(f.run(0, 3), 5);
}

TEST(Circulation, LowerBoundsRespected) {
  Circulation c(3);
  c.add_arc(0, 1, 2, 5);
  c.add_arc(1, 2, 0, 1);
  c.add_arc(2, 0, 0, 10);
  EXPECT_FALSE(c.solve());
  Circulation d(3);
  const int a2 = d.add_arc(0, 1, 2, 5);
  const int b2 = d.add_arc(1, 2, 1, 3);
  d.add_arc(2, 0, 0, 10);
  ASSERT_TRUE(d.solve());
  EXPECT_GE(d.flow(a2), 2);
  EXPECT_EQ(d.flow(a2), d.flow(b2));
}
