#include <gtest/gtest.h>

#include "support/corpora.hpp"
#include "support/oracles.hpp"

using namespace roundpack;

TEST(DsaFirstFit, DisjointUnitJobs) {
  const std::vector<Job> jobs{{0, 1, 1}, {1, 2, 1}};
  const auto lay = dsa_first_fit(jobs);
  EXPECT_EQ(lay.height_of, (std::vector<Amount>{0, 0}));
  EXPECT_EQ(dsa_makespan(lay, jobs), 1);
}

TEST(DsaFirstFit, FullOverlapEqualsLoad) {
  const std::vector<Job> jobs{{0, 3, 2}, {0, 3, 3}};
  const auto lay = dsa_first_fit(jobs);
  EXPECT_EQ(lay.height_of, (std::vector<Amount>{0, 2}));
  EXPECT_EQ(dsa_makespan(lay, jobs), 5);
}

TEST(DsaFirstFit, OrderRuleLongerSpanFirst) {
  const std::vector<Job> jobs{{0, 1, 1}, {0, 4, 1}};
  const auto lay = dsa_first_fit(jobs);
  EXPECT_EQ(lay.height_of, (std::vector<Amount>{1, 0}));
}

TEST(DsaFirstFit, ValidAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto jobs = corpora::dsa_jobs(seed);
    const auto a = dsa_first_fit(jobs);
    ASSERT_TRUE(dsa_valid(a, jobs));
    ASSERT_EQ(a.height_of, dsa_first_fit(jobs).height_of);
    ASSERT_GE(dsa_makespan(a, jobs), max_load(jobs));
  }
}

// Worst makespan/L over the fixed corpus, measured once and frozen.
TEST(DsaFirstFit, FrozenCorpusRatio) {
  Amount num = 0, den = 1;
  for (std::uint64_t seed = 0; seed < corpora::kDsaCorpusSize; ++seed) {
    const auto jobs = corpora::dsa_jobs(seed);
    const Amount mk = dsa_makespan(dsa_first_fit(jobs), jobs), L = max_load(jobs);
    if (mk * den > num * L) num = mk, den = L;
  }
  EXPECT_EQ(Rational::of(num, den), corpora::kDsaFirstFitWorst);
}

TEST(DsaMakespan, Basics) {
  EXPECT_EQ(dsa_makespan({}, {}), 0);
  const std::vector<Job> one{{0, 2, 4}};
  EXPECT_EQ(dsa_makespan({{0}}, one), 4);
}

TEST(Gravity, NeverRaisesAndStaysValid) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto jobs = corpora::dsa_jobs(seed);
    DsaLayout lay = dsa_first_fit(jobs);
    for (auto& h : lay.height_of) h = 2 * h + 1;
    const auto g = apply_gravity(lay, jobs);
    ASSERT_TRUE(dsa_valid(g, jobs));
    for (std::size_t j = 0; j < jobs.size(); ++j) ASSERT_LE(g.height_of[j], lay.height_of[j]);
  }
}

TEST(DsaExact, DisjointSpansGiveMaxDemand) {
  const std::vector<Job> jobs{{0, 1, 3}, {1, 2, 5}, {2, 4, 2}};
  EXPECT_EQ(dsa_makespan(dsa_exact(jobs, 20), jobs), 5);
}

TEST(DsaExact, TripleClique) {
  const std::vector<Job> jobs{{0, 3, 1}, {1, 4, 1}, {2, 5, 1}};
  EXPECT_EQ(dsa_makespan(dsa_exact(jobs, 20), jobs), 3);
}

TEST(DsaExact, GuardTrips) {
  std::vector<Job> jobs(9, Job{0, 1, 1});
  EXPECT_THROW(dsa_exact(jobs, 20), TooLarge);
  EXPECT_THROW(dsa_exact(std::vector<Job>{{0, 1, 13}}, 20), TooLarge);
}

TEST(DsaExact, MatchesPermutationOracle) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto jobs = corpora::tiny_dsa_jobs(seed);
    const auto lay = dsa_exact(jobs, 40);
    ASSERT_TRUE(dsa_valid(lay, jobs));
    const Amount mk = dsa_makespan(lay, jobs);
    ASSERT_EQ(mk, oracle::dsa_opt_by_permutation(jobs)) << "seed " << seed;
    ASSERT_GE(mk, max_load(jobs));
  }
}

TEST(DsaExact, EqualsLoadOnCliques) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    std::vector<Job> jobs;
    const int k = rng.range(1, 6);
    for (int i = 0; i < k; ++i) jobs.push_back({rng.range(0, 3), rng.range(4, 8), rng.range(Amount{1}, Amount{2})});
    EXPECT_EQ(dsa_makespan(dsa_exact(jobs, 40), jobs), max_load(jobs));
  }
}
