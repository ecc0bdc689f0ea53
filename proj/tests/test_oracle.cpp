#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace roundpack;

TEST(ExactUfp, Figure1) {
  const ExactUfp e = exact_ufp(oracle::figure1());
  EXPECT_EQ(e.opt, 1);
  EXPECT_FALSE(verify_ufp(oracle::figure1(), e.packing));
}

TEST(ExactSap, Figure1) {
  const ExactSap e = exact_sap(oracle::figure1());
  EXPECT_EQ(e.opt, 2);
  EXPECT_FALSE(verify_sap(oracle::figure1(), e.packing));
}

TEST(ExactUfp, TwoFullJobs) { EXPECT_EQ(exact_ufp(make_uniform_instance(3, 4, {{0, 3, 4}, {0, 3, 4}})).opt, 2); }

TEST(ExactSap, SingleJob) { EXPECT_EQ(exact_sap(Instance{2, {3, 2}, {{0, 2, 2}}}).opt, 1); }

TEST(Exact, EmptyInstance) {
  EXPECT_EQ(exact_ufp(Instance{1, {1}, {}}).opt, 0);
  EXPECT_EQ(exact_sap(Instance{1, {1}, {}}).opt, 0);
}

TEST(Exact, Guards) {
  EXPECT_THROW(exact_ufp(make_uniform_instance(1, 20, std::vector<Job>(11, Job{0, 1, 1}))), TooLarge);
  EXPECT_THROW(exact_sap(make_uniform_instance(1, 9, {{0, 1, 1}})), TooLarge);
  Guards g;
  g.exact_ufp_rounds = 1;
  EXPECT_THROW(exact_ufp(make_uniform_instance(1, 1, {{0, 1, 1}, {0, 1, 1}}), g), TooLarge);
}

TEST(Exact, RejectsUnpackable) { EXPECT_THROW(exact_ufp(Instance{1, {1}, {{0, 1, 2}}}), PreconditionError); }

TEST(Exact, ChainOfBoundsAndEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed);
    const Instance inst = random_instance({.n = rng.range(1, 6), .m = 5, .cmin = 1, .cmax = 6, .dmax = 4}, seed);
    Guards g;
    g.exact_ufp_rounds = g.exact_sap_rounds = 6;
    const ExactUfp u = exact_ufp(inst, g);
    const ExactSap s = exact_sap(inst, g);
    ASSERT_TRUE(oracle::ufp_ok(inst, u.packing));
    ASSERT_TRUE(oracle::sap_ok(inst, s.packing));
    ASSERT_GE(u.opt, oracle::congestion(inst));
    ASSERT_GE(s.opt, u.opt);
    ASSERT_EQ(u.opt, oracle::ufp_opt_by_enumeration(inst)) << format_instance(inst);
  }
}
