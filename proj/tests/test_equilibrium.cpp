#include <gtest/gtest.h>

#include <cmath>

#include "vigilance/best_response.hpp"
#include "vigilance/equilibrium.hpp"
#include "vigilance/errors.hpp"

namespace vigilance {
namespace {

TEST(FindNash, ExistsForSmallPenalty) {
  const GameConfig cfg = GameConfig::OneOnOne(10, 10.0, 0.001);
  const NashVerdict v = FindNash(cfg);
  ASSERT_TRUE(v.exists);
  ASSERT_TRUE(v.point);
  EXPECT_EQ(v.all_points.size(), 1u);
  EXPECT_NEAR(v.point->g, 0.175, 1e-3);
  EXPECT_NEAR(v.point->a, 0.429, 1e-3);
  EXPECT_FALSE(v.gap_lo);
  EXPECT_TRUE(VerifyNash(v.point->g, v.point->a, cfg));
}

TEST(FindNash, AbsentForLargerPenalty) {
  const GameConfig cfg = GameConfig::OneOnOne(10, 10.0, 0.01);
  const NashVerdict v = FindNash(cfg);
  EXPECT_FALSE(v.exists);
  EXPECT_FALSE(v.point);
  ASSERT_TRUE(v.gap_lo && v.gap_hi);
  const double ap = *FindDiscontinuity(10.0, cfg).a_plus();
  EXPECT_LE(*v.gap_lo, ap);
  EXPECT_GE(*v.gap_hi, ap);
}

TEST(FindNash, HugePenaltyPinsVigilanteToFair) {
  const GameConfig cfg = GameConfig::OneOnOne(10, 10.0, 1e9);
  const NashVerdict v = FindNash(cfg);
  ASSERT_TRUE(v.exists);
  EXPECT_NEAR(v.point->g, 1.0, 1e-12);
  EXPECT_NEAR(v.point->a, 0.1, 1e-6);
  EXPECT_TRUE(VerifyNash(1.0, 0.1, cfg));
}

TEST(FindNash, PointsAreMutualBestResponses) {
  for (double rho : {0.0001, 0.0005, 0.001, 0.002, 0.1, 1.0}) {
    const GameConfig cfg = GameConfig::OneOnOne(10, 10.0, rho);
    const NashVerdict v = FindNash(cfg);
    for (const NashPoint& p : v.all_points) {
      EXPECT_NEAR(p.g, BetaG(p.a, 10.0, cfg), 1e-6) << rho;
      EXPECT_NEAR(p.a, BetaA(p.g, rho, cfg), 1e-6) << rho;
    }
    if (v.exists) {
      EXPECT_TRUE(VerifyNash(v.point->g, v.point->a, cfg)) << rho;
    }
  }
}

TEST(FindNash, StableUnderDoubledResolution) {
  for (double rho : {0.001, 0.01, 0.1}) {
    const GameConfig cfg = GameConfig::OneOnOne(10, 10.0, rho);
    const NashVerdict coarse = FindNash(cfg, 10000);
    const NashVerdict fine = FindNash(cfg, 20000);
    EXPECT_EQ(coarse.exists, fine.exists);
    if (coarse.exists) {
      EXPECT_NEAR(coarse.point->g, fine.point->g, 1e-4);
      EXPECT_NEAR(coarse.point->a, fine.point->a, 1e-4);
    }
  }
}

TEST(FindNash, RequiresOneOnOne) {
  GameConfig cfg = GameConfig::OneOnOne(10, 10.0, 0.01);
  cfg.n_greedy = 2;
  cfg.lambda = {10.0, 10.0};
  EXPECT_THROW(FindNash(cfg), ConfigError);
}

TEST(CheckNash, RejectsNonEquilibrium) {
  const GameConfig cfg = GameConfig::OneOnOne(10, 10.0, 0.001);
  const NashCheck c = CheckNash(0.5, 0.5, cfg);
  EXPECT_FALSE(c.ok);
  EXPECT_GT(c.gap_g, 1e-8);
}

TEST(CheckNash, GapsAreNonnegative) {
  const GameConfig cfg = GameConfig::OneOnOne(10, 10.0, 0.01);
  for (double g : {0.1, 0.3, 0.9}) {
    for (double a : {0.0, 0.4, 0.8}) {
      const NashCheck c = CheckNash(g, a, cfg, 1e-8, 10000);
      EXPECT_GE(c.gap_g, -1e-15);
      EXPECT_GE(c.gap_a, -1e-15);
    }
  }
}

}  // namespace
}  // namespace vigilance
