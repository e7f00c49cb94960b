#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

#include "vigilance/kernels.hpp"

namespace vigilance::kernels {
namespace {

class Threads : public ::testing::Test {
 protected:
  // Force real concurrency even on a single-core host.
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }
  int saved_ = 1;
};

TEST(GridNode, EndpointsExact) {
  EXPECT_EQ(GridNode(0.1, 0.7, 11, 0), 0.1);
  EXPECT_EQ(GridNode(0.1, 0.7, 11, 10), 0.7);
  EXPECT_EQ(GridNode(0.3, 0.9, 1, 0), 0.3);
  EXPECT_DOUBLE_EQ(GridNode(0.0, 1.0, 5, 2), 0.5);
}

TEST_F(Threads, EvaluateGridMatchesSerial) {
  const auto f = [](double x) { return std::sin(37.0 * x) * std::exp(-x); };
  EXPECT_EQ(EvaluateGrid(f, -1.0, 2.0, 100001),
            EvaluateGridSerial(f, -1.0, 2.0, 100001));
}

TEST_F(Threads, ArgminMatchesSerial) {
  const auto f = [](double x) { return std::cos(13.0 * x) + 0.1 * x * x; };
  const GridMin p = GridArgmin(f, -3.0, 3.0, 200001);
  const GridMin s = GridArgminSerial(f, -3.0, 3.0, 200001);
  EXPECT_EQ(p.index, s.index);
  EXPECT_EQ(p.x, s.x);
  EXPECT_EQ(p.value, s.value);
}

TEST_F(Threads, ArgminTiesResolveToLowestIndex) {
  // Flat minimum over the right half: the first node of it must win.
  const auto f = [](double x) { return x < 0.5 ? 1.0 - x : 0.5; };
  const GridMin p = GridArgmin(f, 0.0, 1.0, 1001);
  EXPECT_EQ(p.index, 500u);
  EXPECT_EQ(p.index, GridArgminSerial(f, 0.0, 1.0, 1001).index);
}

TEST(GridArgmin, QuadraticBowl) {
  const auto f = [](double x) { return (x - 0.3) * (x - 0.3); };
  EXPECT_NEAR(GridArgmin(f, 0.0, 1.0, 1000001).x, 0.3, 1e-6);
}

TEST_F(Threads, MapIndicesPreservesOrder) {
  const auto fn = [](std::size_t i) { return std::vector<double>(i % 7, i); };
  EXPECT_EQ(MapIndices(5000, fn), MapIndicesSerial(5000, fn));
}

TEST(SignChanges, FindsCrossings) {
  const std::vector<double> v{1.0, 0.5, -0.2, -0.1, 0.0, 0.3, 0.2, -1.0};
  const auto c = SignChanges(v);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], std::make_pair(std::size_t{1}, std::size_t{2}));
  EXPECT_EQ(c[1], std::make_pair(std::size_t{3}, std::size_t{4}));
  EXPECT_EQ(c[2], std::make_pair(std::size_t{6}, std::size_t{7}));
}

TEST(SignChanges, NoneForConstantSign) {
  EXPECT_TRUE(SignChanges({1.0, 2.0, 3.0}).empty());
  EXPECT_TRUE(SignChanges({}).empty());
}

}  // namespace
}  // namespace vigilance::kernels
