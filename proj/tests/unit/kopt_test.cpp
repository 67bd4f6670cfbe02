#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "test_support.hpp"
#include "trnrp/exact.hpp"
#include "trnrp/kopt.hpp"

namespace trnrp {
namespace {

using testing::chain3;
using testing::make_instance;
using testing::random_instance;

NodeSet set_of(std::initializer_list<NodeId> ids) {
  NodeSet s;
  for (NodeId i : ids) s.insert(i);
  return s;
}

/// Source and depot at the origin; leaves b=(2,2), c=(0,2), d=(2,0).
Instance crossing() {
  return make_instance({{0, 0}, {0, 0}, {2, 2}, {0, 2}, {2, 0}}, {kNoNode, kNoNode, 1, 1, 1}, 1.0, 0.5);
}

std::size_t choose(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

TEST(Offline, DarkCounts) {
  const Instance c = chain3();
  EXPECT_EQ(offline_dark({}, c), 3);
  EXPECT_EQ(offline_dark(set_of({1}), c), 2);
  EXPECT_EQ(offline_dark(set_of({2, 3}), c), 3);
  EXPECT_EQ(offline_dark(set_of({1, 3}), c), 2);
  EXPECT_EQ(offline_dark(set_of({1, 2, 3}), c), 0);
}

TEST(Offline, LegsOfTheCrossingRoute) {
  const Instance x = crossing();
  const std::vector<NodeId> order{1, 2, 3, 4};
  const auto legs = offline_legs(order, x);
  ASSERT_EQ(legs.size(), 4u);
  EXPECT_DOUBLE_EQ(legs[0].travel, 0.0);
  EXPECT_DOUBLE_EQ(legs[1].travel, std::sqrt(8.0));
  EXPECT_DOUBLE_EQ(legs[2].travel, 2.0);
  EXPECT_DOUBLE_EQ(legs[3].travel, std::sqrt(8.0));
  EXPECT_EQ(legs[0].dark, 4);
  EXPECT_EQ(legs[1].dark, 3);
  EXPECT_EQ(legs[3].dark, 1);
  EXPECT_DOUBLE_EQ(offline_cost(order, x), 1 * 4 + (std::sqrt(8.0) + 1) * 3 + 3 * 2 + (std::sqrt(8.0) + 1));
}

TEST(Offline, RejectsNonPermutations) {
  const Instance c = chain3();
  EXPECT_THROW(offline_legs(std::vector<NodeId>{1, 2}, c), std::invalid_argument);
  EXPECT_THROW(offline_legs(std::vector<NodeId>{1, 2, 2}, c), std::invalid_argument);
  EXPECT_THROW(offline_legs(std::vector<NodeId>{1, 2, 4}, c), std::invalid_argument);
  EXPECT_THROW(double_kopt_check(std::vector<NodeId>{0, 1, 2}, c, 2), std::invalid_argument);
}

TEST(Offline, TraceMatchesCost) {
  Rng rng(6);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = random_instance(9, seed, 0.8, 0.5);
    std::vector<NodeId> order(inst.node_count());
    std::iota(order.begin(), order.end(), 1);
    for (int t = 0; t < 10; ++t) {
      std::shuffle(order.begin(), order.end(), rng);
      const RolloutTrace trace = offline_trace(order, inst);
      EXPECT_EQ(trace.visit_order(), order);
      EXPECT_NEAR(trace.total, offline_cost(order, inst), 1e-9);
    }
  }
}

TEST(Kopt, CrossingRouteHasAWitness) {
  const Instance x = crossing();
  const std::vector<NodeId> order{1, 2, 3, 4};
  const KoptResult r = double_kopt_check(order, x, 2);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  std::vector<NodeId> sorted = r.witness->improved_order;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<NodeId>{1, 2, 3, 4}));
  EXPECT_LT(offline_cost(r.witness->improved_order, x), offline_cost(order, x));

  const auto base = offline_legs(order, x);
  const auto better = offline_legs(r.witness->improved_order, x);
  for (std::size_t q = 0; q < base.size(); ++q) {
    EXPECT_LE(better[q].travel, base[q].travel + 1e-9);
    EXPECT_LE(better[q].dark, base[q].dark);
  }
  const std::size_t q = r.witness->leg;
  EXPECT_TRUE(better[q].travel < base[q].travel - 1e-9 || better[q].dark < base[q].dark);
}

TEST(Kopt, SingleLegRoutePasses) {
  const Instance one = make_instance({{0, 0}, {1, 1}}, {kNoNode, kNoNode}, 1.0, 0.5);
  const std::vector<NodeId> order{1};
  const KoptResult r = double_kopt_check(order, one, 2);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.exchanges_scanned, 0u);
  EXPECT_THROW(double_kopt_check(order, one, 3), std::invalid_argument);
}

TEST(Kopt, RouteLengthLimits) {
  const Instance c = chain3();
  const std::vector<NodeId> order{1, 2, 3};
  EXPECT_THROW(double_kopt_check(order, c, 1), std::invalid_argument);
  EXPECT_THROW(double_kopt_check(order, c, 5), std::invalid_argument);
  const KoptResult r = double_kopt_check(order, c, 4);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.exchanges_scanned, 0u);
}

TEST(Kopt, ScansEveryReconnection) {
  const Instance inst = random_instance(7, 2, 1.0, 0.5);
  const OfflineRoute best = optimal_offline_route(inst);
  for (int k = 2; k <= 3; ++k) {
    const KoptResult r = double_kopt_check(best.order, inst, k);
    ASSERT_TRUE(r.passed);
    EXPECT_EQ(r.exchanges_scanned, choose(7, k) * (factorial(k) * (std::size_t{1} << k) - 1));
  }
}

TEST(Kopt, OptimalOfflineRoutesPass) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = random_instance(4 + static_cast<int>(seed % 5), seed, 0.5, 0.5);
    const OfflineRoute best = optimal_offline_route(inst);
    for (int k = 2; k <= 3; ++k) {
      const KoptResult r = double_kopt_check(best.order, inst, k);
      EXPECT_TRUE(r.passed) << "seed " << seed << " k " << k;
    }
  }
}

TEST(Kopt, TraceOverloadUsesVisitOrder) {
  const Instance x = crossing();
  const std::vector<NodeId> order{1, 2, 3, 4};
  const KoptResult from_trace = double_kopt_check(offline_trace(order, x), x, 2);
  const KoptResult from_order = double_kopt_check(order, x, 2);
  EXPECT_EQ(from_trace.passed, from_order.passed);
  EXPECT_EQ(from_trace.witness->improved_order, from_order.witness->improved_order);
}

}  // namespace
}  // namespace trnrp
