#include "opinionflow/analysis.hpp"

#include <gtest/gtest.h>

#include "opinionflow/error.hpp"
#include "support/random_scenarios.hpp"

namespace opinionflow {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

struct Fixture {
  Graph graph;
  Laplacian lap;
  ZeroEigenstructure eig;
  ConnectivityReport conn;

  explicit Fixture(Graph g)
      : graph(std::move(g)),
        lap(Laplacian::from_graph(graph)),
        eig(zero_eigenstructure(lap)),
        conn(connectivity_report(graph)) {}
};

Fixture k2() { return Fixture(Graph::build(2, {{1, 2, 1.0}, {2, 1, 1.0}})); }
Fixture chain() { return Fixture(Graph::build(2, {{2, 1, 1.0}})); }

TEST(Stability, UndirectedBalancedBiasIsStable) {
  const Fixture f = k2();
  const StabilityReport r = stability_check(f.eig, vec({1, -1}), f.conn);
  EXPECT_TRUE(r.stable);
  EXPECT_EQ(r.special_case, SpecialCase::kUndirectedSum);
  EXPECT_DOUBLE_EQ(r.special_value, 0.0);
}

TEST(Stability, UndirectedUnbalancedBiasIsUnstable) {
  const Fixture f = k2();
  const StabilityReport r = stability_check(f.eig, vec({1, 1}), f.conn);
  EXPECT_FALSE(r.stable);
  ASSERT_EQ(r.projections.size(), 1u);
  EXPECT_NEAR(r.projections[0], 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(r.special_value, 2.0);
}

TEST(Stability, GloballyReachableSpecialCase) {
  const Fixture f = chain();
  const StabilityReport r = stability_check(f.eig, vec({3, 0}), f.conn);
  EXPECT_FALSE(r.stable);
  EXPECT_EQ(r.special_case, SpecialCase::kGloballyReachable);
  EXPECT_NEAR(r.special_value, 3.0, 1e-14);
  // Bias on the follower alone never destabilizes.
  EXPECT_TRUE(stability_check(f.eig, vec({0, 5}), f.conn).stable);
}

TEST(Stability, DimensionMismatch) {
  const Fixture f = k2();
  try {
    stability_check(f.eig, vec({1, 2, 3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

// Expected values solved by hand: L x = b with sum(x) = sum(x0) gives
// x1 - x2 = 1, x1 + x2 = 0.
TEST(SteadyState, UndirectedPair) {
  const Fixture f = k2();
  const SteadyStatePrediction s = steady_state(f.lap, f.eig, vec({0, 0}), vec({1, -1}));
  EXPECT_NEAR(s.x_bar(0), 0.5, 1e-12);
  EXPECT_NEAR(s.x_bar(1), -0.5, 1e-12);
  EXPECT_LT(s.residual, 1e-12);
  const Vector oracle = support::rk4_oracle(f.lap.matrix(), vec({0, 0}), vec({1, -1}), 50.0, 1e-3);
  EXPECT_LT((oracle - s.x_bar).cwiseAbs().maxCoeff(), 1e-9);
}

// Node 1 hears nobody and keeps x0_1 = 2; node 2 settles where
// x2 - x1 = b2 = 5.
TEST(SteadyState, Chain) {
  const Fixture f = chain();
  const SteadyStatePrediction s = steady_state(f.lap, f.eig, vec({2, 0}), vec({0, 5}));
  EXPECT_NEAR(s.x_bar(0), 2.0, 1e-12);
  EXPECT_NEAR(s.x_bar(1), 7.0, 1e-12);
  ASSERT_EQ(s.conserved_values.size(), 1u);
  EXPECT_NEAR(s.conserved_values[0], 2.0, 1e-12);
  const Vector oracle = support::rk4_oracle(f.lap.matrix(), vec({2, 0}), vec({0, 5}), 50.0, 1e-3);
  EXPECT_LT((oracle - s.x_bar).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SteadyState, RefusesUnstableBias) {
  const Fixture f = k2();
  try {
    steady_state(f.lap, f.eig, vec({0, 0}), vec({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotStable);
  }
}

TEST(SteadyState, RandomDigraphsSatisfyEquilibriumAndConservation) {
  support::Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = support::uniform_int(rng, 2, 10);
    const Fixture f(support::random_digraph(rng, n));
    // Anything in the range of L is a stable bias.
    const Vector b = f.lap.matrix() * support::random_vector(rng, n);
    const Vector x0 = support::random_vector(rng, n);
    const SteadyStatePrediction s = steady_state(f.lap, f.eig, x0, b);
    EXPECT_LT((-f.lap.matrix() * s.x_bar + b).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((f.eig.w0.transpose() * (s.x_bar - x0)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(SteadyState, MatchesSymmetricEigenExpansion) {
  support::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = support::uniform_int(rng, 2, 10);
    const Fixture f(support::random_connected_undirected(rng, n));
    Vector b = support::random_vector(rng, n);
    b.array() -= b.mean();
    const Vector x0 = support::random_vector(rng, n);
    const SteadyStatePrediction s = steady_state(f.lap, f.eig, x0, b);
    const Vector oracle = support::eigen_expansion_steady_state(f.lap.matrix(), x0, b);
    EXPECT_LT((s.x_bar - oracle).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Drift, UndirectedAverageMovesWithMeanBias) {
  const Fixture f = k2();
  const auto d = drift_rates(f.eig, vec({0, 0}), vec({1, 1}));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].mode, 1);
  EXPECT_NEAR(d[0].slope, 1.0, 1e-14);
  EXPECT_NEAR(d[0].intercept, 0.0, 1e-14);
}

TEST(Drift, ChainModeFollowsInfluencerBias) {
  const Fixture f = chain();
  const auto d = drift_rates(f.eig, vec({0, 0}), vec({3, 0}));
  EXPECT_NEAR(d[0].slope, 3.0, 1e-14);
}

TEST(Drift, StableBiasHasZeroSlope) {
  const Fixture f = k2();
  const auto d = drift_rates(f.eig, vec({4, 0}), vec({1, -1}));
  EXPECT_NEAR(d[0].slope, 0.0, 1e-14);
  EXPECT_NEAR(d[0].intercept, 2.0, 1e-14);
}

TEST(Drift, SlopesEqualStabilityProjections) {
  support::Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = support::uniform_int(rng, 2, 8);
    const Fixture f(support::random_digraph(rng, n));
    const Vector b = support::random_vector(rng, n);
    const auto d = drift_rates(f.eig, support::random_vector(rng, n), b);
    const StabilityReport r = stability_check(f.eig, b);
    ASSERT_EQ(d.size(), r.projections.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      EXPECT_NEAR(d[i].slope, r.projections[i], 1e-12 * (1.0 + std::abs(d[i].slope)));
  }
}

}  // namespace
}  // namespace opinionflow
