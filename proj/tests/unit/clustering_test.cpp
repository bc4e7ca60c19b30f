#include "opinionflow/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

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

TEST(Clusters, FourGroups) {
  const ClusterPartition p = detect_clusters(vec({-14, 1, 6, -14, 6, 11}), 0.5);
  ASSERT_EQ(p.groups.size(), 4u);
  EXPECT_EQ(p.groups[0].nodes, (std::vector<int>{1, 4}));
  EXPECT_DOUBLE_EQ(p.groups[0].value, -14.0);
  EXPECT_EQ(p.groups[1].nodes, (std::vector<int>{2}));
  EXPECT_EQ(p.groups[2].nodes, (std::vector<int>{3, 5}));
  EXPECT_EQ(p.groups[3].nodes, (std::vector<int>{6}));
  EXPECT_DOUBLE_EQ(p.groups[3].value, 11.0);
}

TEST(Clusters, Polarisation) {
  const ClusterPartition p = detect_clusters(vec({-10, 10, 10, -10, 10, -10}), 0.5);
  ASSERT_EQ(p.groups.size(), 2u);
  EXPECT_EQ(p.groups[0].nodes, (std::vector<int>{1, 4, 6}));
  EXPECT_EQ(p.groups[1].nodes, (std::vector<int>{2, 3, 5}));
}

TEST(Clusters, ConsensusAndTolerance) {
  EXPECT_EQ(detect_clusters(vec({2.0, 2.1, 1.95}), 0.5).groups.size(), 1u);
  EXPECT_EQ(detect_clusters(vec({0.0, 0.6}), 0.5).groups.size(), 2u);
  EXPECT_THROW(detect_clusters(vec({1}), 0.0), Error);
}

TEST(Clusters, PermutationEquivariant) {
  support::Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = support::uniform_int(rng, 1, 12);
    const Vector x = support::random_vector(rng, n, -3, 3);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Vector y(n);
    for (int i = 0; i < n; ++i) y(perm[i]) = x(i);
    const ClusterPartition px = detect_clusters(x, 0.5), py = detect_clusters(y, 0.5);
    ASSERT_EQ(px.groups.size(), py.groups.size());
    for (std::size_t g = 0; g < px.groups.size(); ++g) {
      std::vector<int> mapped;
      for (int node : px.groups[g].nodes) mapped.push_back(perm[node - 1] + 1);
      std::sort(mapped.begin(), mapped.end());
      EXPECT_EQ(mapped, py.groups[g].nodes);
    }
  }
}

TEST(Clusters, PartitionCoversNodesOnce) {
  support::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = support::uniform_int(rng, 1, 20);
    const ClusterPartition p = detect_clusters(support::random_vector(rng, n, -5, 5), 0.7);
    std::vector<int> seen;
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
      seen.insert(seen.end(), p.groups[g].nodes.begin(), p.groups[g].nodes.end());
      if (g > 0) EXPECT_LT(p.groups[g - 1].value, p.groups[g].value);
    }
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    EXPECT_EQ(seen, all);
  }
}

// Single linkage: members chain together in steps of at most tol, and
// neighbouring groups are separated by more than tol. A chain can be wider
// than tol overall.
TEST(Clusters, GapInvariant) {
  support::Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = support::uniform_int(rng, 1, 20);
    const Vector x = support::random_vector(rng, n, -4, 4);
    const double tol = support::uniform(rng, 0.1, 1.0);
    const ClusterPartition p = detect_clusters(x, tol);
    EXPECT_EQ(p.tolerance, tol);
    double prev_max = -INFINITY;
    for (const ClusterGroup& g : p.groups) {
      std::vector<double> v;
      for (int node : g.nodes) v.push_back(x(node - 1));
      std::sort(v.begin(), v.end());
      for (std::size_t k = 1; k < v.size(); ++k) EXPECT_LE(v[k] - v[k - 1], tol);
      EXPECT_GT(v.front() - prev_max, tol);
      prev_max = v.back();
    }
    for (std::size_t g = 1; g < p.groups.size(); ++g) EXPECT_GT(p.groups[g].value - p.groups[g - 1].value, tol);
  }
  EXPECT_EQ(detect_clusters(vec({0.0, 0.4, 0.8}), 0.5).groups.size(), 1u);
}

TEST(ClusterTarget, Builds) {
  EXPECT_EQ(cluster_target(4, {{1, 0}, {2, 0}, {3, 1}, {4, 1}}, {{0, 5.0}, {1, -5.0}}), vec({5, 5, -5, -5}));
  EXPECT_EQ(cluster_target(3, {{1, 0}, {2, 0}, {3, 0}}, {{0, 2.5}}), vec({2.5, 2.5, 2.5}));
  const Vector x = cluster_target(4, {{1, 0}, {2, 1}, {3, 0}, {4, 1}}, {{0, -1.0}, {1, 2.5}});
  EXPECT_EQ(x, vec({-1, 2.5, -1, 2.5}));
}

TEST(ClusterTarget, Errors) {
  try {
    cluster_target(3, {{1, 0}, {2, 0}}, {{0, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompleteAssignment);
  }
  try {
    cluster_target(2, {{1, 0}, {2, 7}}, {{0, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompleteAssignment);
  }
  try {
    cluster_target(2, {{1, 0}, {2, 1}}, {{0, 1.0}, {1, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
  EXPECT_THROW(cluster_target(2, {{1, 0}, {2, 0}, {5, 0}}, {{0, 1.0}}), Error);
}

// Clusters recovered from a designed target give back the same grouping.
TEST(ClusterTarget, RoundTrip) {
  support::Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = support::uniform_int(rng, 1, 12);
    const int k = support::uniform_int(rng, 1, n);
    std::map<int, double> values;
    for (int g = 0; g < k; ++g) values[g] = 3.0 * g + support::uniform(rng, 0.0, 1.0);
    std::map<int, int> assign;
    for (int i = 1; i <= n; ++i) assign[i] = i <= k ? i - 1 : support::uniform_int(rng, 0, k - 1);
    const ClusterPartition p = detect_clusters(cluster_target(n, assign, values), 0.5);
    ASSERT_EQ(static_cast<int>(p.groups.size()), k);
    for (int g = 0; g < k; ++g) {
      EXPECT_DOUBLE_EQ(p.groups[g].value, values[g]);
      for (int node : p.groups[g].nodes) EXPECT_EQ(assign[node], g);
    }
  }
}

}  // namespace
}  // namespace opinionflow
