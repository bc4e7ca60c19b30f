#pragma once

#include <map>
#include <vector>

#include "opinionflow/types.hpp"

namespace opinionflow {

struct ClusterGroup {
  std::vector<int> nodes;  // ascending, 1-based
  double value = 0.0;      // mean opinion of the group
};

struct ClusterPartition {
  std::vector<ClusterGroup> groups;  // ordered by value
  double tolerance = 0.0;
};

/// Single-linkage grouping on the real line: sort the opinions and cut
/// wherever two neighbours are more than `tol` apart.
/// Throws Error(kValidation) unless tol > 0.
ClusterPartition detect_clusters(const Vector& x, double tol);

/// x_d[i] = values[assignment[i]] for nodes 1..n. Throws
/// Error(kIncompleteAssignment) if a node has no group or a group has no
/// value, and Error(kValidation) if two groups share a value.
Vector cluster_target(int n, const std::map<int, int>& assignment,
                      const std::map<int, double>& values);

}  // namespace opinionflow
