#include "opinionflow/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "opinionflow/error.hpp"

namespace opinionflow {

ClusterPartition detect_clusters(const Vector& x, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw Error(ErrorCode::kValidation, "cluster tolerance must be positive");

  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x(a) < x(b); });

  ClusterPartition out;
  out.tolerance = tol;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || x(order[k]) - x(order[k - 1]) > tol) out.groups.emplace_back();
    out.groups.back().nodes.push_back(order[k] + 1);
  }
  for (ClusterGroup& g : out.groups) {
    std::sort(g.nodes.begin(), g.nodes.end());
    double sum = 0.0;
    for (int node : g.nodes) sum += x(node - 1);
    g.value = sum / static_cast<double>(g.nodes.size());
  }
  return out;
}

Vector cluster_target(int n, const std::map<int, int>& assignment, const std::map<int, double>& values) {
  std::set<double> distinct;
  for (const auto& [group, value] : values) {
    if (!std::isfinite(value))
      throw Error(ErrorCode::kValidation, "group " + std::to_string(group) + " has a non-finite value");
    if (!distinct.insert(value).second)
      throw Error(ErrorCode::kValidation, "group " + std::to_string(group) + " reuses the value of another group");
  }
  for (const auto& [node, group] : assignment)
    if (node < 1 || node > n) throw Error(ErrorCode::kValidation, "node " + std::to_string(node) + " is out of range");

  Vector x_d(n);
  for (int node = 1; node <= n; ++node) {
    auto a = assignment.find(node);
    if (a == assignment.end())
      throw Error(ErrorCode::kIncompleteAssignment, "node " + std::to_string(node) + " is not assigned to a group");
    auto v = values.find(a->second);
    if (v == values.end())
      throw Error(ErrorCode::kIncompleteAssignment, "group " + std::to_string(a->second) + " has no target value");
    x_d(node - 1) = v->second;
  }
  return x_d;
}

}  // namespace opinionflow
