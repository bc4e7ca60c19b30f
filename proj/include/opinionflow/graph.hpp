#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "opinionflow/types.hpp"

namespace opinionflow {

// Nodes are labeled 1..n. An edge (i, j) means agent i listens to agent j:
// j belongs to the out-neighborhood of i and a_ij weighs j's influence on i.
struct Edge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

/// Weighted digraph with strictly positive edge weights, immutable once built.
class Graph {
 public:
  /// Validates and builds. Throws Error(kValidation) naming the offending
  /// edge on nonpositive or non-finite weights, self-loops, out-of-range ids
  /// or duplicate ordered pairs.
  static Graph build(int n, std::vector<Edge> edges);

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Dense adjacency matrix, A(i-1, j-1) = a_ij.
  Matrix adjacency() const;

 private:
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {}

  int n_;
  std::vector<Edge> edges_;
};

/// L = D - A with out-degree diagonal. Every row sums to zero.
class Laplacian {
 public:
  static Laplacian from_graph(const Graph& g);

  /// Accepts a hand-written Laplacian; throws Error(kValidation) unless the
  /// matrix is square, has nonpositive off-diagonal entries and zero row sums
  /// within `tol` relative to its infinity norm.
  static Laplacian from_matrix(Matrix m, double tol = 1e-12);

  int size() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

  /// Maximum absolute row sum.
  double inf_norm() const;

 private:
  explicit Laplacian(Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

enum class GraphClass { kUndirected, kStronglyConnected, kWeaklyConnected, kDisconnected };

std::string_view graph_class_name(GraphClass c) noexcept;

struct ConnectivityReport {
  /// Each component lists its node ids ascending; components are ordered by
  /// their smallest node id.
  std::vector<std::vector<int>> sccs;
  /// Edges between component indices of `sccs`, sorted, no duplicates.
  std::vector<std::pair<int, int>> condensation_edges;
  /// Component indices with no outgoing condensation edge.
  std::vector<int> sink_components;
  /// Nodes reachable from every node; empty unless exactly one sink exists.
  std::vector<int> globally_reachable;
  GraphClass graph_class = GraphClass::kDisconnected;
};

ConnectivityReport connectivity_report(const Graph& g);

}  // namespace opinionflow
