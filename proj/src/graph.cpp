#include "opinionflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "opinionflow/error.hpp"

namespace opinionflow {
namespace {

std::string describe(std::size_t index, const Edge& e) {
  std::ostringstream os;
  os << "edge #" << index + 1 << " (" << e.from << " -> " << e.to << ", weight " << e.weight << ")";
  return os.str();
}

// Iterative Tarjan. Returns the component id of each 0-based node.
std::vector<int> strongly_connected(int n, const std::vector<std::vector<int>>& out) {
  constexpr int kUnvisited = -1;
  std::vector<int> index(n, kUnvisited), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;
  int next_comp = 0;

  struct Frame {
    int node;
    std::size_t child;
  };
  std::vector<Frame> call;

  for (int root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const int v = f.node;
      if (f.child < out[v].size()) {
        const int w = out[v][f.child++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return comp;
}

bool underlying_connected(int n, const std::vector<Edge>& edges) {
  if (n <= 1) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  int groups = n;
  for (const Edge& e : edges) {
    const int a = find(e.from - 1), b = find(e.to - 1);
    if (a != b) {
      parent[a] = b;
      --groups;
    }
  }
  return groups == 1;
}

bool symmetric_weights(const std::vector<Edge>& edges) {
  std::map<std::pair<int, int>, double> w;
  for (const Edge& e : edges) w[{e.from, e.to}] = e.weight;
  return std::all_of(edges.begin(), edges.end(), [&](const Edge& e) {
    auto it = w.find({e.to, e.from});
    return it != w.end() && it->second == e.weight;
  });
}

}  // namespace

Graph Graph::build(int n, std::vector<Edge> edges) {
  if (n < 1) throw Error(ErrorCode::kValidation, "graph needs at least one node, got n = " + std::to_string(n));
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n)
      throw Error(ErrorCode::kValidation, describe(k, e) + ": node id outside 1.." + std::to_string(n));
    if (e.from == e.to) throw Error(ErrorCode::kValidation, describe(k, e) + ": self-loop");
    if (!std::isfinite(e.weight) || e.weight <= 0.0)
      throw Error(ErrorCode::kValidation, describe(k, e) + ": weight must be positive and finite");
    if (!seen.insert({e.from, e.to}).second)
      throw Error(ErrorCode::kValidation, describe(k, e) + ": duplicate edge");
  }
  return Graph(n, std::move(edges));
}

Matrix Graph::adjacency() const {
  Matrix a = Matrix::Zero(n_, n_);
  for (const Edge& e : edges_) a(e.from - 1, e.to - 1) = e.weight;
  return a;
}

Laplacian Laplacian::from_graph(const Graph& g) {
  Matrix l = -g.adjacency();
  for (int i = 0; i < g.size(); ++i) l(i, i) = 0.0;
  for (const Edge& e : g.edges()) l(e.from - 1, e.from - 1) += e.weight;
  return Laplacian(std::move(l));
}

Laplacian Laplacian::from_matrix(Matrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::kValidation, "Laplacian must be a nonempty square matrix");
  if (!m.allFinite()) throw Error(ErrorCode::kValidation, "Laplacian has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) > 0.0)
        throw Error(ErrorCode::kValidation, "Laplacian off-diagonal entry (" + std::to_string(i + 1) +
                                                "," + std::to_string(j + 1) + ") is positive");
    }
    if (std::abs(m.row(i).sum()) > tol * scale)
      throw Error(ErrorCode::kValidation, "Laplacian row " + std::to_string(i + 1) + " does not sum to zero");
  }
  return Laplacian(std::move(m));
}

double Laplacian::inf_norm() const { return m_.cwiseAbs().rowwise().sum().maxCoeff(); }

std::string_view graph_class_name(GraphClass c) noexcept {
  switch (c) {
    case GraphClass::kUndirected: return "undirected";
    case GraphClass::kStronglyConnected: return "strongly_connected";
    case GraphClass::kWeaklyConnected: return "weakly_connected";
    case GraphClass::kDisconnected: return "disconnected";
  }
  return "unknown";
}

ConnectivityReport connectivity_report(const Graph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> out(n);
  for (const Edge& e : g.edges()) out[e.from - 1].push_back(e.to - 1);
  for (auto& adj : out) std::sort(adj.begin(), adj.end());

  const std::vector<int> raw = strongly_connected(n, out);

  // Renumber components by their smallest node so the report is canonical.
  std::vector<int> relabel(n, -1);
  ConnectivityReport report;
  for (int v = 0; v < n; ++v) {
    if (relabel[raw[v]] < 0) {
      relabel[raw[v]] = static_cast<int>(report.sccs.size());
      report.sccs.emplace_back();
    }
    report.sccs[relabel[raw[v]]].push_back(v + 1);
  }
  const int count = static_cast<int>(report.sccs.size());

  std::set<std::pair<int, int>> cedges;
  for (const Edge& e : g.edges()) {
    const int a = relabel[raw[e.from - 1]], b = relabel[raw[e.to - 1]];
    if (a != b) cedges.insert({a, b});
  }
  report.condensation_edges.assign(cedges.begin(), cedges.end());

  std::vector<bool> has_out(count, false);
  for (const auto& [a, b] : cedges) has_out[a] = true;
  for (int c = 0; c < count; ++c)
    if (!has_out[c]) report.sink_components.push_back(c);

  if (report.sink_components.size() == 1) report.globally_reachable = report.sccs[report.sink_components.front()];

  if (!underlying_connected(n, g.edges())) {
    report.graph_class = GraphClass::kDisconnected;
  } else if (symmetric_weights(g.edges())) {
    report.graph_class = GraphClass::kUndirected;
  } else if (count == 1) {
    report.graph_class = GraphClass::kStronglyConnected;
  } else {
    report.graph_class = GraphClass::kWeaklyConnected;
  }
  return report;
}

}  // namespace opinionflow
