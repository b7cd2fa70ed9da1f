#pragma once

#include <string>
#include <utility>
#include <vector>

namespace distgraph {

// Finite simple graph on vertices 0..k-1. Catalog names use 1-based labels in the
// literature; internally everything is 0-based.
class DistanceGraph {
 public:
  DistanceGraph() = default;
  DistanceGraph(std::string name, int vertex_count, std::vector<std::pair<int, int>> edges);

  const std::string& name() const { return name_; }
  int vertex_count() const { return k_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const;

  bool is_connected() const;
  bool is_forest() const;
  // edges exactly (i, i+1) for i = 0..k-2
  bool is_labelled_path() const;
  // vertex sets of connected components, each sorted, ordered by smallest vertex
  std::vector<std::vector<int>> components() const;
  DistanceGraph induced(const std::vector<int>& vertices) const;

 private:
  std::string name_;
  int k_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

// P<k>, K<k>, C4, C4t, K3t, Y (case sensitive, e.g. "P2", "K6")
DistanceGraph catalog_graph(const std::string& name);
std::vector<std::string> catalog_names();

// {"name": ..., "vertex_count": k, "edges": [[i, j], ...]} with 1-based labels
std::string graph_to_json(const DistanceGraph& g);
DistanceGraph graph_from_json(const std::string& text);

}  // namespace distgraph
