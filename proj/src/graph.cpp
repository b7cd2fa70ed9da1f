#include "distgraph/graph.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "distgraph/errors.hpp"

namespace distgraph {

DistanceGraph::DistanceGraph(std::string name, int vertex_count, std::vector<std::pair<int, int>> edges)
    : name_(std::move(name)), k_(vertex_count) {
  if (k_ < 1) throw ValidationError("graph needs at least one vertex");
  if (k_ > 16) throw ValidationError("graphs above 16 vertices are not supported");
  adj_.assign(k_, {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= k_ || v >= k_) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self loops are not allowed");
    if (u > v) std::swap(u, v);
    if (std::find(edges_.begin(), edges_.end(), std::make_pair(u, v)) != edges_.end()) {
      throw ValidationError("duplicate edge");
    }
    edges_.emplace_back(u, v);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool DistanceGraph::adjacent(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::vector<int>> DistanceGraph::components() const {
  std::vector<int> comp(k_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < k_; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int w : adj_[v]) {
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

bool DistanceGraph::is_connected() const { return components().size() == 1; }

bool DistanceGraph::is_forest() const {
  return static_cast<int>(edges_.size()) == k_ - static_cast<int>(components().size());
}

bool DistanceGraph::is_labelled_path() const {
  if (static_cast<int>(edges_.size()) != k_ - 1) return false;
  for (int i = 0; i + 1 < k_; ++i) {
    if (!adjacent(i, i + 1)) return false;
  }
  return true;
}

DistanceGraph DistanceGraph::induced(const std::vector<int>& vertices) const {
  std::vector<int> pos(k_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> e;
  for (auto [u, v] : edges_) {
    if (pos[u] >= 0 && pos[v] >= 0) e.emplace_back(pos[u], pos[v]);
  }
  return DistanceGraph(name_ + "[sub]", static_cast<int>(vertices.size()), e);
}

namespace {

int parse_order(const std::string& name, std::size_t from) {
  if (from >= name.size()) return -1;
  int k = 0;
  for (std::size_t i = from; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return -1;
    k = k * 10 + (name[i] - '0');
    if (k > 64) return -1;
  }
  if (name[from] == '0' && name.size() > from + 1) return -1;
  return k;
}

}  // namespace

DistanceGraph catalog_graph(const std::string& name) {
  if (name == "C4") return DistanceGraph("C4", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  if (name == "C4t") return DistanceGraph("C4t", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
  if (name == "K3t") return DistanceGraph("K3t", 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  if (name == "Y") return DistanceGraph("Y", 4, {{0, 2}, {1, 2}, {2, 3}});
  if (!name.empty() && (name[0] == 'P' || name[0] == 'K')) {
    const int k = parse_order(name, 1);
    if (name[0] == 'P' && k >= 1 && k <= 15) {
      std::vector<std::pair<int, int>> e;
      for (int i = 0; i < k; ++i) e.emplace_back(i, i + 1);
      return DistanceGraph(name, k + 1, e);
    }
    if (name[0] == 'K' && k >= 2 && k <= 16) {
      std::vector<std::pair<int, int>> e;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
      }
      return DistanceGraph(name, k, e);
    }
  }
  throw ValidationError("unknown catalog graph '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"P1", "P2", "P3", "P7", "K3", "K4", "K6", "C4", "C4t", "K3t", "Y"};
}

std::string graph_to_json(const DistanceGraph& g) {
  nlohmann::json j;
  j["name"] = g.name();
  j["vertex_count"] = g.vertex_count();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u + 1, v + 1});
  return j.dump();
}

DistanceGraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertex_count") || !j.contains("edges")) {
    throw ValidationError("graph JSON needs \"vertex_count\" and \"edges\"");
  }
  std::vector<std::pair<int, int>> e;
  for (const auto& pair : j["edges"]) {
    if (!pair.is_array() || pair.size() != 2) throw ValidationError("graph edge must be a pair");
    e.emplace_back(pair[0].get<int>() - 1, pair[1].get<int>() - 1);
  }
  return DistanceGraph(j.value("name", std::string("custom")), j["vertex_count"].get<int>(), e);
}

}  // namespace distgraph
