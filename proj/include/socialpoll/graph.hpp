#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "socialpoll/errors.hpp"

namespace socialpoll {

using Vertex = std::size_t;

/// Undirected edge, normalized so that `u < v`.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge between(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed arc: `from` votes before `to`.
struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Simple undirected graph with sorted adjacency lists.
class Graph {
public:
  Graph() = default;

  /// Throws InputError on self-loops, duplicate edges or out-of-range endpoints.
  Graph(std::size_t n, std::vector<Edge> edges) : adjacency_(n) {
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw InputError("edge endpoint out of range: " + std::to_string(e.u) + "-" + std::to_string(e.v));
      }
      if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(e.u));
      e = Edge::between(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
      throw InputError("duplicate edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
    }
    for (const auto& e : edges) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    edges_ = std::move(edges);
  }

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  bool adjacent(Vertex a, Vertex b) const {
    const auto& nbrs = adjacency_.at(a);
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

  /// Sorted, normalized edge list.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Index of `e` in edges(), if present.
  std::optional<std::size_t> edge_index(Edge e) const {
    e = Edge::between(e.u, e.v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  /// Subgraph induced by `vertices` (sorted), relabelled 0..k-1 in that order.
  Graph induced(const std::vector<Vertex>& vertices) const {
    std::vector<Edge> sub;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (Vertex w : neighbors(vertices[i])) {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
        if (it != vertices.end() && *it == w) {
          auto j = static_cast<std::size_t>(it - vertices.begin());
          if (i < j) sub.push_back({i, j});
        }
      }
    }
    return Graph(vertices.size(), std::move(sub));
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.edges_ == b.edges_ && a.adjacency_.size() == b.adjacency_.size(); }

private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

/// An assignment of a direction to every edge of a graph; arcs kept sorted.
struct Orientation {
  std::vector<Arc> arcs;

  friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// Connected components, each sorted, ordered by smallest vertex id.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> components;
  std::vector<bool> seen(g.num_vertices(), false);
  for (Vertex start = 0; start < g.num_vertices(); ++start) {
    if (seen[start]) continue;
    std::vector<Vertex> component;
    std::vector<Vertex> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

/// Proper 2-colouring if the graph is bipartite.
inline std::optional<std::vector<int>> two_coloring(const Graph& g) {
  std::vector<int> color(g.num_vertices(), -1);
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

/// Lexicographically smallest topological order of the digraph ({0..n-1}, arcs),
/// or nullopt when it has a directed cycle.
inline std::optional<std::vector<Vertex>> lex_min_topological_order(std::size_t n, const std::vector<Arc>& arcs) {
  std::vector<std::vector<Vertex>> out(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& a : arcs) {
    out.at(a.from).push_back(a.to);
    ++indegree.at(a.to);
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Vertex w : out[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

}  // namespace socialpoll
