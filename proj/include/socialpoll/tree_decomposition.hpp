#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "socialpoll/errors.hpp"
#include "socialpoll/graph.hpp"

namespace socialpoll {

/// Bags (each sorted) connected by an undirected tree on bag indices.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

  /// max |bag| - 1; 0 for a decomposition without vertices.
  std::size_t width() const {
    std::size_t widest = 0;
    for (const auto& b : bags) widest = std::max(widest, b.size());
    return widest == 0 ? 0 : widest - 1;
  }
};

enum class TdViolationKind { none, bad_vertex, not_a_tree, uncovered_edge, missing_vertex, disconnected_vertex };

struct TdReport {
  TdViolationKind kind = TdViolationKind::none;
  std::string message;
  Vertex vertex = 0;  // offending vertex, where applicable
  Edge edge{};        // uncovered edge, where applicable

  bool ok() const noexcept { return kind == TdViolationKind::none; }
};

/// Checks tree-ness, edge coverage and connectivity of every vertex's bag set.
/// Reports the first violation found.
inline TdReport validate_td(const Graph& g, const TreeDecomposition& td) {
  const std::size_t m = td.bags.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (Vertex v : td.bags[i]) {
      if (v >= g.num_vertices()) {
        return {TdViolationKind::bad_vertex, "bag " + std::to_string(i) + " contains unknown vertex " + std::to_string(v), v};
      }
    }
  }

  std::vector<std::vector<std::size_t>> tree(m);
  for (auto [a, b] : td.tree_edges) {
    if (a >= m || b >= m || a == b) return {TdViolationKind::not_a_tree, "invalid tree edge " + std::to_string(a) + "-" + std::to_string(b)};
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  if (m == 0 || td.tree_edges.size() != m - 1) {
    return {TdViolationKind::not_a_tree, "decomposition tree needs exactly #bags-1 edges and at least one bag"};
  }
  {
    std::vector<bool> seen(m, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      ++reached;
      for (auto j : tree[i]) {
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    if (reached != m) return {TdViolationKind::not_a_tree, "decomposition tree is not connected (so it has a cycle)"};
  }

  std::vector<std::vector<std::size_t>> bags_of(g.num_vertices());
  for (std::size_t i = 0; i < m; ++i) {
    for (Vertex v : td.bags[i]) bags_of[v].push_back(i);
  }
  for (const auto& e : g.edges()) {
    bool covered = false;
    for (auto i : bags_of[e.u]) {
      const auto& bag = td.bags[i];
      if (std::find(bag.begin(), bag.end(), e.v) != bag.end()) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      TdReport r{TdViolationKind::uncovered_edge, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not covered by any bag"};
      r.edge = e;
      return r;
    }
  }

  std::vector<bool> holds(m, false);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto& mine = bags_of[v];
    if (mine.empty()) return {TdViolationKind::missing_vertex, "vertex " + std::to_string(v) + " is in no bag", v};
    for (auto i : mine) holds[i] = true;
    std::vector<std::size_t> stack{mine.front()};
    std::vector<bool> seen(m, false);
    seen[mine.front()] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      ++reached;
      for (auto j : tree[i]) {
        if (holds[j] && !seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    for (auto i : mine) holds[i] = false;
    if (reached != mine.size()) {
      return {TdViolationKind::disconnected_vertex, "bags containing vertex " + std::to_string(v) + " are not connected in the tree", v};
    }
  }
  return {};
}

/// Decomposition induced by eliminating vertices in `order` (first entry eliminated first).
/// Bag of v = v plus its neighbours (with fill) at elimination time; components are chained.
inline TreeDecomposition td_from_elimination_order(const Graph& g, const std::vector<Vertex>& order) {
  const std::size_t n = g.num_vertices();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }
  if (order.size() != n) throw InputError("elimination order must list every vertex once");
  std::vector<std::size_t> position(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || position[order[k]] != n) throw InputError("elimination order must list every vertex once");
    position[order[k]] = k;
  }

  std::vector<std::set<Vertex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  td.bags.resize(n);
  std::vector<std::size_t> parent(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vertex v = order[k];
    std::vector<Vertex> later(adj[v].begin(), adj[v].end());
    auto& bag = td.bags[k];
    bag = later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    std::size_t next = n;
    for (Vertex w : later) next = std::min(next, position[w]);
    parent[k] = next;
    for (std::size_t i = 0; i < later.size(); ++i) {
      adj[later[i]].erase(v);
      for (std::size_t j = i + 1; j < later.size(); ++j) {
        adj[later[i]].insert(later[j]);
        adj[later[j]].insert(later[i]);
      }
    }
    adj[v].clear();
  }
  std::size_t previous_root = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (parent[k] != n) {
      td.tree_edges.emplace_back(k, parent[k]);
    } else {
      if (previous_root != n) td.tree_edges.emplace_back(previous_root, k);
      previous_root = k;
    }
  }
  return td;
}

/// Greedy min-fill elimination ordering; ties broken by lowest vertex id.
inline std::vector<Vertex> min_fill_order(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::set<Vertex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  auto fill_of = [&](Vertex v) {
    std::size_t missing = 0;
    for (auto i = adj[v].begin(); i != adj[v].end(); ++i) {
      for (auto j = std::next(i); j != adj[v].end(); ++j) {
        if (!adj[*i].contains(*j)) ++missing;
      }
    }
    return missing;
  };
  std::vector<std::size_t> fill(n);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    fill[v] = fill_of(v);
    queue.emplace(fill[v], v);
  }
  std::vector<bool> gone(n, false);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!queue.empty()) {
    const Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    gone[v] = true;
    order.push_back(v);
    std::vector<Vertex> nbrs(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      adj[nbrs[i]].erase(v);
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[nbrs[i]].insert(nbrs[j]);
        adj[nbrs[j]].insert(nbrs[i]);
      }
    }
    adj[v].clear();
    std::set<Vertex> touched(nbrs.begin(), nbrs.end());
    for (Vertex w : nbrs) touched.insert(adj[w].begin(), adj[w].end());
    for (Vertex w : touched) {
      if (gone[w]) continue;
      queue.erase({fill[w], w});
      fill[w] = fill_of(w);
      queue.emplace(fill[w], w);
    }
  }
  return order;
}

inline TreeDecomposition heuristic_td(const Graph& g) { return td_from_elimination_order(g, min_fill_order(g)); }

/// Optimal-width decomposition by dynamic programming over vertex subsets
/// (TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)). Exponential; guarded by `max_n`.
inline TreeDecomposition exact_td_small(const Graph& g, std::size_t max_n = 14) {
  const std::size_t n = g.num_vertices();
  if (n > max_n) {
    throw ResourceError("exact treewidth search limited to " + std::to_string(max_n) + " vertices, graph has " + std::to_string(n));
  }
  if (n > 24) throw ResourceError("exact treewidth search supports at most 24 vertices");
  if (n == 0) return td_from_elimination_order(g, {});

  std::vector<std::uint32_t> nbr(n, 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  // |Q(S, v)|: vertices outside S + v reachable from v through S.
  auto q_size = [&](std::uint32_t s, Vertex v) {
    std::uint32_t reached = 1u << v;
    std::uint32_t frontier = reached;
    std::uint32_t outside = 0;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbr[std::countr_zero(f)];
      next &= ~reached;
      reached |= next;
      outside |= next & ~s;
      frontier = next & s;
    }
    return std::popcount(outside);
  };

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<int> tw(std::size_t{full} + 1, std::numeric_limits<int>::max());
  std::vector<std::uint8_t> last(std::size_t{full} + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(rest));
      const std::uint32_t without = s & ~(1u << v);
      const int cost = std::max(tw[without], q_size(without, v));
      if (cost < tw[s]) {
        tw[s] = cost;
        last[s] = static_cast<std::uint8_t>(v);
      }
    }
    if (s == full) break;
  }
  std::vector<Vertex> order(n);
  std::uint32_t s = full;
  for (std::size_t k = n; k-- > 0;) {
    order[k] = last[s];
    s &= ~(1u << last[s]);
  }
  return td_from_elimination_order(g, order);
}

enum class NiceKind { leaf, insert, forget, join };

inline const char* to_string(NiceKind kind) {
  switch (kind) {
    case NiceKind::leaf: return "leaf";
    case NiceKind::insert: return "insert";
    case NiceKind::forget: return "forget";
    case NiceKind::join: return "join";
  }
  return "?";
}

struct NiceNode {
  NiceKind kind = NiceKind::leaf;
  std::vector<Vertex> bag;  // sorted
  Vertex vertex = 0;        // the leaf's vertex, or the inserted/forgotten vertex
  std::vector<std::size_t> children;
};

/// Rooted nice decomposition. Nodes are stored children-first, the root (empty bag) last.
/// The only node allowed to be a leaf with an empty bag is the sole node of the empty graph.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  std::size_t root = 0;

  std::size_t width() const {
    std::size_t widest = 0;
    for (const auto& node : nodes) widest = std::max(widest, node.bag.size());
    return widest == 0 ? 0 : widest - 1;
  }

  /// The underlying (unrooted) decomposition.
  TreeDecomposition as_tree_decomposition() const {
    TreeDecomposition td;
    for (const auto& node : nodes) td.bags.push_back(node.bag);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (auto c : nodes[i].children) td.tree_edges.emplace_back(c, i);
    }
    return td;
  }
};

namespace detail {

inline std::vector<Vertex> without(const std::vector<Vertex>& bag, Vertex v) {
  std::vector<Vertex> out;
  out.reserve(bag.size());
  for (Vertex w : bag) {
    if (w != v) out.push_back(w);
  }
  return out;
}

inline std::vector<Vertex> with(const std::vector<Vertex>& bag, Vertex v) {
  std::vector<Vertex> out = bag;
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return out;
}

class NiceBuilder {
public:
  std::size_t leaf(Vertex v) { return push({NiceKind::leaf, {v}, v, {}}); }

  std::size_t insert(std::size_t child, Vertex v) {
    return push({NiceKind::insert, with(nodes_[child].bag, v), v, {child}});
  }

  std::size_t forget(std::size_t child, Vertex v) {
    return push({NiceKind::forget, without(nodes_[child].bag, v), v, {child}});
  }

  std::size_t join(std::size_t a, std::size_t b) { return push({NiceKind::join, nodes_[a].bag, 0, {a, b}}); }

  /// Chain of forgets then inserts turning the bag of `from` into `target`.
  std::size_t transition(std::size_t from, const std::vector<Vertex>& target) {
    std::vector<Vertex> drop;
    std::vector<Vertex> add;
    const auto source = nodes_[from].bag;
    std::set_difference(source.begin(), source.end(), target.begin(), target.end(), std::back_inserter(drop));
    std::set_difference(target.begin(), target.end(), source.begin(), source.end(), std::back_inserter(add));
    for (Vertex v : drop) from = forget(from, v);
    for (Vertex v : add) from = insert(from, v);
    return from;
  }

  std::size_t chain_up(const std::vector<Vertex>& bag) {
    std::size_t top = leaf(bag.front());
    for (std::size_t i = 1; i < bag.size(); ++i) top = insert(top, bag[i]);
    return top;
  }

  const NiceNode& node(std::size_t i) const { return nodes_[i]; }
  std::vector<NiceNode> take() { return std::move(nodes_); }

private:
  std::size_t push(NiceNode node) {
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  std::vector<NiceNode> nodes_;
};

}  // namespace detail

/// Converts a valid decomposition into nice form with the same width. Empty bags are
/// dropped first; the tree is rooted at the first remaining bag, and a chain of forget
/// nodes above it ends in the empty root bag.
inline NiceTreeDecomposition make_nice(const TreeDecomposition& input) {
  // Edge coverage needs the graph; tree shape and vertex connectivity do not.
  std::size_t span = 0;
  for (const auto& bag : input.bags) {
    for (Vertex v : bag) span = std::max(span, v + 1);
  }
  if (auto report = validate_td(Graph(span, {}), input); !report.ok()) {
    throw InputError("invalid tree decomposition: " + report.message);
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < input.bags.size(); ++i) {
    if (!input.bags[i].empty()) keep.push_back(i);
  }
  if (keep.empty()) {
    NiceTreeDecomposition trivial;
    trivial.nodes.push_back({NiceKind::leaf, {}, 0, {}});
    return trivial;
  }

  // Rebuild the tree on non-empty bags: neighbours of a dropped bag are attached to one of
  // them, which keeps it a tree (a dropped bag separates no shared vertex).
  const std::size_t m = input.bags.size();
  std::vector<std::vector<std::size_t>> adj(m);
  for (auto [a, b] : input.tree_edges) {
    adj.at(a).push_back(b);
    adj.at(b).push_back(a);
  }
  std::vector<std::vector<std::size_t>> tree(m);
  {
    std::vector<bool> seen(m, false);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{keep.front(), m}};  // (bag, nearest non-empty ancestor)
    seen[keep.front()] = true;
    while (!stack.empty()) {
      auto [i, anchor] = stack.back();
      stack.pop_back();
      std::size_t next_anchor = anchor;
      if (!input.bags[i].empty()) {
        if (anchor != m) {
          tree[anchor].push_back(i);
          tree[i].push_back(anchor);
        }
        next_anchor = i;
      }
      for (auto j : adj[i]) {
        if (!seen[j]) {
          seen[j] = true;
          stack.emplace_back(j, next_anchor);
        }
      }
    }
  }
  std::vector<std::vector<Vertex>> bags(m);
  for (auto i : keep) {
    bags[i] = input.bags[i];
    std::sort(bags[i].begin(), bags[i].end());
    bags[i].erase(std::unique(bags[i].begin(), bags[i].end()), bags[i].end());
  }

  // BFS order from the root; process in reverse so children come first.
  const std::size_t root = keep.front();
  std::vector<std::size_t> order{root};
  std::vector<std::size_t> parent(m, m);
  std::vector<bool> seen(m, false);
  seen[root] = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (auto j : tree[order[k]]) {
      if (!seen[j]) {
        seen[j] = true;
        parent[j] = order[k];
        order.push_back(j);
      }
    }
  }

  detail::NiceBuilder builder;
  std::vector<std::vector<std::size_t>> pending(m);  // nice tops of already-built children
  std::vector<std::size_t> top(m, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto i = *it;
    std::vector<std::size_t> arms;
    for (auto child_top : pending[i]) arms.push_back(builder.transition(child_top, bags[i]));
    std::size_t here;
    if (arms.empty()) {
      here = builder.chain_up(bags[i]);
    } else {
      here = arms.front();
      for (std::size_t a = 1; a < arms.size(); ++a) here = builder.join(here, arms[a]);
    }
    top[i] = here;
    if (parent[i] != m) pending[parent[i]].push_back(here);
  }

  std::size_t r = top[root];
  for (Vertex v : bags[root]) r = builder.forget(r, v);

  NiceTreeDecomposition nice;
  nice.nodes = builder.take();
  nice.root = r;
  return nice;
}

/// Checks the node-type rules, children-first storage, empty root and that the underlying
/// decomposition is valid for `g`. Empty string means valid.
inline std::string validate_nice(const Graph& g, const NiceTreeDecomposition& nice) {
  if (nice.nodes.empty()) return "no nodes";
  if (nice.root != nice.nodes.size() - 1) return "root must be the last node";
  if (!nice.nodes[nice.root].bag.empty()) return "root bag must be empty";
  std::vector<int> parents(nice.nodes.size(), 0);
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    const auto& node = nice.nodes[i];
    const std::string where = "node " + std::to_string(i) + ": ";
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) return where + "bag not sorted";
    for (auto c : node.children) {
      if (c >= i) return where + "children must precede their parent";
      ++parents[c];
    }
    switch (node.kind) {
      case NiceKind::leaf:
        if (!node.children.empty()) return where + "leaf with children";
        if (node.bag.size() != 1 || node.bag.front() != node.vertex) {
          if (!(node.bag.empty() && nice.nodes.size() == 1)) return where + "leaf bag must be exactly {vertex}";
        }
        break;
      case NiceKind::insert: {
        if (node.children.size() != 1) return where + "insert needs one child";
        const auto& child = nice.nodes[node.children[0]].bag;
        if (child != detail::without(node.bag, node.vertex) || child.size() + 1 != node.bag.size()) {
          return where + "insert bag must be child bag plus the vertex";
        }
        break;
      }
      case NiceKind::forget: {
        if (node.children.size() != 1) return where + "forget needs one child";
        const auto& child = nice.nodes[node.children[0]].bag;
        if (node.bag != detail::without(child, node.vertex) || node.bag.size() + 1 != child.size()) {
          return where + "forget bag must be child bag minus the vertex";
        }
        break;
      }
      case NiceKind::join:
        if (node.children.size() != 2) return where + "join needs two children";
        if (nice.nodes[node.children[0]].bag != node.bag || nice.nodes[node.children[1]].bag != node.bag) {
          return where + "join children must share its bag";
        }
        break;
    }
  }
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    if (i != nice.root && parents[i] != 1) return "node " + std::to_string(i) + " must have exactly one parent";
  }
  if (parents[nice.root] != 0) return "root has a parent";
  if (g.num_vertices() == 0) return {};
  auto report = validate_td(g, nice.as_tree_decomposition());
  return report.ok() ? std::string{} : report.message;
}

/// `bag <id> v...` / `treeedge <a> <b>` lines.
inline std::string render_td(const TreeDecomposition& td) {
  std::ostringstream out;
  out << "# width " << td.width() << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "bag " << i;
    for (Vertex v : td.bags[i]) out << ' ' << v;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << "treeedge " << a << ' ' << b << '\n';
  return out.str();
}

inline TreeDecomposition parse_td(const std::string& text) {
  TreeDecomposition td;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<bool> defined;
  auto number = [&](std::istringstream& tokens, const std::string& token) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.empty() || token.front() == '-') {
      throw ParseError(line_no, 1 + static_cast<std::size_t>(std::max<std::streamoff>(0, tokens.tellg() - static_cast<std::streamoff>(token.size()))),
                       "expected a non-negative integer, got '" + token + "'");
    }
    return static_cast<std::size_t>(value);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string keyword;
    if (!(tokens >> keyword)) continue;
    if (keyword == "bag") {
      std::string tok;
      if (!(tokens >> tok)) throw ParseError(line_no, 1, "bag needs an id");
      auto id = number(tokens, tok);
      if (id >= td.bags.size()) {
        td.bags.resize(id + 1);
        defined.resize(id + 1, false);
      }
      if (defined[id]) throw ParseError(line_no, 1, "bag " + std::to_string(id) + " defined twice");
      defined[id] = true;
      while (tokens >> tok) td.bags[id].push_back(number(tokens, tok));
      std::sort(td.bags[id].begin(), td.bags[id].end());
    } else if (keyword == "treeedge") {
      std::string a;
      std::string b;
      if (!(tokens >> a >> b)) throw ParseError(line_no, 1, "treeedge needs two bag ids");
      td.tree_edges.emplace_back(number(tokens, a), number(tokens, b));
    } else {
      throw ParseError(line_no, 1, "unknown keyword '" + keyword + "'");
    }
  }
  for (std::size_t i = 0; i < defined.size(); ++i) {
    if (!defined[i]) throw ParseError(line_no, 1, "bag " + std::to_string(i) + " is never defined");
  }
  return td;
}

}  // namespace socialpoll
