#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "socialpoll/errors.hpp"
#include "socialpoll/graph.hpp"

namespace socialpoll {

/// Calls `visit` once for every acyclic orientation of `g` (arcs sorted).
/// Throws ResourceError as soon as more than `guard` orientations would be produced.
/// Returns the number of orientations visited.
inline std::uint64_t enumerate_acyclic_orientations(const Graph& g,
                                                    std::uint64_t guard,
                                                    const std::function<void(const Orientation&)>& visit) {
  const auto& edges = g.edges();
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<Vertex>> out(n);
  std::vector<bool> dir(edges.size(), false);  // false: u->v, true: v->u
  std::vector<Vertex> stack;
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t epoch = 0;
  std::uint64_t produced = 0;
  Orientation current;

  auto reaches = [&](Vertex from, Vertex target) {
    ++epoch;
    stack.assign(1, from);
    mark[from] = epoch;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      if (v == target) return true;
      for (Vertex w : out[v]) {
        if (mark[w] != epoch) {
          mark[w] = epoch;
          stack.push_back(w);
        }
      }
    }
    return false;
  };

  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == edges.size()) {
      if (++produced > guard) {
        throw ResourceError("more than " + std::to_string(guard) + " acyclic orientations");
      }
      current.arcs.clear();
      for (std::size_t k = 0; k < edges.size(); ++k) {
        current.arcs.push_back(dir[k] ? Arc{edges[k].v, edges[k].u} : Arc{edges[k].u, edges[k].v});
      }
      std::sort(current.arcs.begin(), current.arcs.end());
      visit(current);
      return;
    }
    const auto [u, v] = edges[i];
    for (bool flipped : {false, true}) {
      const Vertex from = flipped ? v : u;
      const Vertex to = flipped ? u : v;
      if (reaches(to, from)) continue;
      dir[i] = flipped;
      out[from].push_back(to);
      extend(i + 1);
      out[from].pop_back();
    }
  };
  extend(0);
  return produced;
}

/// Number of labeled DAGs on t nodes, by the alternating inclusion-exclusion recurrence
/// q_t = sum_{k=1..t} (-1)^(k-1) C(t,k) 2^(k(t-k)) q_(t-k), q_0 = 1.
inline boost::multiprecision::cpp_int count_labeled_dags(int t) {
  using boost::multiprecision::cpp_int;
  if (t < 0) throw InputError("count_labeled_dags: t must be non-negative");
  std::vector<cpp_int> q(static_cast<std::size_t>(t) + 1);
  q[0] = 1;
  for (int m = 1; m <= t; ++m) {
    cpp_int sum = 0;
    cpp_int binom = 1;  // C(m, k), updated incrementally
    for (int k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      cpp_int term = binom * (cpp_int(1) << (k * (m - k))) * q[static_cast<std::size_t>(m - k)];
      if (k % 2 == 1) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    q[static_cast<std::size_t>(m)] = sum;
  }
  return q.back();
}

}  // namespace socialpoll
