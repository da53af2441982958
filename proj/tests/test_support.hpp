#pragma once

// Fixtures and independent reference implementations used by the unit and acceptance tests.
// The references deliberately avoid the library's simulation and solvers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "socialpoll/socialpoll.hpp"

namespace testing_support {

using namespace socialpoll;

inline AgentPrefs two(std::size_t top, std::size_t other, std::int64_t weight = 1) {
  AgentPrefs p;
  p.preferred = {CandidateId(std::min(top, other)), CandidateId(std::max(top, other))};
  p.top = CandidateId(top);
  p.weight = weight;
  return p;
}

inline AgentPrefs one(std::size_t top) {
  AgentPrefs p;
  p.preferred = {CandidateId(top)};
  p.top = CandidateId(top);
  return p;
}

/// Candidates a, b, c. Agents 0:(c,b) 1:(a,c) 2:(b,c) with weights 1, 1, w2; path 0-1-2.
inline Instance p3_gadget(std::int64_t w2 = 5) {
  return Instance("p3", {"a", "b", "c"}, {two(2, 1), two(0, 2), two(1, 2, w2)}, {{0, 1}, {1, 2}}, CandidateId(0));
}

/// Candidates a, b. Agent 0 prefers (a,b), agent 1 prefers (b,a); they are friends.
inline Instance two_agents() {
  return Instance("pair", {"a", "b"}, {two(0, 1), two(1, 0)}, {{0, 1}}, CandidateId(0));
}

inline Instance single_agent() {
  return Instance("single", {"a", "d"}, {two(0, 1)}, {}, CandidateId(0));
}

// ---- reference simulation over all n! orders ----------------------------------------

inline std::vector<std::int64_t> reference_scores(const Instance& inst, const std::vector<std::size_t>& order) {
  const std::size_t n = inst.num_agents();
  std::vector<std::int64_t> vote(n, -1);
  std::vector<std::int64_t> scores(inst.num_candidates(), 0);
  for (auto x : order) {
    const auto& p = inst.agents()[x];
    std::vector<int> tally(inst.num_candidates(), 0);
    int voted = 0;
    for (std::size_t y = 0; y < n; ++y) {
      if (y != x && vote[y] >= 0 && inst.graph().adjacent(x, y)) {
        ++voted;
        ++tally[static_cast<std::size_t>(vote[y])];
      }
    }
    std::int64_t choice = p.top.index;
    for (auto c : p.preferred) {
      if (2 * tally[c.index] > voted) choice = c.index;
    }
    vote[x] = choice;
    scores[static_cast<std::size_t>(choice)] += p.weight;
  }
  return scores;
}

inline std::set<std::vector<std::int64_t>> all_orders_scores(const Instance& inst) {
  std::vector<std::size_t> order(inst.num_agents());
  std::iota(order.begin(), order.end(), 0);
  std::set<std::vector<std::int64_t>> result;
  do {
    result.insert(reference_scores(inst, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return result;
}

inline std::set<std::vector<std::int64_t>> as_vectors(const AchievableSet& s) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& f : s) out.insert(f.values());
  return out;
}

// ---- combinatorial oracles ----------------------------------------------------------

inline bool has_equal_split(const std::vector<std::int64_t>& numbers) {
  const auto total = std::accumulate(numbers.begin(), numbers.end(), std::int64_t{0});
  if (total % 2) return false;
  for (std::uint32_t mask = 0; mask < (1u << numbers.size()); ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < numbers.size(); ++i) {
      if (mask >> i & 1u) sum += numbers[i];
    }
    if (2 * sum == total) return true;
  }
  return false;
}

inline std::optional<std::vector<std::size_t>> equal_split(const std::vector<std::int64_t>& numbers) {
  const auto total = std::accumulate(numbers.begin(), numbers.end(), std::int64_t{0});
  for (std::uint32_t mask = 0; mask < (1u << numbers.size()); ++mask) {
    std::int64_t sum = 0;
    std::vector<std::size_t> half;
    for (std::size_t i = 0; i < numbers.size(); ++i) {
      if (mask >> i & 1u) {
        sum += numbers[i];
        half.push_back(i);
      }
    }
    if (2 * sum == total) return half;
  }
  return std::nullopt;
}

/// Satisfying assignment by truth table, if any.
inline std::optional<std::vector<bool>> truth_table(const CnfFormula& f) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
    bool ok = true;
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int l : clause) {
        const bool value = mask >> (std::abs(l) - 1) & 1u;
        if (value == (l > 0)) sat = true;
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<bool> a(f.num_vars);
      for (std::size_t i = 0; i < f.num_vars; ++i) a[i] = mask >> i & 1u;
      return a;
    }
  }
  return std::nullopt;
}

/// Acyclic digraphs on t labeled vertices, by testing all 2^(t(t-1)) arc sets.
inline std::uint64_t count_dags_brute(int t) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<int> indegree(static_cast<std::size_t>(t), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (mask >> k & 1u) ++indegree[static_cast<std::size_t>(pairs[k].second)];
    }
    std::vector<bool> removed(static_cast<std::size_t>(t), false);
    int left = t;
    bool progress = true;
    while (left > 0 && progress) {
      progress = false;
      for (int v = 0; v < t; ++v) {
        if (removed[static_cast<std::size_t>(v)] || indegree[static_cast<std::size_t>(v)] != 0) continue;
        removed[static_cast<std::size_t>(v)] = true;
        --left;
        progress = true;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          if ((mask >> k & 1u) && pairs[k].first == v) --indegree[static_cast<std::size_t>(pairs[k].second)];
        }
      }
    }
    if (left == 0) ++count;
  }
  return count;
}

/// Smallest hitting set of size <= budget, by exhaustive search.
inline std::optional<std::vector<std::size_t>> find_hitting_set(const HittingSetInput& h) {
  std::optional<std::vector<std::size_t>> best;
  for (std::uint32_t mask = 0; mask < (1u << h.ground_size); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t q = 0; q < h.ground_size; ++q) {
      if (mask >> q & 1u) chosen.push_back(q);
    }
    if (chosen.size() > h.budget) continue;
    const bool hits = std::all_of(h.sets.begin(), h.sets.end(), [&](const auto& s) {
      return std::any_of(s.begin(), s.end(), [&](std::size_t q) { return (mask >> q & 1u) != 0; });
    });
    if (hits && (!best || chosen.size() < best->size())) best = chosen;
  }
  return best;
}

// ---- random instances -----------------------------------------------------------------

/// Random unweighted or weighted instance with a forest or a graph of heuristic width <= max_width.
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_agents, std::size_t max_candidates, bool weighted,
                                std::size_t max_width = 2, std::size_t preferred = 2) {
  for (;;) {
    RandomInstanceSpec spec;
    spec.agents = 1 + rng() % max_agents;
    spec.candidates = 2 + rng() % (max_candidates - 1);
    spec.preferred = preferred;
    spec.graph = rng() % 2 ? RandomGraphKind::forest : RandomGraphKind::gnp;
    spec.edge_probability = 0.25 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
    spec.weighted = weighted;
    spec.max_weight = 9;
    spec.seed = rng();
    auto inst = gen_random(spec);
    if (heuristic_td(inst.graph()).width() <= max_width) return inst;
  }
}

/// A uniformly random linear extension of an orientation (repeatedly pick a random source).
inline VotingOrder random_extension(std::mt19937_64& rng, std::size_t n, const Orientation& o) {
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& a : o.arcs) {
    ++indegree[a.to];
    out[a.from].push_back(a.to);
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  VotingOrder order;
  while (!ready.empty()) {
    const auto pick = rng() % ready.size();
    const auto v = ready[pick];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
    order.agents.push_back(v);
    for (auto w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return order;
}

inline VotingOrder random_order(std::mt19937_64& rng, std::size_t n) {
  VotingOrder order;
  order.agents.resize(n);
  std::iota(order.agents.begin(), order.agents.end(), 0);
  std::shuffle(order.agents.begin(), order.agents.end(), rng);
  return order;
}

/// Random formula with clauses of 2-3 distinct variables and at most three occurrences per variable.
inline CnfFormula random_formula(std::mt19937_64& rng, std::size_t max_vars, std::size_t max_clauses) {
  for (;;) {
    CnfFormula f;
    f.num_vars = 2 + rng() % (max_vars - 1);
    const std::size_t m = 1 + rng() % max_clauses;
    std::vector<int> uses(f.num_vars + 1, 0);
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      const std::size_t len = std::min<std::size_t>(f.num_vars, 2 + rng() % 2);
      std::vector<int> vars(f.num_vars);
      std::iota(vars.begin(), vars.end(), 1);
      std::shuffle(vars.begin(), vars.end(), rng);
      std::vector<int> clause;
      for (std::size_t i = 0; i < len; ++i) {
        if (++uses[static_cast<std::size_t>(vars[i])] > 3) ok = false;
        clause.push_back(rng() % 2 ? vars[i] : -vars[i]);
      }
      f.clauses.push_back(clause);
    }
    if (ok) return f;
  }
}

}  // namespace testing_support
