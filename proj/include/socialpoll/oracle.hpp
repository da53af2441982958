#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "socialpoll/errors.hpp"
#include "socialpoll/graph.hpp"
#include "socialpoll/model.hpp"
#include "socialpoll/orientations.hpp"

namespace socialpoll {

struct BruteForceOptions {
  std::uint64_t max_orientations = std::uint64_t{1} << 22;  // bound on the product over components
  unsigned threads = 1;
};

struct BruteForceStats {
  std::uint64_t orientations = 0;  // product over components with edges
  std::size_t components = 0;
};

/// Every score function realized by some voting order, in canonical (lexicographic) order.
using AchievableSet = std::set<ScoreFunction>;

/// A voting order together with the scores it produces.
struct Witness {
  VotingOrder order;
  ScoreFunction claimed;
};

struct WinnerDecision {
  bool holds = false;
  std::optional<Witness> witness;  // possible: a winning order; necessary: a counterexample
};

namespace detail {

struct ComponentOutcomes {
  Vertex smallest = 0;
  std::uint64_t orientations = 0;
  std::vector<std::pair<ScoreFunction, Orientation>> outcomes;  // distinct partial scores, first orientation seen
};

/// Exhaustive outcomes of one connected component (given as sorted global vertex ids).
inline ComponentOutcomes explore_component(const Instance& inst, const std::vector<Vertex>& vertices, std::uint64_t guard) {
  ComponentOutcomes result;
  result.smallest = vertices.front();
  const Graph sub = inst.graph().induced(vertices);
  const std::size_t k = vertices.size();
  std::map<ScoreFunction, Orientation> seen;
  std::vector<CandidateId> votes(k);
  std::vector<std::vector<Vertex>> in(k);
  std::vector<CandidateId> prior;
  try {
    result.orientations = enumerate_acyclic_orientations(sub, guard, [&](const Orientation& local) {
      for (auto& list : in) list.clear();
      for (const auto& a : local.arcs) in[a.to].push_back(a.from);
      const auto order = lex_min_topological_order(k, local.arcs);
      ScoreFunction partial(inst.num_candidates());
      for (Vertex x : *order) {
        prior.clear();
        for (Vertex y : in[x]) prior.push_back(votes[y]);
        const auto& prefs = inst.agents()[vertices[x]];
        votes[x] = choose(prefs, prior);
        partial[votes[x]] += prefs.weight;
      }
      if (!seen.contains(partial)) {
        Orientation global;
        for (const auto& a : local.arcs) global.arcs.push_back({vertices[a.from], vertices[a.to]});
        seen.emplace(std::move(partial), std::move(global));
      }
    });
  } catch (const ResourceError&) {
    throw ResourceError("component containing agent " + std::to_string(vertices.front()) + " has more than " +
                        std::to_string(guard) + " acyclic orientations");
  }
  for (auto& [score, orientation] : seen) result.outcomes.emplace_back(score, std::move(orientation));
  return result;
}

/// All achievable scores, each with the per-component outcome indices that realize it.
struct Exploration {
  std::vector<ComponentOutcomes> components;  // components with more than one vertex
  std::map<ScoreFunction, std::vector<std::uint32_t>> combined;
  std::uint64_t orientations = 1;
};

inline Exploration explore(const Instance& inst, const BruteForceOptions& options) {
  Exploration ex;
  ScoreFunction base(inst.num_candidates());
  std::vector<std::vector<Vertex>> multi;
  for (auto& component : connected_components(inst.graph())) {
    if (component.size() == 1) {
      const auto& prefs = inst.agents()[component.front()];
      base[prefs.top] += prefs.weight;
    } else {
      multi.push_back(std::move(component));
    }
  }

  const unsigned threads = std::max(1u, options.threads);
  ex.components.resize(multi.size());
  for (std::size_t start = 0; start < multi.size(); start += threads) {
    const std::size_t stop = std::min(multi.size(), start + threads);
    if (threads == 1) {
      ex.components[start] = explore_component(inst, multi[start], options.max_orientations);
      continue;
    }
    std::vector<std::future<ComponentOutcomes>> jobs;
    for (std::size_t i = start; i < stop; ++i) {
      jobs.push_back(std::async(std::launch::async, [&inst, &multi, &options, i] {
        return explore_component(inst, multi[i], options.max_orientations);
      }));
    }
    for (std::size_t i = start; i < stop; ++i) ex.components[i] = jobs[i - start].get();
  }

  std::uint64_t product = 1;
  for (const auto& c : ex.components) {
    if (c.orientations > options.max_orientations / product) {
      throw ResourceError("orientation budget of " + std::to_string(options.max_orientations) +
                          " exceeded at the component containing agent " + std::to_string(c.smallest));
    }
    product *= c.orientations;
  }
  ex.orientations = product;

  ex.combined.emplace(base, std::vector<std::uint32_t>{});
  for (const auto& component : ex.components) {
    std::map<ScoreFunction, std::vector<std::uint32_t>> next;
    for (const auto& [score, choice] : ex.combined) {
      for (std::uint32_t i = 0; i < component.outcomes.size(); ++i) {
        auto sum = score + component.outcomes[i].first;
        if (next.contains(sum)) continue;
        auto extended = choice;
        extended.push_back(i);
        next.emplace(std::move(sum), std::move(extended));
      }
    }
    ex.combined = std::move(next);
  }
  return ex;
}

inline void record(const Exploration& ex, BruteForceStats* stats) {
  if (!stats) return;
  stats->orientations = ex.orientations;
  stats->components = ex.components.size();
}

inline Witness witness_for(const Instance& inst, const Exploration& ex, const std::vector<std::uint32_t>& choice) {
  Orientation o;
  for (std::size_t k = 0; k < choice.size(); ++k) {
    const auto& arcs = ex.components[k].outcomes[choice[k]].second.arcs;
    o.arcs.insert(o.arcs.end(), arcs.begin(), arcs.end());
  }
  std::sort(o.arcs.begin(), o.arcs.end());
  auto order = order_extending(inst, o);
  auto replay = simulate_order(inst, order);
  return Witness{std::move(order), std::move(replay.scores)};
}

}  // namespace detail

/// Exact set of achievable score functions, by enumerating acyclic orientations of each
/// component and combining components by pointwise addition.
inline AchievableSet achievable_scores_bf(const Instance& inst, const BruteForceOptions& options = {}, BruteForceStats* stats = nullptr) {
  AchievableSet result;
  const auto ex = detail::explore(inst, options);
  detail::record(ex, stats);
  for (const auto& [score, choice] : ex.combined) result.insert(score);
  return result;
}

/// Is `c` a co-winner for some voting order? On success the witness order is the
/// lexicographically smallest extension of a witnessing orientation.
inline WinnerDecision possible_winner_bf(const Instance& inst, CandidateId c, const BruteForceOptions& options = {},
                                          BruteForceStats* stats = nullptr) {
  if (c.index >= inst.num_candidates()) throw InputError("unknown candidate");
  const auto ex = detail::explore(inst, options);
  detail::record(ex, stats);
  for (const auto& [score, choice] : ex.combined) {
    if (is_cowinner(score, c)) return {true, detail::witness_for(inst, ex, choice)};
  }
  return {false, std::nullopt};
}

/// Is `c` a co-winner for every voting order? On failure returns a counterexample order.
inline WinnerDecision necessary_winner_bf(const Instance& inst, CandidateId c, const BruteForceOptions& options = {},
                                          BruteForceStats* stats = nullptr) {
  if (c.index >= inst.num_candidates()) throw InputError("unknown candidate");
  const auto ex = detail::explore(inst, options);
  detail::record(ex, stats);
  for (const auto& [score, choice] : ex.combined) {
    if (!is_cowinner(score, c)) return {false, detail::witness_for(inst, ex, choice)};
  }
  return {true, std::nullopt};
}

/// max over achievable scores of score(lead) - score(trail), weighted.
inline std::int64_t max_margin_bf(const Instance& inst, CandidateId lead, CandidateId trail, const BruteForceOptions& options = {}) {
  if (lead.index >= inst.num_candidates() || trail.index >= inst.num_candidates()) throw InputError("unknown candidate");
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (const auto& score : achievable_scores_bf(inst, options)) best = std::max(best, score[lead] - score[trail]);
  return best;
}

}  // namespace socialpoll
