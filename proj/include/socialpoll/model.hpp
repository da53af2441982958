#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socialpoll/errors.hpp"
#include "socialpoll/graph.hpp"

namespace socialpoll {

/// Index into an instance's candidate list.
struct CandidateId {
  std::uint32_t index = 0;

  constexpr CandidateId() = default;
  constexpr explicit CandidateId(std::size_t i) : index(static_cast<std::uint32_t>(i)) {}

  friend constexpr auto operator<=>(const CandidateId&, const CandidateId&) = default;
};

using AgentId = Vertex;

/// Preferences of one agent: the preferred set P(x), its top choice and a weight.
struct AgentPrefs {
  std::vector<CandidateId> preferred;  // sorted, duplicate-free
  CandidateId top;
  std::int64_t weight = 1;

  bool prefers(CandidateId c) const { return std::binary_search(preferred.begin(), preferred.end(), c); }

  friend bool operator==(const AgentPrefs&, const AgentPrefs&) = default;
};

/// Dense candidate -> score map. Ordered lexicographically so sets of scores are canonical.
class ScoreFunction {
public:
  ScoreFunction() = default;
  explicit ScoreFunction(std::size_t num_candidates) : values_(num_candidates, 0) {}
  explicit ScoreFunction(std::vector<std::int64_t> values) : values_(std::move(values)) {}

  std::int64_t operator[](CandidateId c) const { return values_.at(c.index); }
  std::int64_t& operator[](CandidateId c) { return values_.at(c.index); }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<std::int64_t>& values() const noexcept { return values_; }
  std::int64_t total() const { return std::accumulate(values_.begin(), values_.end(), std::int64_t{0}); }

  ScoreFunction& operator+=(const ScoreFunction& other) {
    if (other.size() != size()) throw InputError("score functions over different candidate sets");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }

  friend ScoreFunction operator+(ScoreFunction a, const ScoreFunction& b) { return a += b; }
  friend auto operator<=>(const ScoreFunction&, const ScoreFunction&) = default;

private:
  std::vector<std::int64_t> values_;
};

/// A permutation of the agents: `agents[k]` is the k-th voter.
struct VotingOrder {
  std::vector<AgentId> agents;

  friend bool operator==(const VotingOrder&, const VotingOrder&) = default;
};

/// Vote cast by each agent, indexed by agent id.
struct VoteOutcome {
  std::vector<CandidateId> votes;

  friend bool operator==(const VoteOutcome&, const VoteOutcome&) = default;
};

struct SimulationResult {
  VoteOutcome outcome;
  ScoreFunction scores;
};

inline bool valid_candidate_label(std::string_view label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char ch) {
    return ch == ',' || ch == '=' || ch == '#' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
  });
}

/// A social poll: agents with preferences, a friendship graph, candidates and c*.
/// Immutable once constructed; the constructor validates every invariant.
class Instance {
public:
  Instance(std::string name,
           std::vector<std::string> candidates,
           std::vector<AgentPrefs> agents,
           std::vector<Edge> edges,
           CandidateId distinguished)
      : name_(std::move(name)),
        candidates_(std::move(candidates)),
        agents_(std::move(agents)),
        distinguished_(distinguished) {
    if (candidates_.empty()) throw InputError("instance needs at least one candidate");
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      if (!valid_candidate_label(candidates_[i])) throw InputError("invalid candidate label '" + candidates_[i] + "'");
      for (std::size_t j = 0; j < i; ++j) {
        if (candidates_[i] == candidates_[j]) throw InputError("duplicate candidate label '" + candidates_[i] + "'");
      }
    }
    if (distinguished_.index >= candidates_.size()) throw InputError("distinguished candidate out of range");
    for (std::size_t x = 0; x < agents_.size(); ++x) {
      auto& prefs = agents_[x];
      const std::string who = "agent " + std::to_string(x);
      if (prefs.preferred.empty()) throw InputError(who + " has an empty preferred set");
      std::sort(prefs.preferred.begin(), prefs.preferred.end());
      if (std::adjacent_find(prefs.preferred.begin(), prefs.preferred.end()) != prefs.preferred.end()) {
        throw InputError(who + " lists a preferred candidate twice");
      }
      for (auto c : prefs.preferred) {
        if (c.index >= candidates_.size()) throw InputError(who + " references an unknown candidate");
      }
      if (!prefs.prefers(prefs.top)) throw InputError(who + ": top choice is not in the preferred set");
      if (prefs.weight < 1) throw InputError(who + " has non-positive weight");
    }
    graph_ = Graph(agents_.size(), std::move(edges));
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t num_agents() const noexcept { return agents_.size(); }
  std::size_t num_candidates() const noexcept { return candidates_.size(); }

  const AgentPrefs& agent(AgentId x) const {
    if (x >= agents_.size()) throw InputError("unknown agent id " + std::to_string(x));
    return agents_[x];
  }
  const std::vector<AgentPrefs>& agents() const noexcept { return agents_; }
  const Graph& graph() const noexcept { return graph_; }

  const std::vector<std::string>& candidate_labels() const noexcept { return candidates_; }
  const std::string& label(CandidateId c) const { return candidates_.at(c.index); }
  CandidateId distinguished() const noexcept { return distinguished_; }

  std::optional<CandidateId> find_candidate(std::string_view label) const {
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      if (candidates_[i] == label) return CandidateId(i);
    }
    return std::nullopt;
  }

  /// Like find_candidate but throws InputError for unknown labels.
  CandidateId candidate(std::string_view label) const {
    if (auto c = find_candidate(label)) return *c;
    throw InputError("unknown candidate '" + std::string(label) + "'");
  }

  bool is_weighted() const {
    return std::any_of(agents_.begin(), agents_.end(), [](const AgentPrefs& p) { return p.weight != 1; });
  }

  std::int64_t total_weight() const {
    std::int64_t sum = 0;
    for (const auto& p : agents_) sum += p.weight;
    return sum;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.name_ == b.name_ && a.candidates_ == b.candidates_ && a.agents_ == b.agents_ &&
           a.graph_ == b.graph_ && a.distinguished_ == b.distinguished_;
  }

private:
  std::string name_;
  std::vector<std::string> candidates_;
  std::vector<AgentPrefs> agents_;
  Graph graph_;
  CandidateId distinguished_;
};

/// Non-fatal observations about an instance (currently: non-uniform |P(x)|).
inline std::vector<std::string> lint(const Instance& inst) {
  std::vector<std::string> warnings;
  if (inst.num_agents() == 0) return warnings;
  const auto k = inst.agent(0).preferred.size();
  for (AgentId x = 1; x < inst.num_agents(); ++x) {
    if (inst.agent(x).preferred.size() != k) {
      warnings.push_back("preferred-set sizes are not uniform (agent 0 has " + std::to_string(k) + ", agent " +
                         std::to_string(x) + " has " + std::to_string(inst.agent(x).preferred.size()) + ")");
      break;
    }
  }
  return warnings;
}

namespace detail {

/// Refined choice rule over the votes of friends that already voted. Majority counts agents.
inline CandidateId choose(const AgentPrefs& prefs, std::span<const CandidateId> prior_votes) {
  const auto total = prior_votes.size();
  if (total == 0) return prefs.top;
  for (auto c : prefs.preferred) {
    const auto count = static_cast<std::size_t>(std::count(prior_votes.begin(), prior_votes.end(), c));
    if (2 * count > total) return c;
  }
  return prefs.top;
}

/// Runs an already-validated order.
inline SimulationResult run_order(const Instance& inst, std::span<const AgentId> order) {
  const auto& g = inst.graph();
  SimulationResult result{VoteOutcome{std::vector<CandidateId>(inst.num_agents())}, ScoreFunction(inst.num_candidates())};
  std::vector<bool> voted(inst.num_agents(), false);
  std::vector<CandidateId> prior;
  for (AgentId x : order) {
    prior.clear();
    for (AgentId y : g.neighbors(x)) {
      if (voted[y]) prior.push_back(result.outcome.votes[y]);
    }
    const auto& prefs = inst.agents()[x];
    const CandidateId vote = choose(prefs, prior);
    result.outcome.votes[x] = vote;
    result.scores[vote] += prefs.weight;
    voted[x] = true;
  }
  return result;
}

}  // namespace detail

/// Throws InputError unless `order` is a permutation of {0..n-1}.
inline void validate_order(std::size_t n, const VotingOrder& order) {
  if (order.agents.size() != n) {
    throw InputError("voting order has " + std::to_string(order.agents.size()) + " entries, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (AgentId x : order.agents) {
    if (x >= n) throw InputError("voting order references unknown agent " + std::to_string(x));
    if (seen[x]) throw InputError("agent " + std::to_string(x) + " appears twice in the voting order");
    seen[x] = true;
  }
}

/// Vote of agent `x` given the votes of its friends that already voted.
inline CandidateId choice(AgentId x, const Instance& inst, std::span<const std::pair<AgentId, CandidateId>> prior) {
  const auto& prefs = inst.agent(x);
  std::vector<CandidateId> votes;
  votes.reserve(prior.size());
  for (const auto& [friend_id, vote] : prior) {
    if (!inst.graph().adjacent(x, friend_id)) {
      throw InputError("agent " + std::to_string(friend_id) + " is not a friend of agent " + std::to_string(x));
    }
    if (vote.index >= inst.num_candidates()) throw InputError("prior vote references an unknown candidate");
    votes.push_back(vote);
  }
  return detail::choose(prefs, votes);
}

inline SimulationResult simulate_order(const Instance& inst, const VotingOrder& order) {
  validate_order(inst.num_agents(), order);
  return detail::run_order(inst, order.agents);
}

/// Orients every friendship edge from the earlier voter to the later one.
inline Orientation orientation_of(const Instance& inst, const VotingOrder& order) {
  validate_order(inst.num_agents(), order);
  std::vector<std::size_t> position(inst.num_agents());
  for (std::size_t k = 0; k < order.agents.size(); ++k) position[order.agents[k]] = k;
  Orientation o;
  o.arcs.reserve(inst.graph().num_edges());
  for (const auto& e : inst.graph().edges()) {
    o.arcs.push_back(position[e.u] < position[e.v] ? Arc{e.u, e.v} : Arc{e.v, e.u});
  }
  std::sort(o.arcs.begin(), o.arcs.end());
  return o;
}

/// Lexicographically smallest voting order extending an orientation of the instance graph.
/// Throws InputError if the orientation does not cover each edge exactly once or has a cycle.
inline VotingOrder order_extending(const Instance& inst, const Orientation& o) {
  const auto& g = inst.graph();
  std::vector<bool> covered(g.num_edges(), false);
  for (const auto& a : o.arcs) {
    auto idx = g.edge_index(Edge::between(a.from, a.to));
    if (a.from == a.to || !idx) throw InputError("orientation contains an arc that is not a friendship edge");
    if (covered[*idx]) throw InputError("orientation orients an edge twice");
    covered[*idx] = true;
  }
  if (o.arcs.size() != g.num_edges()) throw InputError("orientation does not cover every friendship edge");
  auto order = lex_min_topological_order(inst.num_agents(), o.arcs);
  if (!order) throw InputError("orientation has a directed cycle");
  return VotingOrder{std::move(*order)};
}

/// Simulates any voting order extending the (acyclic) orientation; all such orders agree.
inline SimulationResult simulate_orientation(const Instance& inst, const Orientation& o) {
  const auto order = order_extending(inst, o);
  return detail::run_order(inst, order.agents);
}

/// Co-winners: every candidate whose score is not exceeded.
inline std::vector<CandidateId> winners(const ScoreFunction& s) {
  std::vector<CandidateId> result;
  if (s.size() == 0) return result;
  const auto best = *std::max_element(s.values().begin(), s.values().end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.values()[i] == best) result.emplace_back(i);
  }
  return result;
}

inline bool is_cowinner(const ScoreFunction& s, CandidateId c) {
  return std::none_of(s.values().begin(), s.values().end(), [&](std::int64_t v) { return v > s[c]; });
}

/// "a=2 b=0" rendering of a score function.
inline std::string format_scores(const Instance& inst, const ScoreFunction& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += inst.label(CandidateId(i)) + "=" + std::to_string(s.values()[i]);
  }
  return out;
}

/// Disjoint union of two instances. Candidates are unified by label (first's labels first),
/// agents of `second` are renumbered after those of `first`. A conflicting distinguished
/// candidate is reported through `warnings` and the first instance's choice is kept.
inline Instance instance_union(const Instance& first, const Instance& second, std::vector<std::string>* warnings = nullptr) {
  std::vector<std::string> labels = first.candidate_labels();
  std::vector<CandidateId> remap;
  for (const auto& label : second.candidate_labels()) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      labels.push_back(label);
      remap.emplace_back(labels.size() - 1);
    } else {
      remap.emplace_back(static_cast<std::size_t>(it - labels.begin()));
    }
  }
  if (warnings && first.label(first.distinguished()) != second.label(second.distinguished())) {
    warnings->push_back("distinguished candidates differ ('" + first.label(first.distinguished()) + "' vs '" +
                        second.label(second.distinguished()) + "'); keeping '" + first.label(first.distinguished()) + "'");
  }

  std::vector<AgentPrefs> agents = first.agents();
  for (const auto& prefs : second.agents()) {
    AgentPrefs copy;
    for (auto c : prefs.preferred) copy.preferred.push_back(remap[c.index]);
    copy.top = remap[prefs.top.index];
    copy.weight = prefs.weight;
    agents.push_back(std::move(copy));
  }
  std::vector<Edge> edges = first.graph().edges();
  const auto offset = first.num_agents();
  for (const auto& e : second.graph().edges()) edges.push_back({e.u + offset, e.v + offset});

  std::string name = first.name();
  if (!second.name().empty()) name += name.empty() ? second.name() : "+" + second.name();
  return Instance(std::move(name), std::move(labels), std::move(agents), std::move(edges), first.distinguished());
}

}  // namespace socialpoll
