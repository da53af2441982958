#pragma once

// Instance generators for the hardness constructions and lower-bound families, with the
// voting orders that certify yes-instances. Agent ids follow the constructions' indexing,
// shifted to start at 0.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socialpoll/errors.hpp"
#include "socialpoll/graph.hpp"
#include "socialpoll/model.hpp"

namespace socialpoll {

namespace detail {

inline AgentPrefs prefs2(CandidateId top, CandidateId other, std::int64_t weight = 1) {
  AgentPrefs p;
  p.preferred = {std::min(top, other), std::max(top, other)};
  p.top = top;
  p.weight = weight;
  return p;
}

inline std::int64_t checked_pow(std::int64_t base, int exponent) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > INT64_MAX / base) throw ResourceError("parameter overflows a 64-bit integer");
    result *= base;
  }
  return result;
}

// Generated instances are materialized agent by agent; refuse absurd sizes up front.
constexpr std::int64_t max_generated_agents = 20'000'000;

}  // namespace detail

// ---------------------------------------------------------------------------------------
// Weighted possible winner from Partition: paths of at most three agents.

struct PartitionInput {
  std::vector<std::int64_t> numbers;
};

inline void validate_partition(const PartitionInput& p) {
  if (p.numbers.empty()) throw InputError("partition input needs at least one number");
  std::int64_t sum = 0;
  for (auto k : p.numbers) {
    if (k < 1) throw InputError("partition numbers must be positive");
    sum += k;
  }
  if (sum % 2 != 0) throw InputError("partition numbers must have an even sum (got " + std::to_string(sum) + ")");
}

/// Smallest multiplier for which the construction is sound: a can collect at most
/// K*B + 3n from the isolated agent and the element agents, so b's k_j*B blocks must
/// not be absorbable by that slack.
inline std::int64_t default_partition_multiplier(const PartitionInput& p) {
  return 3 * static_cast<std::int64_t>(p.numbers.size()) + 1;
}

/// Per number k_j, agents 3j (c,b), 3j+1 (a,c), 3j+2 (b,c) with weights 1, 1, k_j*B on a path;
/// agent 3n is isolated, prefers (a,c) and weighs K*B + 2n. Candidates a, b, c; c* = a.
inline Instance gen_partition_wpw(const PartitionInput& p, std::optional<std::int64_t> multiplier = std::nullopt) {
  validate_partition(p);
  const std::int64_t n = static_cast<std::int64_t>(p.numbers.size());
  const std::int64_t B = multiplier.value_or(default_partition_multiplier(p));
  if (B < 1) throw InputError("partition multiplier B must be positive");
  std::int64_t sum = 0;
  for (auto k : p.numbers) sum += k;
  const std::int64_t K = sum / 2;
  const CandidateId a(0), b(1), c(2);
  std::vector<AgentPrefs> agents;
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < p.numbers.size(); ++j) {
    agents.push_back(detail::prefs2(c, b));
    agents.push_back(detail::prefs2(a, c));
    agents.push_back(detail::prefs2(b, c, p.numbers[j] * B));
    edges.push_back({3 * j, 3 * j + 1});
    edges.push_back({3 * j + 1, 3 * j + 2});
  }
  agents.push_back(detail::prefs2(a, c, K * B + 2 * n));
  return Instance("partition", {"a", "b", "c"}, std::move(agents), std::move(edges), a);
}

/// J indexes the numbers of one half. Paths in J vote 3j, 3j+1, 3j+2 (c takes the heavy
/// vote), the others 3j+1, 3j, 3j+2 (b takes it); the isolated agent votes last.
inline VotingOrder witness_order_partition(const PartitionInput& p, const std::vector<std::size_t>& J) {
  validate_partition(p);
  std::int64_t sum = 0;
  for (auto k : p.numbers) sum += k;
  std::vector<bool> in_half(p.numbers.size(), false);
  std::int64_t half = 0;
  for (auto j : J) {
    if (j >= p.numbers.size() || in_half[j]) throw InputError("index set J must hold distinct valid indices");
    in_half[j] = true;
    half += p.numbers[j];
  }
  if (2 * half != sum) {
    throw InputError("J does not split the numbers evenly (" + std::to_string(half) + " vs K=" + std::to_string(sum / 2) + ")");
  }
  VotingOrder order;
  for (std::size_t j = 0; j < p.numbers.size(); ++j) {
    if (in_half[j]) {
      order.agents.insert(order.agents.end(), {3 * j, 3 * j + 1, 3 * j + 2});
    } else {
      order.agents.insert(order.agents.end(), {3 * j + 1, 3 * j, 3 * j + 2});
    }
  }
  order.agents.push_back(3 * p.numbers.size());
  return order;
}

// ---------------------------------------------------------------------------------------
// Unweighted possible winner from 3-Hitting Set: bipartite graph, three candidates.

struct HittingSetInput {
  std::size_t ground_size = 0;                   // elements q_0 .. q_{n-1}
  std::vector<std::array<std::size_t, 3>> sets;  // S_1 .. S_t
  std::size_t budget = 0;                        // k
};

struct ReductionParams {
  std::int64_t B = 0;
  std::int64_t D = 0;
};

inline void validate_hitting_set(const HittingSetInput& h) {
  if (h.ground_size == 0) throw InputError("hitting-set input needs at least one element");
  if (h.sets.size() < 2) throw InputError("hitting-set input needs at least two sets (t >= 2)");
  for (const auto& s : h.sets) {
    for (auto q : s) {
      if (q >= h.ground_size) throw InputError("set element q" + std::to_string(q) + " is outside the ground set");
    }
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) throw InputError("sets must have three distinct elements");
  }
}

/// B = n^9, D = n^4.
inline ReductionParams default_hitting_params(const HittingSetInput& h) {
  const auto n = static_cast<std::int64_t>(h.ground_size);
  return {detail::checked_pow(n, 9), detail::checked_pow(n, 4)};
}

/// Smallest values satisfying D > t, B >= k + D*t and B >= 2k.
inline ReductionParams minimal_hitting_params(const HittingSetInput& h) {
  const auto t = static_cast<std::int64_t>(h.sets.size());
  const auto k = static_cast<std::int64_t>(h.budget);
  const std::int64_t D = t + 1;
  return {std::max(k + D * t, 2 * k), D};
}

inline void validate_hitting_params(const HittingSetInput& h, const ReductionParams& p) {
  const auto t = static_cast<std::int64_t>(h.sets.size());
  const auto k = static_cast<std::int64_t>(h.budget);
  if (p.D <= t) throw InputError("parameter constraint violated: D > t (D=" + std::to_string(p.D) + ", t=" + std::to_string(t) + ")");
  if (p.B < k + p.D * t) throw InputError("parameter constraint violated: B >= k + D*t");
  if (p.B < 2 * k) throw InputError("parameter constraint violated: B >= 2k");
}

/// Per element q_j a path 4j (c,b) - 4j+1 (a,c) - 4j+2 (b,c) - 4j+3 (b,c); 4j+1 is the
/// element agent. Per set S_i a path of D set agents (b,a) starting at 4n + D(i-1), whose
/// head is friends with the element agents of S_i. Then B-k-Dt isolated (a,c) and B-2k
/// isolated (b,c) agents. Candidates a, b, c; c* = a.
inline Instance gen_hitting_set_upw(const HittingSetInput& h, const ReductionParams& p) {
  validate_hitting_set(h);
  validate_hitting_params(h, p);
  const auto n = h.ground_size;
  const auto t = static_cast<std::int64_t>(h.sets.size());
  const auto k = static_cast<std::int64_t>(h.budget);
  const std::int64_t total = 4 * static_cast<std::int64_t>(n) + 2 * p.B - 3 * k;
  if (total > detail::max_generated_agents) {
    throw ResourceError("hitting-set instance would have " + std::to_string(total) + " agents; pass smaller B and D");
  }
  const CandidateId a(0), b(1), c(2);
  std::vector<AgentPrefs> agents;
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < n; ++j) {
    agents.push_back(detail::prefs2(c, b));
    agents.push_back(detail::prefs2(a, c));
    agents.push_back(detail::prefs2(b, c));
    agents.push_back(detail::prefs2(b, c));
    for (std::size_t r = 0; r < 3; ++r) edges.push_back({4 * j + r, 4 * j + r + 1});
  }
  const auto D = static_cast<std::size_t>(p.D);
  for (std::size_t i = 0; i < h.sets.size(); ++i) {
    const std::size_t head = 4 * n + D * i;
    for (std::size_t q = 0; q < D; ++q) {
      agents.push_back(detail::prefs2(b, a));
      if (q > 0) edges.push_back({head + q - 1, head + q});
    }
    for (auto element : h.sets[i]) edges.push_back({4 * element + 1, head});
  }
  for (std::int64_t i = 0; i < p.B - k - p.D * t; ++i) agents.push_back(detail::prefs2(a, c));
  for (std::int64_t i = 0; i < p.B - 2 * k; ++i) agents.push_back(detail::prefs2(b, c));
  return Instance("hitting-set", {"a", "b", "c"}, std::move(agents), std::move(edges), a);
}

inline bool is_hitting_set(const HittingSetInput& h, const std::vector<std::size_t>& H) {
  return std::all_of(h.sets.begin(), h.sets.end(), [&](const auto& s) {
    return std::any_of(s.begin(), s.end(), [&](std::size_t q) { return std::find(H.begin(), H.end(), q) != H.end(); });
  });
}

/// Paths of H vote element agent first (4j+1, 4j, 4j+2, 4j+3), then every set agent head to
/// tail, then the remaining paths in index order, then the isolated agents.
inline VotingOrder witness_order_hitting(const HittingSetInput& h, const ReductionParams& p, std::vector<std::size_t> H) {
  validate_hitting_set(h);
  validate_hitting_params(h, p);
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  for (auto q : H) {
    if (q >= h.ground_size) throw InputError("hitting set names an unknown element q" + std::to_string(q));
  }
  if (H.size() > h.budget) throw InputError("hitting set is larger than the budget k");
  if (!is_hitting_set(h, H)) throw InputError("H does not hit every set");
  const auto n = h.ground_size;
  const auto set_agents = static_cast<std::size_t>(p.D) * h.sets.size();
  const auto total = 4 * n + static_cast<std::size_t>(2 * p.B) - 3 * h.budget;
  VotingOrder order;
  for (auto j : H) order.agents.insert(order.agents.end(), {4 * j + 1, 4 * j, 4 * j + 2, 4 * j + 3});
  for (std::size_t q = 0; q < set_agents; ++q) order.agents.push_back(4 * n + q);
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::binary_search(H.begin(), H.end(), j)) order.agents.insert(order.agents.end(), {4 * j, 4 * j + 1, 4 * j + 2, 4 * j + 3});
  }
  for (std::size_t x = 4 * n + set_agents; x < total; ++x) order.agents.push_back(x);
  return order;
}

/// The same construction queried for b being a necessary winner.
struct NecessaryQuery {
  Instance instance;
  CandidateId query;
};

inline NecessaryQuery gen_unw_necessary_check(const HittingSetInput& h, const ReductionParams& p) {
  return {gen_hitting_set_upw(h, p), CandidateId(1)};
}

/// Lines `set q_a q_b q_c` (the `q` is optional), optionally `elements N` and `budget K`;
/// `#` starts a comment. Without `elements`, the ground set is 0..max index.
inline HittingSetInput parse_hitting_set(std::string_view text) {
  HittingSetInput h;
  std::optional<std::size_t> elements;
  std::size_t max_index = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto number = [&](std::string token, std::size_t column) -> std::size_t {
    if (!token.empty() && token.front() == 'q') token.erase(0, 1);
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw ParseError(line_no, column, "expected a non-negative integer");
    }
    return std::stoull(token);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;
    if (tokens[0] == "set") {
      if (tokens.size() != 4) throw ParseError(line_no, 1, "a set line lists exactly three elements");
      std::array<std::size_t, 3> s{};
      for (std::size_t i = 0; i < 3; ++i) {
        s[i] = number(tokens[i + 1], i + 2);
        max_index = std::max(max_index, s[i]);
      }
      h.sets.push_back(s);
    } else if (tokens[0] == "elements" && tokens.size() == 2) {
      elements = number(tokens[1], 2);
    } else if (tokens[0] == "budget" && tokens.size() == 2) {
      h.budget = number(tokens[1], 2);
    } else {
      throw ParseError(line_no, 1, "unknown directive '" + tokens[0] + "'");
    }
  }
  h.ground_size = elements.value_or(h.sets.empty() ? 0 : max_index + 1);
  return h;
}

// ---------------------------------------------------------------------------------------
// Unweighted possible winner from (3<=,3<=)-SAT: single edges and isolated agents.

/// Clauses use DIMACS literals: v or -v for variable v in 1..num_vars.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

inline CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<int> current;
  std::size_t declared_clauses = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::string first;
    if (!(words >> first) || first == "c" || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      long long vars = -1;
      long long clauses = -1;
      if (header || !(words >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0) {
        throw ParseError(line_no, 1, "expected a single header 'p cnf <vars> <clauses>'");
      }
      header = true;
      f.num_vars = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header) throw ParseError(line_no, 1, "clause before the 'p cnf' header");
    std::istringstream tokens(line);
    std::string token;
    std::size_t column = 0;
    while (tokens >> token) {
      ++column;
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError(line_no, column, "expected an integer literal, got '" + token + "'");
      }
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (static_cast<std::size_t>(std::abs(lit)) > f.num_vars) throw ParseError(line_no, column, "literal exceeds the declared variable count");
        current.push_back(lit);
      }
    }
  }
  if (!header) throw ParseError(line_no, 1, "missing 'p cnf' header");
  if (!current.empty()) f.clauses.push_back(std::move(current));
  if (f.clauses.size() != declared_clauses) {
    throw ParseError(line_no, 1, "header declares " + std::to_string(declared_clauses) + " clauses, found " + std::to_string(f.clauses.size()));
  }
  return f;
}

/// Result of unit propagation and pure-literal elimination. Surviving variables are
/// renumbered 1..k; `original_var[i-1]` maps them back. `fixed` holds the values chosen
/// for eliminated original variables (nullopt if the variable was unconstrained or kept).
struct Preprocessed {
  CnfFormula formula;
  std::vector<std::size_t> original_var;
  std::vector<std::optional<bool>> fixed;  // indexed by original variable - 1
};

inline Preprocessed preprocess_cnf(const CnfFormula& input) {
  std::vector<std::optional<bool>> value(input.num_vars);
  std::vector<std::vector<int>> clauses;
  for (auto clause : input.clauses) {
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    const bool tautology = std::any_of(clause.begin(), clause.end(), [&](int l) { return std::binary_search(clause.begin(), clause.end(), -l); });
    if (!tautology) clauses.push_back(std::move(clause));
  }

  auto assign = [&](int lit) {
    value[static_cast<std::size_t>(std::abs(lit)) - 1] = lit > 0;
    std::vector<std::vector<int>> next;
    for (auto& clause : clauses) {
      if (std::find(clause.begin(), clause.end(), lit) != clause.end()) continue;
      std::erase(clause, -lit);
      if (clause.empty()) throw InputError("formula is unsatisfiable: preprocessing derived an empty clause");
      next.push_back(std::move(clause));
    }
    clauses = std::move(next);
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& clause : clauses) {
      if (clause.size() == 1) {
        assign(clause[0]);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    std::map<int, int> occurrences;
    for (const auto& clause : clauses) {
      for (int l : clause) ++occurrences[l];
    }
    for (const auto& [lit, count] : occurrences) {
      if (!occurrences.contains(-lit)) {
        assign(lit);
        changed = true;
        break;
      }
    }
  }

  Preprocessed out;
  out.fixed = value;
  std::vector<int> renumber(input.num_vars + 1, 0);
  for (const auto& clause : clauses) {
    for (int l : clause) renumber[static_cast<std::size_t>(std::abs(l))] = 1;
  }
  for (std::size_t v = 1; v <= input.num_vars; ++v) {
    if (renumber[v]) {
      out.original_var.push_back(v);
      renumber[v] = static_cast<int>(out.original_var.size());
    }
  }
  out.formula.num_vars = out.original_var.size();
  for (auto& clause : clauses) {
    for (int& l : clause) l = l > 0 ? renumber[static_cast<std::size_t>(l)] : -renumber[static_cast<std::size_t>(-l)];
    out.formula.clauses.push_back(std::move(clause));
  }
  return out;
}

/// Requirements of the construction: clauses of 2 or 3 distinct variables, every variable
/// occurring at most three times, no pure literal.
inline void validate_sat_input(const CnfFormula& f) {
  std::vector<int> positive(f.num_vars + 1, 0);
  std::vector<int> negative(f.num_vars + 1, 0);
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& clause = f.clauses[j];
    const std::string where = "clause " + std::to_string(j + 1);
    if (clause.size() < 2) throw InputError(where + " is a unit or empty clause");
    if (clause.size() > 3) throw InputError(where + " has more than 3 literals");
    std::set<int> vars;
    for (int l : clause) {
      const auto v = static_cast<std::size_t>(std::abs(l));
      if (l == 0 || v > f.num_vars) throw InputError(where + " has an invalid literal");
      if (!vars.insert(static_cast<int>(v)).second) throw InputError(where + " repeats a variable");
      ++(l > 0 ? positive : negative)[v];
    }
  }
  for (std::size_t v = 1; v <= f.num_vars; ++v) {
    if (positive[v] + negative[v] > 3) throw InputError("variable " + std::to_string(v) + " occurs more than 3 times");
    if ((positive[v] == 0) != (negative[v] == 0)) throw InputError("variable " + std::to_string(v) + " is a pure literal");
  }
}

struct SatReduction {
  Instance instance;
  Preprocessed reduced;  // the formula the instance encodes, and how it maps to the input
};

/// Candidate label of a literal: `x3` or `~x3`.
inline std::string literal_label(int lit) { return (lit > 0 ? "x" : "~x") + std::to_string(std::abs(lit)); }

/// Candidates x_i, ~x_i (per variable), c_j (per clause), d, a; c* = a.
/// Agents: var agents 2(i-1) (x_i,~x_i) and 2(i-1)+1 (~x_i,x_i) are friends. Clause j owns
/// agents 2n+6(j-1) .. +5 as groups of a (c_j,d) agent befriending a (l,c_j) agent, one group
/// per literal; a 2-clause's last two agents are isolated (c_j,d) dummies. Then three
/// isolated (l,d) agents per literal and five isolated (a,d) agents.
inline SatReduction gen_sat_upw(const CnfFormula& input, bool preprocess = true) {
  Preprocessed reduced;
  if (preprocess) {
    reduced = preprocess_cnf(input);
  } else {
    reduced.formula = input;
    reduced.fixed.assign(input.num_vars, std::nullopt);
    for (std::size_t v = 1; v <= input.num_vars; ++v) reduced.original_var.push_back(v);
  }
  const auto& f = reduced.formula;
  validate_sat_input(f);
  const std::size_t n = f.num_vars;
  const std::size_t m = f.clauses.size();

  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) {
    labels.push_back(literal_label(static_cast<int>(i)));
    labels.push_back(literal_label(-static_cast<int>(i)));
  }
  for (std::size_t j = 1; j <= m; ++j) labels.push_back("c" + std::to_string(j));
  labels.push_back("d");
  labels.push_back("a");
  auto lit_id = [&](int lit) { return CandidateId(2 * (static_cast<std::size_t>(std::abs(lit)) - 1) + (lit > 0 ? 0 : 1)); };
  auto clause_id = [&](std::size_t j) { return CandidateId(2 * n + j); };
  const CandidateId d(2 * n + m);
  const CandidateId a(2 * n + m + 1);

  std::vector<AgentPrefs> agents;
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= n; ++i) {
    const int x = static_cast<int>(i);
    agents.push_back(detail::prefs2(lit_id(x), lit_id(-x)));
    agents.push_back(detail::prefs2(lit_id(-x), lit_id(x)));
    edges.push_back({agents.size() - 2, agents.size() - 1});
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (int lit : f.clauses[j]) {
      agents.push_back(detail::prefs2(clause_id(j), d));
      agents.push_back(detail::prefs2(lit_id(lit), clause_id(j)));
      edges.push_back({agents.size() - 2, agents.size() - 1});
    }
    if (f.clauses[j].size() == 2) {
      agents.push_back(detail::prefs2(clause_id(j), d));
      agents.push_back(detail::prefs2(clause_id(j), d));
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (int lit : {static_cast<int>(i), -static_cast<int>(i)}) {
      for (int r = 0; r < 3; ++r) agents.push_back(detail::prefs2(lit_id(lit), d));
    }
  }
  for (int r = 0; r < 5; ++r) agents.push_back(detail::prefs2(a, d));
  return {Instance("sat", std::move(labels), std::move(agents), std::move(edges), a), std::move(reduced)};
}

inline bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
  if (assignment.size() != f.num_vars) throw InputError("assignment must give a value to every variable");
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& clause) {
    return std::any_of(clause.begin(), clause.end(), [&](int l) { return assignment[static_cast<std::size_t>(std::abs(l)) - 1] == (l > 0); });
  });
}

/// For a satisfying assignment of the encoded formula (assignment[i] is variable i+1):
/// position i holds var agent 2i+1 if x_{i+1} is true, else 2i; then the clause agents, where
/// a group's literal agent goes first exactly when its literal is true; then everyone else.
inline VotingOrder witness_order_sat(const CnfFormula& f, const std::vector<bool>& assignment) {
  validate_sat_input(f);
  if (!satisfies(f, assignment)) throw InputError("assignment does not satisfy the formula");
  const std::size_t n = f.num_vars;
  std::vector<bool> placed;
  VotingOrder order;
  auto push = [&](std::size_t x) {
    if (placed.size() <= x) placed.resize(x + 1, false);
    placed[x] = true;
    order.agents.push_back(x);
  };
  for (std::size_t i = 0; i < n; ++i) push(assignment[i] ? 2 * i + 1 : 2 * i);
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const std::size_t base = 2 * n + 6 * j;
    for (std::size_t g = 0; g < f.clauses[j].size(); ++g) {
      const int lit = f.clauses[j][g];
      const bool literal_true = assignment[static_cast<std::size_t>(std::abs(lit)) - 1] == (lit > 0);
      if (literal_true) {
        push(base + 2 * g + 1);
        push(base + 2 * g);
      } else {
        push(base + 2 * g);
        push(base + 2 * g + 1);
      }
    }
    if (f.clauses[j].size() == 2) {
      push(base + 4);
      push(base + 5);
    }
  }
  const std::size_t total = 8 * n + 6 * f.clauses.size() + 5;
  placed.resize(total, false);
  for (std::size_t x = 0; x < total; ++x) {
    if (!placed[x]) order.agents.push_back(x);
  }
  return order;
}

// ---------------------------------------------------------------------------------------
// Path families showing the problem has unbounded index under disjoint union.

enum class FamilyKind { L, R };

inline constexpr std::string_view family_distinguished_label = "cstar";

/// L_i: path of i agents with P = {c*, a}, top c*. R_i: same with top a.
inline Instance gen_family(FamilyKind kind, std::size_t length) {
  if (length < 1) throw InputError("family path length must be at least 1");
  const CandidateId cstar(0), a(1);
  std::vector<AgentPrefs> agents;
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < length; ++x) {
    agents.push_back(kind == FamilyKind::L ? detail::prefs2(cstar, a) : detail::prefs2(a, cstar));
    if (x > 0) edges.push_back({x - 1, x});
  }
  const std::string name = (kind == FamilyKind::L ? "L" : "R") + std::to_string(length);
  return Instance(name, {std::string(family_distinguished_label), "a"}, std::move(agents), std::move(edges), cstar);
}

/// L_{i_1..i_{k-1}}: paths P_{i_j} with P = {c*, a_j}, top a_j.
/// R_{i_1..i_k}: the first k-1 paths as for L; the last path has P = {c*, a_1}, top c*.
inline Instance gen_family_multi(FamilyKind kind, const std::vector<std::size_t>& lengths) {
  if (lengths.empty()) throw InputError("multi-path family needs at least one path");
  const std::size_t alternatives = kind == FamilyKind::L ? lengths.size() : std::max<std::size_t>(1, lengths.size() - 1);
  std::vector<std::string> labels{std::string(family_distinguished_label)};
  for (std::size_t j = 1; j <= alternatives; ++j) labels.push_back("a" + std::to_string(j));
  const CandidateId cstar(0);
  std::vector<AgentPrefs> agents;
  std::vector<Edge> edges;
  std::string name = kind == FamilyKind::L ? "L" : "R";
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    if (lengths[j] < 1) throw InputError("family path lengths must be positive");
    name += (j ? "," : "") + std::to_string(lengths[j]);
    const bool last_of_r = kind == FamilyKind::R && j + 1 == lengths.size();
    const CandidateId aj(last_of_r ? 1 : j + 1);
    for (std::size_t x = 0; x < lengths[j]; ++x) {
      agents.push_back(last_of_r ? detail::prefs2(cstar, aj) : detail::prefs2(aj, cstar));
      if (x > 0) edges.push_back({agents.size() - 2, agents.size() - 1});
    }
  }
  return Instance(name, std::move(labels), std::move(agents), std::move(edges), cstar);
}

// ---------------------------------------------------------------------------------------
// Random instances for testing and benchmarking.

enum class RandomGraphKind { forest, gnp };

struct RandomInstanceSpec {
  std::size_t agents = 6;
  std::size_t candidates = 3;
  std::size_t preferred = 2;  // |P(x)|, capped by the number of candidates
  RandomGraphKind graph = RandomGraphKind::forest;
  double edge_probability = 0.3;  // gnp only; forests attach each vertex with this probability too
  bool weighted = false;
  std::int64_t max_weight = 9;
  std::uint64_t seed = 1;
};

inline std::string default_candidate_label(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "c" + std::to_string(i);
}

/// Deterministic for a given spec (uses only raw mt19937_64 output).
inline Instance gen_random(const RandomInstanceSpec& spec) {
  if (spec.candidates < 1) throw InputError("random instance needs at least one candidate");
  if (spec.max_weight < 1) throw InputError("max weight must be positive");
  std::mt19937_64 rng(spec.seed);
  auto below = [&](std::uint64_t bound) { return static_cast<std::size_t>(rng() % bound); };
  auto chance = [&](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };
  const std::size_t k = std::clamp<std::size_t>(spec.preferred, 1, spec.candidates);

  std::vector<AgentPrefs> agents;
  for (std::size_t x = 0; x < spec.agents; ++x) {
    std::vector<std::size_t> pool(spec.candidates);
    for (std::size_t c = 0; c < pool.size(); ++c) pool[c] = c;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(pool.size() - i)]);
    AgentPrefs p;
    for (std::size_t i = 0; i < k; ++i) p.preferred.emplace_back(pool[i]);
    p.top = p.preferred.front();
    std::sort(p.preferred.begin(), p.preferred.end());
    p.weight = spec.weighted ? 1 + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(spec.max_weight))) : 1;
    agents.push_back(std::move(p));
  }

  std::vector<Edge> edges;
  if (spec.graph == RandomGraphKind::forest) {
    for (std::size_t x = 1; x < spec.agents; ++x) {
      if (chance(spec.edge_probability)) edges.push_back({below(x), x});
    }
  } else {
    for (std::size_t u = 0; u < spec.agents; ++u) {
      for (std::size_t v = u + 1; v < spec.agents; ++v) {
        if (chance(spec.edge_probability)) edges.push_back({u, v});
      }
    }
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < spec.candidates; ++c) labels.push_back(default_candidate_label(c));
  return Instance("random-" + std::to_string(spec.seed), std::move(labels), std::move(agents), std::move(edges), CandidateId(0));
}

}  // namespace socialpoll
