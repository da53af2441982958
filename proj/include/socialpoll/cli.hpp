#pragma once

// Command-line front end. `run` takes the arguments without the program name and writes
// `key: value` reports (or instance documents for `gen`) to `out`, diagnostics to `err`.
//
// Exit status: 0 ok, 1 usage/parse/input error, 2 NO decision under --strict-exit,
// 3 resource guard hit, 4 --cross-check disagreement.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "socialpoll/dp.hpp"
#include "socialpoll/errors.hpp"
#include "socialpoll/instance_io.hpp"
#include "socialpoll/model.hpp"
#include "socialpoll/oracle.hpp"
#include "socialpoll/reductions.hpp"
#include "socialpoll/tree_decomposition.hpp"

namespace socialpoll::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_no = 2, exit_resource = 3, exit_mismatch = 4 };

/// Ordered `key: value` lines.
class Report {
public:
  void add(std::string key, std::string value) { lines_.emplace_back(std::move(key), std::move(value)); }
  std::string render() const {
    std::string text;
    for (const auto& [k, v] : lines_) text += k + ": " + v + "\n";
    return text;
  }

private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

inline std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Instance load_instance(const std::string& path) {
  try {
    return parse_instance(read_text(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::string format_order(const VotingOrder& order) {
  std::string text;
  for (std::size_t i = 0; i < order.agents.size(); ++i) {
    if (i) text += ',';
    text += std::to_string(order.agents[i]);
  }
  return text;
}

inline std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    const auto item = std::string_view(text).substr(start, comma - start);
    auto value = detail::to_integer<std::int64_t>(item);
    if (!value) throw InputError(what + ": expected comma-separated integers, got '" + text + "'");
    values.push_back(*value);
    start = comma + 1;
  }
  return values;
}

/// Comma-separated agent ids forming a permutation of 0..n-1.
inline VotingOrder parse_order(const std::string& text, std::size_t n) {
  VotingOrder order;
  if (!text.empty()) {
    for (auto v : parse_int_list(text, "--order")) {
      if (v < 0) throw InputError("--order: agent ids are non-negative");
      order.agents.push_back(static_cast<AgentId>(v));
    }
  }
  validate_order(n, order);
  return order;
}

struct SolverFlags {
  std::string method = "auto";
  std::uint64_t max_orientations = std::uint64_t{1} << 22;
  std::size_t max_table = std::size_t{1} << 24;
  unsigned threads = 1;
  bool cross_check = false;
  bool strict_exit = false;
  bool dump_slices = false;
  std::string candidate;
};

enum class Question { scores, possible, necessary };

inline const char* method_name(bool dp) { return dp ? "dp" : "bf"; }

/// `auto`: DP for score questions on unweighted instances of heuristic width <= 3 with at
/// most three candidates; margin DP for necessary-winner questions of width <= 3; BF otherwise.
inline bool use_dp(const SolverFlags& flags, const Instance& inst, Question q) {
  if (flags.method == "dp") return true;
  if (flags.method == "bf") return false;
  const auto width = heuristic_td(inst.graph()).width();
  if (q == Question::necessary) return width <= 3;
  return !inst.is_weighted() && width <= 3 && inst.num_candidates() <= 3;
}

namespace detail {

inline void dump(const NiceTreeDecomposition& nice, const DpStats& stats, std::ostream& err) {
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    err << "node " << i << " type " << to_string(nice.nodes[i].kind) << " entries " << stats.entries[i] << "\n";
  }
}

inline BruteForceOptions bf_options(const SolverFlags& flags) { return {flags.max_orientations, flags.threads}; }

inline DpOptions dp_options(const SolverFlags& flags) { return {flags.max_table}; }

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

inline std::string fixed(double value) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << value;
  return s.str();
}

/// Re-simulates a witness and reports it; throws if it does not reproduce the claim.
inline void add_witness(Report& report, const Instance& inst, const std::string& key, const Witness& w) {
  const auto replay = simulate_order(inst, w.order);
  if (replay.scores != w.claimed) throw std::logic_error("witness order does not reproduce its claimed scores");
  report.add(key, format_order(w.order));
  report.add(key + "_scores", format_scores(inst, replay.scores));
}

struct ScoresRun {
  AchievableSet scores;
  std::uint64_t orientations = 0;
  std::size_t peak_table = 0;
};

inline ScoresRun scores_with(bool dp, const Instance& inst, const SolverFlags& flags, std::ostream& err) {
  ScoresRun run;
  if (dp) {
    const auto nice = default_decomposition(inst);
    DpStats stats;
    run.scores = achievable_scores_dp(inst, nice, dp_options(flags), &stats);
    run.peak_table = stats.peak_live;
    if (flags.dump_slices) dump(nice, stats, err);
  } else {
    BruteForceStats stats;
    run.scores = achievable_scores_bf(inst, bf_options(flags), &stats);
    run.orientations = stats.orientations;
  }
  return run;
}

/// Margin-DP necessary-winner decision; the first candidate with a positive margin over c.
inline NecessaryDecision necessary_dp(const Instance& inst, CandidateId c, const SolverFlags& flags, std::size_t& peak,
                                      std::ostream& err) {
  const auto nice = default_decomposition(inst);
  NecessaryDecision decision{true, std::nullopt};
  for (std::size_t d = 0; d < inst.num_candidates(); ++d) {
    if (d == c.index) continue;
    DpStats stats;
    const auto margin = max_margin_dp(inst, nice, CandidateId(d), c, dp_options(flags), &stats);
    peak = std::max(peak, stats.peak_live);
    if (flags.dump_slices) dump(nice, stats, err);
    if (margin > 0) return {false, CandidateId(d)};
  }
  return decision;
}

inline CandidateId query_candidate(const Instance& inst, const SolverFlags& flags) {
  return flags.candidate.empty() ? inst.distinguished() : inst.candidate(flags.candidate);
}

inline int cmd_scores(const Instance& inst, const SolverFlags& flags, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const bool dp = use_dp(flags, inst, Question::scores);
  const auto run = scores_with(dp, inst, flags, err);
  Report report;
  report.add("question", "scores");
  report.add("method", method_name(dp));
  report.add("count", std::to_string(run.scores.size()));
  std::size_t i = 0;
  for (const auto& s : run.scores) report.add("score[" + std::to_string(i++) + "]", format_scores(inst, s));
  int status = exit_ok;
  if (flags.cross_check) {
    const auto other = scores_with(!dp, inst, flags, err);
    const bool agree = other.scores == run.scores;
    report.add("cross_check", agree ? "agree" : "mismatch");
    if (!agree) status = exit_mismatch;
  }
  if (dp) {
    report.add("table_peak", std::to_string(run.peak_table));
  } else {
    report.add("orientations", std::to_string(run.orientations));
  }
  report.add("elapsed_ms", fixed(elapsed_ms(start)));
  out << report.render();
  return status;
}

inline int cmd_possible(const Instance& inst, const SolverFlags& flags, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const auto c = query_candidate(inst, flags);
  const bool dp = use_dp(flags, inst, Question::possible);
  Report report;
  report.add("question", "possible");
  report.add("candidate", inst.label(c));
  report.add("method", method_name(dp));

  auto decide_dp = [&](std::size_t& peak) {
    const auto run = scores_with(true, inst, flags, err);
    peak = run.peak_table;
    return std::any_of(run.scores.begin(), run.scores.end(), [&](const ScoreFunction& s) { return is_cowinner(s, c); });
  };
  bool holds = false;
  std::size_t peak = 0;
  BruteForceStats bf_stats;
  if (dp) {
    holds = decide_dp(peak);
    report.add("decision", holds ? "YES" : "NO");
  } else {
    const auto decision = possible_winner_bf(inst, c, bf_options(flags), &bf_stats);
    holds = decision.holds;
    report.add("decision", holds ? "YES" : "NO");
    if (decision.witness) add_witness(report, inst, "witness", *decision.witness);
  }
  int status = exit_ok;
  if (flags.cross_check) {
    bool other = false;
    if (dp) {
      other = possible_winner_bf(inst, c, bf_options(flags), &bf_stats).holds;
    } else {
      other = decide_dp(peak);
    }
    report.add("cross_check", other == holds ? "agree" : "mismatch");
    if (other != holds) status = exit_mismatch;
  }
  if (dp || flags.cross_check) report.add("table_peak", std::to_string(peak));
  if (!dp || flags.cross_check) report.add("orientations", std::to_string(bf_stats.orientations));
  report.add("elapsed_ms", fixed(elapsed_ms(start)));
  out << report.render();
  if (status == exit_ok && !holds && flags.strict_exit) status = exit_no;
  return status;
}

inline int cmd_necessary(const Instance& inst, const SolverFlags& flags, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const auto c = query_candidate(inst, flags);
  const bool dp = use_dp(flags, inst, Question::necessary);
  Report report;
  report.add("question", "necessary");
  report.add("candidate", inst.label(c));
  report.add("method", method_name(dp));
  bool holds = false;
  std::size_t peak = 0;
  BruteForceStats bf_stats;
  if (dp) {
    const auto decision = necessary_dp(inst, c, flags, peak, err);
    holds = decision.holds;
    report.add("decision", holds ? "YES" : "NO");
    if (decision.beaten_by) report.add("beaten_by", inst.label(*decision.beaten_by));
  } else {
    const auto decision = necessary_winner_bf(inst, c, bf_options(flags), &bf_stats);
    holds = decision.holds;
    report.add("decision", holds ? "YES" : "NO");
    if (decision.witness) add_witness(report, inst, "counterexample", *decision.witness);
  }
  int status = exit_ok;
  if (flags.cross_check) {
    const bool other = dp ? necessary_winner_bf(inst, c, bf_options(flags), &bf_stats).holds : necessary_dp(inst, c, flags, peak, err).holds;
    report.add("cross_check", other == holds ? "agree" : "mismatch");
    if (other != holds) status = exit_mismatch;
  }
  if (dp || flags.cross_check) report.add("table_peak", std::to_string(peak));
  if (!dp || flags.cross_check) report.add("orientations", std::to_string(bf_stats.orientations));
  report.add("elapsed_ms", fixed(elapsed_ms(start)));
  out << report.render();
  if (status == exit_ok && !holds && flags.strict_exit) status = exit_no;
  return status;
}

inline int cmd_simulate(const Instance& inst, const std::string& order_text, std::ostream& out) {
  const auto order = parse_order(order_text, inst.num_agents());
  const auto result = simulate_order(inst, order);
  Report report;
  report.add("question", "simulate");
  report.add("order", format_order(order));
  std::string votes;
  for (AgentId x = 0; x < inst.num_agents(); ++x) {
    if (x) votes += ' ';
    votes += std::to_string(x) + "=" + inst.label(result.outcome.votes[x]);
  }
  report.add("votes", votes);
  report.add("scores", format_scores(inst, result.scores));
  std::string names;
  for (auto w : winners(result.scores)) names += (names.empty() ? "" : " ") + inst.label(w);
  report.add("winners", names);
  out << report.render();
  return exit_ok;
}

inline int cmd_td(const Instance& inst, bool exact, bool nice_form, std::ostream& out) {
  const auto td = exact ? exact_td_small(inst.graph()) : heuristic_td(inst.graph());
  if (!nice_form) {
    out << render_td(td);
    return exit_ok;
  }
  const auto nice = make_nice(td);
  out << "# width " << nice.width() << "\n";
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    const auto& node = nice.nodes[i];
    out << "node " << i << " type " << to_string(node.kind);
    if (node.kind == NiceKind::insert || node.kind == NiceKind::forget) out << " vertex " << node.vertex;
    out << " bag";
    for (auto v : node.bag) out << ' ' << v;
    out << " children";
    for (auto c : node.children) out << ' ' << c;
    out << "\n";
  }
  out << "root " << nice.root << "\n";
  return exit_ok;
}

inline int cmd_validate(const std::string& path, const std::string& td_path, std::ostream& out) {
  Report report;
  Instance inst = [&] {
    try {
      return load_instance(path);
    } catch (const InputError& e) {
      report.add("valid", "no");
      report.add("error", e.what());
      out << report.render();
      throw;
    }
  }();
  report.add("valid", "yes");
  report.add("agents", std::to_string(inst.num_agents()));
  report.add("candidates", std::to_string(inst.num_candidates()));
  report.add("edges", std::to_string(inst.graph().num_edges()));
  report.add("weighted", inst.is_weighted() ? "yes" : "no");
  report.add("components", std::to_string(connected_components(inst.graph()).size()));
  report.add("heuristic_width", std::to_string(heuristic_td(inst.graph()).width()));
  for (const auto& w : lint(inst)) report.add("warning", w);
  int status = exit_ok;
  if (!td_path.empty()) {
    const auto td = parse_td(read_text(td_path));
    const auto verdict = validate_td(inst.graph(), td);
    report.add("td_valid", verdict.ok() ? "yes" : "no");
    if (!verdict.ok()) {
      report.add("td_error", verdict.message);
      status = exit_usage;
    } else {
      report.add("td_width", std::to_string(td.width()));
    }
  }
  out << report.render();
  return status;
}

inline void emit_document(const Instance& inst, const std::vector<std::string>& notes, const std::string& output, std::ostream& out) {
  std::string text;
  for (const auto& note : notes) text += "# " + note + "\n";
  text += render_instance(inst);
  if (output.empty() || output == "-") {
    out << text;
    return;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) throw InputError("cannot write '" + output + "'");
  file << text;
}

inline std::vector<std::size_t> to_indices(const std::vector<std::int64_t>& values, const std::string& what) {
  std::vector<std::size_t> out;
  for (auto v : values) {
    if (v < 0) throw InputError(what + ": indices are non-negative");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential plurality polls over social networks: simulation, possible/necessary winners, generators"};
  app.name("socialpoll");
  app.require_subcommand(1);

  SolverFlags flags;
  std::string instance_path;
  std::string output;
  std::string order_text;

  auto add_instance = [&](CLI::App* cmd) { cmd->add_option("--instance", instance_path, "Instance document ('-' for stdin)")->required(); };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--method", flags.method, "bf, dp or auto")->check(CLI::IsMember({"bf", "dp", "auto"}));
    cmd->add_option("--max-orientations", flags.max_orientations, "Brute-force orientation budget");
    cmd->add_option("--max-table", flags.max_table, "DP live-table budget");
    cmd->add_option("--threads", flags.threads, "Brute-force worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--cross-check", flags.cross_check, "Run both methods and fail on disagreement");
    cmd->add_flag("--dump-slices", flags.dump_slices, "Print per-node DP table sizes to stderr");
    cmd->add_option("--output", output, "Write the report to a file");
  };

  auto* simulate = app.add_subcommand("simulate", "Run one voting order");
  add_instance(simulate);
  simulate->add_option("--order", order_text, "Comma-separated agent ids")->required();
  simulate->add_option("--output", output, "Write the report to a file");

  auto* scores = app.add_subcommand("scores", "All achievable score functions");
  add_instance(scores);
  add_solver(scores);

  auto* possible = app.add_subcommand("possible", "Is the candidate a co-winner for some order?");
  add_instance(possible);
  add_solver(possible);
  possible->add_option("--candidate", flags.candidate, "Candidate label (default: distinguished)");
  possible->add_flag("--strict-exit", flags.strict_exit, "Exit 2 on NO");

  auto* necessary = app.add_subcommand("necessary", "Is the candidate a co-winner for every order?");
  add_instance(necessary);
  add_solver(necessary);
  necessary->add_option("--candidate", flags.candidate, "Candidate label (default: distinguished)");
  necessary->add_flag("--strict-exit", flags.strict_exit, "Exit 2 on NO");

  bool exact = false;
  bool nice_form = false;
  auto* td = app.add_subcommand("td", "Tree decomposition of the friendship graph");
  add_instance(td);
  td->add_flag("--exact", exact, "Exact treewidth (at most 14 agents)");
  td->add_flag("--nice", nice_form, "Print the nice form");
  td->add_option("--output", output, "Write to a file");

  std::string td_path;
  auto* validate = app.add_subcommand("validate", "Check an instance (and optionally a decomposition)");
  add_instance(validate);
  validate->add_option("--td", td_path, "Decomposition file (bag/treeedge lines)");

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);

  std::string numbers_text;
  std::string numbers_file;
  std::string half_text;
  std::optional<std::int64_t> multiplier;
  auto* gen_partition = gen->add_subcommand("partition", "Weighted paths from a Partition instance");
  gen_partition->add_option("--numbers", numbers_text, "Comma-separated positive integers");
  gen_partition->add_option("--input", numbers_file, "File with whitespace- or comma-separated integers");
  gen_partition->add_option("--B", multiplier, "Weight multiplier (default 3n+1)");
  gen_partition->add_option("--half", half_text, "Indices of one half; adds a witness order comment");
  gen_partition->add_option("--output", output, "Write the instance to a file");

  std::string hitting_file;
  std::optional<std::size_t> budget;
  std::optional<std::int64_t> big_b;
  std::optional<std::int64_t> big_d;
  bool minimal = false;
  std::string hit_text;
  auto* gen_hitting = gen->add_subcommand("hitting-set", "Bipartite three-candidate instance from 3-Hitting Set");
  gen_hitting->add_option("--input", hitting_file, "Lines 'set q_a q_b q_c' (optional 'elements N', 'budget K')")->required();
  gen_hitting->add_option("--budget", budget, "Budget k (overrides the file)");
  gen_hitting->add_option("--B", big_b, "Parameter B (default n^9)");
  gen_hitting->add_option("--D", big_d, "Parameter D (default n^4)");
  gen_hitting->add_flag("--minimal", minimal, "Smallest B and D allowed by the constraints");
  gen_hitting->add_option("--hit", hit_text, "Hitting set element indices; adds a witness order comment");
  gen_hitting->add_option("--output", output, "Write the instance to a file");

  std::string dimacs;
  bool no_preprocess = false;
  std::string assignment_text;
  auto* gen_sat = gen->add_subcommand("sat", "Single-edge instance from a (3<=,3<=)-CNF formula");
  gen_sat->add_option("--dimacs", dimacs, "DIMACS CNF file")->required();
  gen_sat->add_flag("--no-preprocess", no_preprocess, "Skip unit propagation and pure-literal elimination");
  gen_sat->add_option("--assignment", assignment_text, "0/1 per (encoded) variable; adds a witness order comment");
  gen_sat->add_option("--output", output, "Write the instance to a file");

  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  std::string kind_text;
  std::optional<std::size_t> length;
  std::string multi_text;
  auto* gen_family_cmd = gen->add_subcommand("family", "Path families L_i, R_i and their unions");
  gen_family_cmd->add_option("--left", left, "Length i of L_i (with --right: L_i + R_j)");
  gen_family_cmd->add_option("--right", right, "Length j of R_j");
  gen_family_cmd->add_option("--kind", kind_text, "L or R")->check(CLI::IsMember({"L", "R"}));
  gen_family_cmd->add_option("--length", length, "Path length for --kind");
  gen_family_cmd->add_option("--multi", multi_text, "Comma-separated path lengths for the multi-path variant");
  gen_family_cmd->add_option("--output", output, "Write the instance to a file");

  RandomInstanceSpec spec;
  std::string graph_kind = "forest";
  auto* gen_random_cmd = gen->add_subcommand("random", "Random instance");
  gen_random_cmd->add_option("--agents", spec.agents, "Number of agents");
  gen_random_cmd->add_option("--candidates", spec.candidates, "Number of candidates");
  gen_random_cmd->add_option("--prefs", spec.preferred, "Preferred-set size");
  gen_random_cmd->add_option("--graph", graph_kind, "forest or gnp")->check(CLI::IsMember({"forest", "gnp"}));
  gen_random_cmd->add_option("--p", spec.edge_probability, "Edge probability");
  gen_random_cmd->add_flag("--weighted", spec.weighted, "Random weights in 1..max-weight");
  gen_random_cmd->add_option("--max-weight", spec.max_weight, "Largest weight");
  gen_random_cmd->add_option("--seed", spec.seed, "Random seed");
  gen_random_cmd->add_option("--output", output, "Write the instance to a file");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  // Reports go to --output when given (gen writes its document there itself).
  std::ostringstream buffer;
  const bool is_gen = gen->parsed();
  std::ostream& sink = (!is_gen && !output.empty()) ? static_cast<std::ostream&>(buffer) : out;
  auto flush = [&](int status) {
    if (!is_gen && !output.empty()) {
      std::ofstream file(output, std::ios::binary);
      if (!file) throw InputError("cannot write '" + output + "'");
      file << buffer.str();
    }
    return status;
  };

  try {
    if (simulate->parsed()) return flush(detail::cmd_simulate(load_instance(instance_path), order_text, sink));
    if (scores->parsed()) return flush(detail::cmd_scores(load_instance(instance_path), flags, sink, err));
    if (possible->parsed()) return flush(detail::cmd_possible(load_instance(instance_path), flags, sink, err));
    if (necessary->parsed()) return flush(detail::cmd_necessary(load_instance(instance_path), flags, sink, err));
    if (td->parsed()) return flush(detail::cmd_td(load_instance(instance_path), exact, nice_form, sink));
    if (validate->parsed()) return detail::cmd_validate(instance_path, td_path, out);

    if (gen_partition->parsed()) {
      if (numbers_text.empty() == numbers_file.empty()) throw InputError("gen partition needs exactly one of --numbers or --input");
      std::string list = numbers_text;
      if (!numbers_file.empty()) {
        list.clear();
        for (char ch : read_text(numbers_file)) list += (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') ? ',' : ch;
        std::string squeezed;
        for (char ch : list) {
          if (ch == ',' && (squeezed.empty() || squeezed.back() == ',')) continue;
          squeezed += ch;
        }
        if (!squeezed.empty() && squeezed.back() == ',') squeezed.pop_back();
        list = squeezed;
      }
      PartitionInput p{parse_int_list(list, "partition numbers")};
      const auto inst = gen_partition_wpw(p, multiplier);
      std::vector<std::string> notes{"partition: agents 3j (c,b), 3j+1 (a,c), 3j+2 (b,c) weight k_j*B per number; agent 3n isolated (a,c)",
                                     "B " + std::to_string(multiplier.value_or(default_partition_multiplier(p)))};
      if (!half_text.empty()) {
        notes.push_back("witness " + format_order(witness_order_partition(p, detail::to_indices(parse_int_list(half_text, "--half"), "--half"))));
      }
      detail::emit_document(inst, notes, output, out);
      return exit_ok;
    }
    if (gen_hitting->parsed()) {
      auto h = parse_hitting_set(read_text(hitting_file));
      if (budget) h.budget = *budget;
      validate_hitting_set(h);
      ReductionParams params = minimal ? minimal_hitting_params(h) : default_hitting_params(h);
      if (big_b) params.B = *big_b;
      if (big_d) params.D = *big_d;
      const auto inst = gen_hitting_set_upw(h, params);
      std::vector<std::string> notes{
          "hitting-set: per element j agents 4j (c,b), 4j+1 (a,c), 4j+2 (b,c), 4j+3 (b,c) on a path",
          "set i (1-based): D agents (b,a) on a path from 4n+D(i-1); head befriends the element agents",
          "B " + std::to_string(params.B) + " D " + std::to_string(params.D) + " k " + std::to_string(h.budget)};
      if (!hit_text.empty()) {
        notes.push_back("witness " + format_order(witness_order_hitting(h, params, detail::to_indices(parse_int_list(hit_text, "--hit"), "--hit"))));
      }
      detail::emit_document(inst, notes, output, out);
      return exit_ok;
    }
    if (gen_sat->parsed()) {
      const auto formula = parse_dimacs(read_text(dimacs));
      const auto reduction = gen_sat_upw(formula, !no_preprocess);
      const auto& f = reduction.reduced.formula;
      std::vector<std::string> notes{"sat: var agents 2(i-1), 2(i-1)+1; clause j agents 2n+6(j-1)..+5; then 3 per literal, 5 for a",
                                     "variables " + std::to_string(f.num_vars) + " clauses " + std::to_string(f.clauses.size())};
      std::string mapping;
      for (std::size_t i = 0; i < reduction.reduced.original_var.size(); ++i) {
        mapping += (i ? " " : "") + std::to_string(i + 1) + "=" + std::to_string(reduction.reduced.original_var[i]);
      }
      if (!mapping.empty()) notes.push_back("variable map " + mapping);
      if (!assignment_text.empty()) {
        std::vector<bool> assignment;
        for (auto v : parse_int_list(assignment_text, "--assignment")) assignment.push_back(v != 0);
        notes.push_back("witness " + format_order(witness_order_sat(f, assignment)));
      }
      detail::emit_document(reduction.instance, notes, output, out);
      return exit_ok;
    }
    if (gen_family_cmd->parsed()) {
      if (left || right) {
        if (!left || !right) throw InputError("gen family needs both --left and --right");
        detail::emit_document(instance_union(gen_family(FamilyKind::L, *left), gen_family(FamilyKind::R, *right)), {}, output, out);
        return exit_ok;
      }
      if (kind_text.empty()) throw InputError("gen family needs --left/--right or --kind");
      const auto kind = kind_text == "L" ? FamilyKind::L : FamilyKind::R;
      if (!multi_text.empty()) {
        detail::emit_document(gen_family_multi(kind, detail::to_indices(parse_int_list(multi_text, "--multi"), "--multi")), {}, output, out);
      } else {
        if (!length) throw InputError("gen family --kind needs --length or --multi");
        detail::emit_document(gen_family(kind, *length), {}, output, out);
      }
      return exit_ok;
    }
    if (gen_random_cmd->parsed()) {
      spec.graph = graph_kind == "gnp" ? RandomGraphKind::gnp : RandomGraphKind::forest;
      detail::emit_document(gen_random(spec), {"seed " + std::to_string(spec.seed)}, output, out);
      return exit_ok;
    }
  } catch (const ResourceError& e) {
    err << "error: resource limit: " << e.what() << "\n";
    return exit_resource;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  err << app.help();
  return exit_usage;
}

}  // namespace socialpoll::cli
