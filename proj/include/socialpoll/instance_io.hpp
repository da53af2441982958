#pragma once

// Line-oriented instance documents:
//
//   poll <name>
//   candidates <label>+
//   distinguished <label>
//   agent <id> top=<label> prefs=<label>(,<label>)* [weight=<int>]
//   edge <id> <id>
//
// `#` starts a comment. Candidates must be declared before they are referenced.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socialpoll/errors.hpp"
#include "socialpoll/model.hpp"

namespace socialpoll {

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

template <class Int>
std::optional<Int> to_integer(std::string_view text) {
  Int value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  std::string name;
  std::vector<std::string> labels;
  std::optional<std::size_t> distinguished;
  std::map<std::size_t, std::pair<AgentPrefs, std::size_t>> agents;  // id -> (prefs, line)
  struct PendingEdge {
    Vertex u, v;
    std::size_t line, column;
  };
  std::vector<PendingEdge> edges;
  bool seen_poll = false;
  std::size_t line_no = 0;

  auto find_label = [&](std::string_view label, std::size_t column) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) return CandidateId(i);
    }
    throw ParseError(line_no, column, "unknown candidate label '" + std::string(label) + "'");
  };
  auto agent_id = [&](const detail::Token& t) {
    auto id = detail::to_integer<std::size_t>(t.text);
    if (!id) throw ParseError(line_no, t.column, "expected an agent id, got '" + std::string(t.text) + "'");
    return *id;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    const auto& head = tokens[0];

    if (head.text == "poll") {
      if (seen_poll) throw ParseError(line_no, head.column, "duplicate poll line");
      if (tokens.size() != 2) throw ParseError(line_no, head.column, "expected 'poll <name>'");
      seen_poll = true;
      name = tokens[1].text;
    } else if (head.text == "candidates") {
      if (!labels.empty()) throw ParseError(line_no, head.column, "duplicate candidates line");
      if (tokens.size() < 2) throw ParseError(line_no, head.column, "expected at least one candidate");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::string label(tokens[i].text);
        if (!valid_candidate_label(label)) throw ParseError(line_no, tokens[i].column, "invalid candidate label '" + label + "'");
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
          throw ParseError(line_no, tokens[i].column, "duplicate candidate label '" + label + "'");
        }
        labels.push_back(label);
      }
    } else if (head.text == "distinguished") {
      if (tokens.size() != 2) throw ParseError(line_no, head.column, "expected 'distinguished <label>'");
      if (distinguished) throw ParseError(line_no, head.column, "duplicate distinguished line");
      distinguished = find_label(tokens[1].text, tokens[1].column).index;
    } else if (head.text == "agent") {
      if (tokens.size() < 4 || tokens.size() > 5) {
        throw ParseError(line_no, head.column, "expected 'agent <id> top=<label> prefs=<labels> [weight=<int>]'");
      }
      const std::size_t id = agent_id(tokens[1]);
      if (agents.contains(id)) throw ParseError(line_no, tokens[1].column, "duplicate agent id " + std::to_string(id));
      AgentPrefs prefs;
      std::optional<CandidateId> top;
      bool have_prefs = false;
      bool have_weight = false;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        const auto t = tokens[i];
        const auto eq = t.text.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, t.column, "expected key=value, got '" + std::string(t.text) + "'");
        const auto key = t.text.substr(0, eq);
        const auto value = t.text.substr(eq + 1);
        const std::size_t value_column = t.column + eq + 1;
        if (key == "top" && !top) {
          top = find_label(value, value_column);
        } else if (key == "prefs" && !have_prefs) {
          have_prefs = true;
          std::size_t start = 0;
          while (true) {
            const auto comma = value.find(',', start);
            const auto item = value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            const auto c = find_label(item, value_column + start);
            if (std::find(prefs.preferred.begin(), prefs.preferred.end(), c) != prefs.preferred.end()) {
              throw ParseError(line_no, value_column + start, "candidate '" + std::string(item) + "' listed twice");
            }
            prefs.preferred.push_back(c);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
          }
        } else if (key == "weight" && !have_weight) {
          have_weight = true;
          auto w = detail::to_integer<std::int64_t>(value);
          if (!w || *w < 1) throw ParseError(line_no, value_column, "weight must be a positive integer");
          prefs.weight = *w;
        } else {
          throw ParseError(line_no, t.column, "unexpected or repeated field '" + std::string(key) + "'");
        }
      }
      if (!top || !have_prefs) throw ParseError(line_no, head.column, "agent needs both top= and prefs=");
      if (std::find(prefs.preferred.begin(), prefs.preferred.end(), *top) == prefs.preferred.end()) {
        throw ParseError(line_no, tokens[2].column, "top choice '" + labels[top->index] + "' is not among the preferred candidates");
      }
      prefs.top = *top;
      std::sort(prefs.preferred.begin(), prefs.preferred.end());
      agents.emplace(id, std::pair{std::move(prefs), line_no});
    } else if (head.text == "edge") {
      if (tokens.size() != 3) throw ParseError(line_no, head.column, "expected 'edge <id> <id>'");
      const auto u = agent_id(tokens[1]);
      const auto v = agent_id(tokens[2]);
      if (u == v) throw ParseError(line_no, tokens[2].column, "self-loop on agent " + std::to_string(u));
      edges.push_back({u, v, line_no, head.column});
    } else {
      throw ParseError(line_no, head.column, "unknown directive '" + std::string(head.text) + "'");
    }
  }

  if (labels.empty()) throw ParseError(line_no, 1, "missing candidates line");
  std::vector<AgentPrefs> list;
  for (auto& [id, entry] : agents) {
    if (id != list.size()) {
      throw ParseError(entry.second, 1, "agent ids must be 0..n-1; agent " + std::to_string(list.size()) + " is missing");
    }
    list.push_back(std::move(entry.first));
  }
  std::vector<Edge> plain;
  std::map<Edge, std::size_t> seen;
  for (const auto& e : edges) {
    if (e.u >= list.size() || e.v >= list.size()) {
      throw ParseError(e.line, e.column, "edge references unknown agent " + std::to_string(std::max(e.u, e.v)));
    }
    const auto normalized = Edge::between(e.u, e.v);
    if (!seen.emplace(normalized, e.line).second) throw ParseError(e.line, e.column, "duplicate edge");
    plain.push_back(normalized);
  }
  return Instance(std::move(name), std::move(labels), std::move(list), std::move(plain), CandidateId(distinguished.value_or(0)));
}

/// Canonical document: agents and edges sorted, weight omitted when 1.
inline std::string render_instance(const Instance& inst) {
  std::string out;
  if (!inst.name().empty()) out += "poll " + inst.name() + "\n";
  out += "candidates";
  for (const auto& label : inst.candidate_labels()) out += " " + label;
  out += "\ndistinguished " + inst.label(inst.distinguished()) + "\n";
  for (AgentId x = 0; x < inst.num_agents(); ++x) {
    const auto& prefs = inst.agent(x);
    out += "agent " + std::to_string(x) + " top=" + inst.label(prefs.top) + " prefs=";
    for (std::size_t i = 0; i < prefs.preferred.size(); ++i) {
      if (i) out += ',';
      out += inst.label(prefs.preferred[i]);
    }
    if (prefs.weight != 1) out += " weight=" + std::to_string(prefs.weight);
    out += '\n';
  }
  for (const auto& e : inst.graph().edges()) out += "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

}  // namespace socialpoll
