#pragma once

// Dynamic program over a nice tree decomposition computing every achievable score
// function (unweighted), and its margin variant computing max score(lead) - score(trail)
// (weighted, any number of candidates).
//
// State at a node with bag B (slots = positions in the sorted bag):
//   votes      v(x) for x in B
//   after      bag DAG: bit j of after[i] means slot i precedes slot j. Always acyclic,
//              transitively closed, and contains one direction of every G-edge inside B.
//              It over-approximates reachability of the partial orientation below the node.
//   anterior   a(x): G-neighbours of x introduced so far that vote before x
//   influence  s(x, c) for c in P(x) - top(x): how many of those voted c
//   score      #(c) over all introduced agents (achievable-scores variant only)
// A slice maps states to `true` (score variant) or to the best margin seen (margin variant).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "socialpoll/errors.hpp"
#include "socialpoll/model.hpp"
#include "socialpoll/oracle.hpp"
#include "socialpoll/tree_decomposition.hpp"

namespace socialpoll {

struct DpOptions {
  std::size_t max_table = std::size_t{1} << 24;  // live entries over all stored slices
};

struct DpStats {
  std::vector<std::size_t> entries;  // per nice node, in node order
  std::size_t peak_live = 0;
};

/// Flat state encoding; the layout is determined by the node's bag (see KeyLayout).
struct DpKey {
  std::vector<std::uint32_t> data;

  friend bool operator==(const DpKey&, const DpKey&) = default;
};

struct DpKeyHash {
  std::size_t operator()(const DpKey& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ key.data.size();
    for (auto v : key.data) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

template <class Value>
struct DpSlice {
  std::vector<Vertex> bag;
  std::unordered_map<DpKey, Value, DpKeyHash> entries;
};

using ScoreSlice = DpSlice<bool>;
using MarginSlice = DpSlice<std::int64_t>;

/// The margin variant maximizes score(lead) - score(trail).
struct MarginQuery {
  CandidateId lead;
  CandidateId trail;
};

/// Instance-derived lookups shared by all transitions.
class DpContext {
public:
  explicit DpContext(const Instance& inst, std::optional<MarginQuery> margin = std::nullopt, DpOptions options = {})
      : inst_(&inst), margin_(margin), options_(options), alternatives_(inst.num_agents()) {
    for (AgentId x = 0; x < inst.num_agents(); ++x) {
      const auto& prefs = inst.agent(x);
      for (auto c : prefs.preferred) {
        if (c != prefs.top) alternatives_[x].push_back(c);
      }
    }
    if (margin_ && (margin_->lead.index >= inst.num_candidates() || margin_->trail.index >= inst.num_candidates())) {
      throw InputError("margin query references an unknown candidate");
    }
  }

  const Instance& instance() const noexcept { return *inst_; }
  bool tracks_score() const noexcept { return !margin_.has_value(); }
  const DpOptions& options() const noexcept { return options_; }

  /// P(x) minus top(x), sorted.
  const std::vector<CandidateId>& alternatives(Vertex x) const { return alternatives_.at(x); }

  std::optional<std::size_t> alternative_index(Vertex x, CandidateId c) const {
    const auto& alts = alternatives_[x];
    auto it = std::lower_bound(alts.begin(), alts.end(), c);
    if (it == alts.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - alts.begin());
  }

  /// Weighted margin contributed by x voting `vote` (0 in the score variant).
  std::int64_t contribution(Vertex x, CandidateId vote) const {
    if (!margin_) return 0;
    const auto w = inst_->agents()[x].weight;
    return w * ((vote == margin_->lead ? 1 : 0) - (vote == margin_->trail ? 1 : 0));
  }

private:
  const Instance* inst_;
  std::optional<MarginQuery> margin_;
  DpOptions options_;
  std::vector<std::vector<CandidateId>> alternatives_;
};

/// Offsets of the state fields for a given bag.
struct KeyLayout {
  std::size_t slots = 0;
  std::vector<std::size_t> influence_offset;  // per slot, relative to the influence block
  std::size_t influence_size = 0;
  std::size_t score_size = 0;

  KeyLayout(const DpContext& ctx, const std::vector<Vertex>& bag) : slots(bag.size()) {
    if (slots > 32) throw ResourceError("bags with more than 32 vertices are not supported");
    for (Vertex x : bag) {
      influence_offset.push_back(influence_size);
      influence_size += ctx.alternatives(x).size();
    }
    score_size = ctx.tracks_score() ? ctx.instance().num_candidates() : 0;
  }

  std::size_t size() const { return 3 * slots + influence_size + score_size; }
  std::size_t vote(std::size_t i) const { return i; }
  std::size_t after(std::size_t i) const { return slots + i; }
  std::size_t anterior(std::size_t i) const { return 2 * slots + i; }
  std::size_t influence(std::size_t i, std::size_t k) const { return 3 * slots + influence_offset[i] + k; }
  std::size_t score(CandidateId c) const { return 3 * slots + influence_size + c.index; }
};

/// Assembles a key from its parts; `influence[i]` is indexed like ctx.alternatives(bag[i]).
inline DpKey compose_key(const DpContext& ctx,
                         const std::vector<Vertex>& bag,
                         const std::vector<CandidateId>& votes,
                         const std::vector<std::uint32_t>& after,
                         const std::vector<std::uint32_t>& anterior,
                         const std::vector<std::vector<std::uint32_t>>& influence,
                         const std::vector<std::uint32_t>& score) {
  const KeyLayout layout(ctx, bag);
  if (votes.size() != bag.size() || after.size() != bag.size() || anterior.size() != bag.size() ||
      influence.size() != bag.size() || score.size() != layout.score_size) {
    throw InputError("state functions do not match the bag's domain");
  }
  DpKey key{std::vector<std::uint32_t>(layout.size(), 0)};
  for (std::size_t i = 0; i < bag.size(); ++i) {
    if (influence[i].size() != ctx.alternatives(bag[i]).size()) throw InputError("influence function has the wrong domain");
    key.data[layout.vote(i)] = votes[i].index;
    key.data[layout.after(i)] = after[i];
    key.data[layout.anterior(i)] = anterior[i];
    for (std::size_t k = 0; k < influence[i].size(); ++k) key.data[layout.influence(i, k)] = influence[i][k];
  }
  for (std::size_t c = 0; c < score.size(); ++c) key.data[layout.score(CandidateId(c))] = score[c];
  return key;
}

namespace detail {

inline std::uint32_t bit(std::size_t i) { return std::uint32_t{1} << i; }

/// Per slot: mask of bag slots that are G-neighbours.
inline std::vector<std::uint32_t> neighbour_masks(const Graph& g, const std::vector<Vertex>& bag) {
  std::vector<std::uint32_t> masks(bag.size(), 0);
  for (std::size_t i = 0; i < bag.size(); ++i) {
    for (std::size_t j = 0; j < bag.size(); ++j) {
      if (i != j && g.adjacent(bag[i], bag[j])) masks[i] |= bit(j);
    }
  }
  return masks;
}

inline std::uint32_t predecessors(const std::uint32_t* after, std::size_t slots, std::size_t j) {
  std::uint32_t pred = 0;
  for (std::size_t i = 0; i < slots; ++i) {
    if (after[i] & bit(j)) pred |= bit(i);
  }
  return pred;
}

/// Inserts a zero bit at position p.
inline std::uint32_t widen(std::uint32_t mask, std::size_t p) {
  const std::uint32_t low = mask & (bit(p) - 1);
  const std::uint32_t high = (mask >> p) << (p + 1);
  return low | high;
}

/// Removes bit p.
inline std::uint32_t narrow(std::uint32_t mask, std::size_t p) {
  const std::uint32_t low = mask & (bit(p) - 1);
  const std::uint32_t high = (mask >> (p + 1)) << p;
  return low | high;
}

template <class Value>
void store(DpSlice<Value>& slice, DpKey&& key, Value value, const DpContext& ctx) {
  if constexpr (std::is_same_v<Value, bool>) {
    slice.entries.emplace(std::move(key), true);
  } else {
    auto [it, fresh] = slice.entries.try_emplace(std::move(key), value);
    if (!fresh && value > it->second) it->second = value;
  }
  if (slice.entries.size() > ctx.options().max_table) {
    throw ResourceError("dynamic-programming table exceeded " + std::to_string(ctx.options().max_table) + " entries");
  }
}

template <class Value>
void require_mode(const DpContext& ctx) {
  if (std::is_same_v<Value, bool> != ctx.tracks_score()) {
    throw InputError("slice value type does not match the context mode (bool: scores, int64: margin)");
  }
}

inline bool is_acyclic(std::span<const std::uint32_t> after) {
  std::uint32_t remaining = after.empty() ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << after.size()) - 1);
  while (remaining) {
    bool progressed = false;
    for (std::uint32_t r = remaining; r; r &= r - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(r));
      bool has_pred = false;
      for (std::uint32_t q = remaining; q; q &= q - 1) {
        if (after[static_cast<std::size_t>(std::countr_zero(q))] & bit(j)) {
          has_pred = true;
          break;
        }
      }
      if (!has_pred) {
        remaining &= ~bit(j);
        progressed = true;
      }
    }
    if (!progressed) return false;
  }
  return true;
}

inline bool is_transitively_closed(std::span<const std::uint32_t> after) {
  for (std::size_t i = 0; i < after.size(); ++i) {
    for (std::uint32_t r = after[i]; r; r &= r - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(r));
      if ((after[j] & ~after[i]) != 0) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Predicates relating v, D, #, s and a, with the bag itself as the whole domain X:
/// a is bounded below by the s-sum; D is acyclic and orients G[X]; a(x) and s(x, .) equal
/// the G-neighbour in-arcs of D and their votes; # counts the votes of X; and every x whose
/// friends all lie in X voted as the choice rule dictates. In the margin variant # is absent.
inline bool mutually_compatible(const DpContext& ctx, const std::vector<Vertex>& bag, const DpKey& key) {
  const KeyLayout layout(ctx, bag);
  if (key.data.size() != layout.size()) throw InputError("state does not match the bag's domain");
  const auto& inst = ctx.instance();
  const auto& g = inst.graph();
  const auto nbr = detail::neighbour_masks(g, bag);
  const std::uint32_t* after = key.data.data() + layout.after(0);
  if (!detail::is_acyclic({after, bag.size()})) return false;
  std::vector<std::uint32_t> counted(layout.score_size, 0);
  for (std::size_t i = 0; i < bag.size(); ++i) {
    const Vertex x = bag[i];
    const CandidateId vote(key.data[layout.vote(i)]);
    if (vote.index >= inst.num_candidates() || !inst.agent(x).prefers(vote)) return false;
    if (layout.score_size) ++counted[vote.index];
    for (std::uint32_t r = nbr[i]; r; r &= r - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(r));
      if (!((after[i] >> j) & 1u) && !((after[j] >> i) & 1u)) return false;
    }
    const std::uint32_t in = detail::predecessors(after, bag.size(), i) & nbr[i];
    const auto anterior = key.data[layout.anterior(i)];
    if (anterior != static_cast<std::uint32_t>(std::popcount(in))) return false;
    const auto& alts = ctx.alternatives(x);
    std::uint32_t influence_sum = 0;
    std::optional<CandidateId> majority;
    for (std::size_t k = 0; k < alts.size(); ++k) {
      std::uint32_t expected = 0;
      for (std::uint32_t r = in; r; r &= r - 1) {
        if (key.data[layout.vote(static_cast<std::size_t>(std::countr_zero(r)))] == alts[k].index) ++expected;
      }
      const auto s = key.data[layout.influence(i, k)];
      if (s != expected) return false;
      influence_sum += s;
      if (2 * s > anterior) majority = alts[k];
    }
    if (influence_sum > anterior) return false;
    const auto& friends = g.neighbors(x);
    const bool all_friends_here =
        std::all_of(friends.begin(), friends.end(), [&](Vertex y) { return std::binary_search(bag.begin(), bag.end(), y); });
    if (all_friends_here && vote != majority.value_or(inst.agent(x).top)) return false;
  }
  for (std::size_t c = 0; c < layout.score_size; ++c) {
    if (key.data[layout.score(CandidateId(c))] != counted[c]) return false;
  }
  return true;
}

/// Invariant of every stored state: legal votes; D acyclic, closed and orienting G[B];
/// a, s and # at least the bag's own contribution (forgotten agents add to them);
/// s summing to at most a; a at most deg(x), and exact when all friends of x are in B.
inline bool bag_consistent(const DpContext& ctx, const std::vector<Vertex>& bag, const DpKey& key) {
  const KeyLayout layout(ctx, bag);
  if (key.data.size() != layout.size()) return false;
  const auto& inst = ctx.instance();
  const auto& g = inst.graph();
  const auto nbr = detail::neighbour_masks(g, bag);
  const std::uint32_t* after = key.data.data() + layout.after(0);
  if (!detail::is_acyclic({after, bag.size()}) || !detail::is_transitively_closed({after, bag.size()})) return false;
  std::vector<std::uint32_t> counted(layout.score_size, 0);
  for (std::size_t i = 0; i < bag.size(); ++i) {
    const Vertex x = bag[i];
    const CandidateId vote(key.data[layout.vote(i)]);
    if (vote.index >= inst.num_candidates() || !inst.agent(x).prefers(vote)) return false;
    if (layout.score_size) ++counted[vote.index];
    for (std::uint32_t r = nbr[i]; r; r &= r - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(r));
      if (!((after[i] >> j) & 1u) && !((after[j] >> i) & 1u)) return false;
    }
    const std::uint32_t in = detail::predecessors(after, bag.size(), i) & nbr[i];
    const auto anterior = key.data[layout.anterior(i)];
    const auto in_bag = static_cast<std::uint32_t>(std::popcount(in));
    if (anterior < in_bag || anterior > g.degree(x)) return false;
    if (std::popcount(nbr[i]) == static_cast<int>(g.degree(x)) && anterior != in_bag) return false;
    const auto& alts = ctx.alternatives(x);
    std::uint32_t influence_sum = 0;
    for (std::size_t k = 0; k < alts.size(); ++k) {
      std::uint32_t in_bag_votes = 0;
      for (std::uint32_t r = in; r; r &= r - 1) {
        if (key.data[layout.vote(static_cast<std::size_t>(std::countr_zero(r)))] == alts[k].index) ++in_bag_votes;
      }
      if (key.data[layout.influence(i, k)] < in_bag_votes) return false;
      influence_sum += key.data[layout.influence(i, k)];
    }
    if (influence_sum > anterior) return false;
  }
  for (std::size_t c = 0; c < layout.score_size; ++c) {
    if (key.data[layout.score(CandidateId(c))] < counted[c]) return false;
  }
  return true;
}

/// Leaf {x}: one state per legal vote, with D = ({x}, {}), a = 0, s = 0 and # = [vote].
template <class Value>
DpSlice<Value> dp_leaf(const NiceNode& node, const DpContext& ctx) {
  detail::require_mode<Value>(ctx);
  if (node.kind != NiceKind::leaf) throw InputError("dp_leaf needs a leaf node");
  DpSlice<Value> slice;
  slice.bag = node.bag;
  if (node.bag.empty()) {
    const KeyLayout layout(ctx, slice.bag);
    detail::store<Value>(slice, DpKey{std::vector<std::uint32_t>(layout.size(), 0)}, Value{}, ctx);
    return slice;
  }
  const Vertex x = node.bag.front();
  const KeyLayout layout(ctx, slice.bag);
  for (auto c : ctx.instance().agent(x).preferred) {
    DpKey key{std::vector<std::uint32_t>(layout.size(), 0)};
    key.data[layout.vote(0)] = c.index;
    if (layout.score_size) key.data[layout.score(c)] = 1;
    if (!mutually_compatible(ctx, slice.bag, key)) continue;
    Value value{};
    if constexpr (std::is_same_v<Value, bool>) {
      value = true;
    } else {
      value = ctx.contribution(x, c);
    }
    detail::store<Value>(slice, std::move(key), value, ctx);
  }
  return slice;
}

/// Insert x: choose, for every old bag vertex, whether it precedes x, follows x or is
/// unrelated (G-neighbours must be ordered), keeping D acyclic and closed with D - x equal
/// to the child's DAG; then pick a legal vote for x and account for it in a, s and #.
template <class Value>
DpSlice<Value> dp_insert(const NiceNode& node, const DpSlice<Value>& child, const DpContext& ctx) {
  detail::require_mode<Value>(ctx);
  if (node.kind != NiceKind::insert || child.bag != detail::without(node.bag, node.vertex)) {
    throw InputError("dp_insert needs an insert node and its child's slice");
  }
  using detail::bit;
  const auto& inst = ctx.instance();
  const Vertex x = node.vertex;
  DpSlice<Value> slice;
  slice.bag = node.bag;
  const std::size_t s = slice.bag.size();
  const auto p = static_cast<std::size_t>(std::find(slice.bag.begin(), slice.bag.end(), x) - slice.bag.begin());
  const KeyLayout old_layout(ctx, child.bag);
  const KeyLayout layout(ctx, slice.bag);
  const auto nbr = detail::neighbour_masks(inst.graph(), slice.bag);
  const auto& alts_x = ctx.alternatives(x);

  std::vector<std::size_t> old_to_new(s - 1);
  for (std::size_t j = 0; j + 1 < s; ++j) old_to_new[j] = j < p ? j : j + 1;

  std::vector<std::uint32_t> relation(s - 1, 0);  // 0 unrelated, 1 precedes x, 2 follows x
  for (const auto& [old_key, old_value] : child.entries) {
    // Widen the child state to the new layout with x's fields zeroed.
    DpKey base{std::vector<std::uint32_t>(layout.size(), 0)};
    for (std::size_t j = 0; j + 1 < s; ++j) {
      const auto nj = old_to_new[j];
      base.data[layout.vote(nj)] = old_key.data[old_layout.vote(j)];
      base.data[layout.after(nj)] = detail::widen(old_key.data[old_layout.after(j)], p);
      base.data[layout.anterior(nj)] = old_key.data[old_layout.anterior(j)];
      const auto alts = ctx.alternatives(slice.bag[nj]).size();
      for (std::size_t k = 0; k < alts; ++k) base.data[layout.influence(nj, k)] = old_key.data[old_layout.influence(j, k)];
    }
    for (std::size_t c = 0; c < layout.score_size; ++c) {
      base.data[layout.score(CandidateId(c))] = old_key.data[old_layout.score(CandidateId(c))];
    }
    const std::uint32_t* old_after = base.data.data() + layout.after(0);

    std::fill(relation.begin(), relation.end(), 0);
    for (std::size_t j = 0; j + 1 < s; ++j) {
      if (nbr[p] & bit(old_to_new[j])) relation[j] = 1;
    }
    while (true) {
      std::uint32_t before_x = 0;
      std::uint32_t after_x = 0;
      for (std::size_t j = 0; j + 1 < s; ++j) {
        if (relation[j] == 1) before_x |= bit(old_to_new[j]);
        if (relation[j] == 2) after_x |= bit(old_to_new[j]);
      }
      bool closed = true;
      for (std::uint32_t r = before_x; r && closed; r &= r - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(r));
        if ((detail::predecessors(old_after, s, i) & ~before_x) != 0) closed = false;
        if ((after_x & ~old_after[i]) != 0) closed = false;
      }
      for (std::uint32_t r = after_x; r && closed; r &= r - 1) {
        const auto o = static_cast<std::size_t>(std::countr_zero(r));
        if ((old_after[o] & ~after_x) != 0) closed = false;
      }

      if (closed) {
        DpKey shaped = base;
        shaped.data[layout.after(p)] = after_x;
        for (std::uint32_t r = before_x; r; r &= r - 1) shaped.data[layout.after(static_cast<std::size_t>(std::countr_zero(r)))] |= bit(p);
        const std::uint32_t in = before_x & nbr[p];
        const std::uint32_t out = after_x & nbr[p];
        shaped.data[layout.anterior(p)] = static_cast<std::uint32_t>(std::popcount(in));
        for (std::size_t k = 0; k < alts_x.size(); ++k) {
          std::uint32_t count = 0;
          for (std::uint32_t r = in; r; r &= r - 1) {
            if (shaped.data[layout.vote(static_cast<std::size_t>(std::countr_zero(r)))] == alts_x[k].index) ++count;
          }
          shaped.data[layout.influence(p, k)] = count;
        }
        for (std::uint32_t r = out; r; r &= r - 1) ++shaped.data[layout.anterior(static_cast<std::size_t>(std::countr_zero(r)))];

        for (auto vote : inst.agent(x).preferred) {
          DpKey key = shaped;
          key.data[layout.vote(p)] = vote.index;
          for (std::uint32_t r = out; r; r &= r - 1) {
            const auto o = static_cast<std::size_t>(std::countr_zero(r));
            if (auto k = ctx.alternative_index(slice.bag[o], vote)) ++key.data[layout.influence(o, *k)];
          }
          if (layout.score_size) ++key.data[layout.score(vote)];
          Value value{};
          if constexpr (std::is_same_v<Value, bool>) {
            value = true;
          } else {
            value = old_value + ctx.contribution(x, vote);
          }
          detail::store<Value>(slice, std::move(key), value, ctx);
        }
      }

      // Next relation assignment; G-neighbours cycle through {1, 2}, others through {0, 1, 2}.
      std::size_t j = 0;
      for (; j + 1 < s; ++j) {
        const bool forced = (nbr[p] & bit(old_to_new[j])) != 0;
        if (relation[j] < 2) {
          ++relation[j];
          break;
        }
        relation[j] = forced ? 1 : 0;
      }
      if (j + 1 >= s) break;
    }
  }
  return slice;
}

/// Forget x: all friends of x are now accounted for, so keep only states where x voted
/// according to the choice rule, then project x away.
template <class Value>
DpSlice<Value> dp_forget(const NiceNode& node, const DpSlice<Value>& child, const DpContext& ctx) {
  detail::require_mode<Value>(ctx);
  if (node.kind != NiceKind::forget || node.bag != detail::without(child.bag, node.vertex)) {
    throw InputError("dp_forget needs a forget node and its child's slice");
  }
  const Vertex x = node.vertex;
  DpSlice<Value> slice;
  slice.bag = node.bag;
  const std::size_t s = child.bag.size();
  const auto p = static_cast<std::size_t>(std::find(child.bag.begin(), child.bag.end(), x) - child.bag.begin());
  const KeyLayout old_layout(ctx, child.bag);
  const KeyLayout layout(ctx, slice.bag);
  const auto& alts = ctx.alternatives(x);
  const CandidateId top = ctx.instance().agent(x).top;

  for (const auto& [old_key, value] : child.entries) {
    const auto anterior = old_key.data[old_layout.anterior(p)];
    CandidateId expected = top;
    for (std::size_t k = 0; k < alts.size(); ++k) {
      if (2 * old_key.data[old_layout.influence(p, k)] > anterior) expected = alts[k];
    }
    if (old_key.data[old_layout.vote(p)] != expected.index) continue;

    DpKey key{std::vector<std::uint32_t>(layout.size(), 0)};
    for (std::size_t j = 0; j < s; ++j) {
      if (j == p) continue;
      const auto nj = j < p ? j : j - 1;
      key.data[layout.vote(nj)] = old_key.data[old_layout.vote(j)];
      key.data[layout.after(nj)] = detail::narrow(old_key.data[old_layout.after(j)], p);
      key.data[layout.anterior(nj)] = old_key.data[old_layout.anterior(j)];
      const auto n_alts = ctx.alternatives(child.bag[j]).size();
      for (std::size_t k = 0; k < n_alts; ++k) key.data[layout.influence(nj, k)] = old_key.data[old_layout.influence(j, k)];
    }
    for (std::size_t c = 0; c < layout.score_size; ++c) {
      key.data[layout.score(CandidateId(c))] = old_key.data[old_layout.score(CandidateId(c))];
    }
    detail::store<Value>(slice, std::move(key), value, ctx);
  }
  return slice;
}

/// Join: combine states with identical votes and DAG; the bag's own votes and in-arcs were
/// counted on both sides and are subtracted once.
template <class Value>
DpSlice<Value> dp_join(const NiceNode& node, const DpSlice<Value>& left, const DpSlice<Value>& right, const DpContext& ctx) {
  detail::require_mode<Value>(ctx);
  if (node.kind != NiceKind::join || left.bag != node.bag || right.bag != node.bag) {
    throw InputError("dp_join needs a join node and two slices over its bag");
  }
  const auto& bag = node.bag;
  const std::size_t s = bag.size();
  const KeyLayout layout(ctx, bag);
  const auto nbr = detail::neighbour_masks(ctx.instance().graph(), bag);
  DpSlice<Value> slice;
  slice.bag = bag;

  // Group the right side by (votes, DAG).
  std::unordered_map<DpKey, std::vector<const std::pair<const DpKey, Value>*>, DpKeyHash> groups;
  auto shape_of = [&](const DpKey& key) {
    return DpKey{std::vector<std::uint32_t>(key.data.begin(), key.data.begin() + static_cast<std::ptrdiff_t>(2 * s))};
  };
  for (const auto& entry : right.entries) groups[shape_of(entry.first)].push_back(&entry);

  for (const auto& [lkey, lvalue] : left.entries) {
    auto group = groups.find(shape_of(lkey));
    if (group == groups.end()) continue;
    const std::uint32_t* after = lkey.data.data() + layout.after(0);

    // Contribution of the bag itself, counted on both sides.
    std::vector<std::uint32_t> overlap(layout.size(), 0);
    std::int64_t overlap_margin = 0;
    for (std::size_t i = 0; i < s; ++i) {
      const CandidateId vote(lkey.data[layout.vote(i)]);
      if (layout.score_size) ++overlap[layout.score(vote)];
      overlap_margin += ctx.contribution(bag[i], vote);
      const std::uint32_t in = detail::predecessors(after, s, i) & nbr[i];
      overlap[layout.anterior(i)] = static_cast<std::uint32_t>(std::popcount(in));
      const auto& alts = ctx.alternatives(bag[i]);
      for (std::uint32_t r = in; r; r &= r - 1) {
        const CandidateId v(lkey.data[layout.vote(static_cast<std::size_t>(std::countr_zero(r)))]);
        if (auto it = std::lower_bound(alts.begin(), alts.end(), v); it != alts.end() && *it == v) {
          ++overlap[layout.influence(i, static_cast<std::size_t>(it - alts.begin()))];
        }
      }
    }

    for (const auto* match : group->second) {
      const auto& [rkey, rvalue] = *match;
      DpKey key = lkey;
      for (std::size_t f = 2 * s; f < layout.size(); ++f) key.data[f] = lkey.data[f] + rkey.data[f] - overlap[f];
      Value value{};
      if constexpr (std::is_same_v<Value, bool>) {
        value = true;
      } else {
        value = lvalue + rvalue - overlap_margin;
      }
      detail::store<Value>(slice, std::move(key), value, ctx);
    }
  }
  return slice;
}

/// Runs the transitions bottom-up and returns the root slice.
template <class Value>
DpSlice<Value> run_dp(const NiceTreeDecomposition& nice, const DpContext& ctx, DpStats* stats = nullptr) {
  detail::require_mode<Value>(ctx);
  if (auto problem = validate_nice(ctx.instance().graph(), nice); !problem.empty()) {
    throw InputError("invalid nice tree decomposition: " + problem);
  }
  std::vector<std::optional<DpSlice<Value>>> slices(nice.nodes.size());
  std::size_t live = 0;
  if (stats) stats->entries.assign(nice.nodes.size(), 0);
  auto release = [&](std::size_t i) {
    live -= slices[i]->entries.size();
    slices[i].reset();
  };
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    const auto& node = nice.nodes[i];
    switch (node.kind) {
      case NiceKind::leaf: slices[i] = dp_leaf<Value>(node, ctx); break;
      case NiceKind::insert: slices[i] = dp_insert<Value>(node, *slices[node.children[0]], ctx); break;
      case NiceKind::forget: slices[i] = dp_forget<Value>(node, *slices[node.children[0]], ctx); break;
      case NiceKind::join: slices[i] = dp_join<Value>(node, *slices[node.children[0]], *slices[node.children[1]], ctx); break;
    }
    for (auto c : node.children) release(c);
    live += slices[i]->entries.size();
    if (live > ctx.options().max_table) {
      throw ResourceError("dynamic-programming tables exceeded " + std::to_string(ctx.options().max_table) + " live entries");
    }
#ifndef NDEBUG
    for (const auto& entry : slices[i]->entries) {
      if (!bag_consistent(ctx, slices[i]->bag, entry.first)) throw std::logic_error("inconsistent DP state stored");
    }
#endif
    if (stats) {
      stats->entries[i] = slices[i]->entries.size();
      stats->peak_live = std::max(stats->peak_live, live);
    }
  }
  return std::move(*slices[nice.root]);
}

/// Heuristic (min-fill) nice decomposition of the instance graph.
inline NiceTreeDecomposition default_decomposition(const Instance& inst) { return make_nice(heuristic_td(inst.graph())); }

/// Every achievable score function of an unweighted instance.
inline AchievableSet achievable_scores_dp(const Instance& inst, const NiceTreeDecomposition& nice, const DpOptions& options = {},
                                          DpStats* stats = nullptr) {
  if (inst.is_weighted()) throw UnsupportedError("achievable-scores DP supports unweighted instances only");
  const DpContext ctx(inst, std::nullopt, options);
  const auto root = run_dp<bool>(nice, ctx, stats);
  const KeyLayout layout(ctx, root.bag);
  AchievableSet result;
  for (const auto& [key, present] : root.entries) {
    std::vector<std::int64_t> values(inst.num_candidates());
    for (std::size_t c = 0; c < values.size(); ++c) values[c] = key.data[layout.score(CandidateId(c))];
    result.insert(ScoreFunction(std::move(values)));
  }
  return result;
}

inline AchievableSet achievable_scores_dp(const Instance& inst, const DpOptions& options = {}) {
  return achievable_scores_dp(inst, default_decomposition(inst), options);
}

inline bool possible_winner_dp(const Instance& inst, const NiceTreeDecomposition& nice, CandidateId c, const DpOptions& options = {}) {
  if (c.index >= inst.num_candidates()) throw InputError("unknown candidate");
  const auto scores = achievable_scores_dp(inst, nice, options);
  return std::any_of(scores.begin(), scores.end(), [&](const ScoreFunction& s) { return is_cowinner(s, c); });
}

/// Maximum over voting orders of weighted score(lead) - score(trail).
inline std::int64_t max_margin_dp(const Instance& inst, const NiceTreeDecomposition& nice, CandidateId lead, CandidateId trail,
                                  const DpOptions& options = {}, DpStats* stats = nullptr) {
  const DpContext ctx(inst, MarginQuery{lead, trail}, options);
  const auto root = run_dp<std::int64_t>(nice, ctx, stats);
  if (root.entries.size() != 1) throw std::logic_error("margin DP root must hold exactly one entry");
  return root.entries.begin()->second;
}

struct NecessaryDecision {
  bool holds = false;
  std::optional<CandidateId> beaten_by;  // first candidate that can outscore c
};

/// c is a necessary winner iff no other candidate can get a strictly positive margin over it.
inline NecessaryDecision necessary_winner_dp(const Instance& inst, const NiceTreeDecomposition& nice, CandidateId c,
                                             const DpOptions& options = {}) {
  if (c.index >= inst.num_candidates()) throw InputError("unknown candidate");
  for (std::size_t d = 0; d < inst.num_candidates(); ++d) {
    if (d == c.index) continue;
    if (max_margin_dp(inst, nice, CandidateId(d), c, options) > 0) return {false, CandidateId(d)};
  }
  return {true, std::nullopt};
}

}  // namespace socialpoll
