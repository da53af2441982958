#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace socialpoll;
using namespace testing_support;

namespace {

std::vector<std::int64_t> scores_of(const SimulationResult& r) { return r.scores.values(); }

TEST(Choice, EmptyPriorGivesTop) {
  const Instance inst("c", {"a", "b"}, {two(0, 1)}, {}, CandidateId(0));
  EXPECT_EQ(choice(0, inst, {}), CandidateId(0));
}

TEST(Choice, SingleFriendMajorityOverridesTop) {
  // P = {b, c}, top b; the only voted friend chose c.
  const Instance inst("c", {"a", "b", "c"}, {two(1, 2), one(2)}, {{0, 1}}, CandidateId(0));
  const std::vector<std::pair<AgentId, CandidateId>> prior{{1, CandidateId(2)}};
  EXPECT_EQ(choice(0, inst, prior), CandidateId(2));
}

TEST(Choice, SplitPriorFallsBackToTop) {
  // P = {a, c}, top a; friends voted c and b: no strict majority.
  const Instance inst("c", {"a", "b", "c"}, {two(0, 2), one(2), one(1)}, {{0, 1}, {0, 2}}, CandidateId(0));
  const std::vector<std::pair<AgentId, CandidateId>> prior{{1, CandidateId(2)}, {2, CandidateId(1)}};
  EXPECT_EQ(choice(0, inst, prior), CandidateId(0));
}

TEST(Choice, RejectsUnknownAgentAndNonFriends) {
  const auto inst = p3_gadget();
  EXPECT_THROW(choice(7, inst, {}), InputError);
  const std::vector<std::pair<AgentId, CandidateId>> prior{{2, CandidateId(1)}};
  EXPECT_THROW(choice(0, inst, prior), InputError);
}

TEST(Choice, MajorityCountsAgentsNotWeights) {
  // Agent 0 (a,b) with friends 1 (heavy, votes b) and 2 (light, votes a): one each, so top a.
  const Instance inst("w", {"a", "b"}, {two(0, 1), two(1, 0, 100), two(0, 1)}, {{0, 1}, {0, 2}}, CandidateId(0));
  const std::vector<std::pair<AgentId, CandidateId>> prior{{1, CandidateId(1)}, {2, CandidateId(0)}};
  EXPECT_EQ(choice(0, inst, prior), CandidateId(0));
}

TEST(SimulateOrder, GadgetIdentityOrder) {
  const auto inst = p3_gadget();
  const auto r = simulate_order(inst, VotingOrder{{0, 1, 2}});
  EXPECT_EQ(r.outcome.votes, (std::vector<CandidateId>{CandidateId(2), CandidateId(2), CandidateId(2)}));
  EXPECT_EQ(scores_of(r), (std::vector<std::int64_t>{0, 0, 7}));
}

TEST(SimulateOrder, GadgetMiddleFirst) {
  const auto inst = p3_gadget();
  const auto r = simulate_order(inst, VotingOrder{{1, 0, 2}});
  EXPECT_EQ(r.outcome.votes, (std::vector<CandidateId>{CandidateId(2), CandidateId(0), CandidateId(1)}));
  EXPECT_EQ(scores_of(r), (std::vector<std::int64_t>{1, 5, 1}));
}

TEST(SimulateOrder, IsolatedAgentVotesTop) {
  const auto r = simulate_order(single_agent(), VotingOrder{{0}});
  EXPECT_EQ(scores_of(r), (std::vector<std::int64_t>{1, 0}));
}

TEST(SimulateOrder, RejectsMalformedPermutations) {
  const auto inst = p3_gadget();
  EXPECT_THROW(simulate_order(inst, VotingOrder{{0, 1}}), InputError);
  EXPECT_THROW(simulate_order(inst, VotingOrder{{0, 1, 1}}), InputError);
  EXPECT_THROW(simulate_order(inst, VotingOrder{{0, 1, 3}}), InputError);
}

TEST(SimulateOrder, AgreesWithReferenceOnEveryOrder) {
  const auto inst = p3_gadget();
  std::vector<std::size_t> order{0, 1, 2};
  do {
    EXPECT_EQ(scores_of(simulate_order(inst, VotingOrder{order})), reference_scores(inst, order));
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(OrientationOf, FollowsOrder) {
  const auto inst = p3_gadget();
  EXPECT_EQ(orientation_of(inst, VotingOrder{{0, 1, 2}}).arcs, (std::vector<Arc>{{0, 1}, {1, 2}}));
  EXPECT_EQ(orientation_of(inst, VotingOrder{{2, 0, 1}}).arcs, (std::vector<Arc>{{0, 1}, {2, 1}}));
  const Instance edgeless("e", {"a"}, {one(0), one(0)}, {}, CandidateId(0));
  EXPECT_TRUE(orientation_of(edgeless, VotingOrder{{1, 0}}).arcs.empty());
}

TEST(SimulateOrientation, MatchesOrders) {
  const auto inst = p3_gadget();
  EXPECT_EQ(scores_of(simulate_orientation(inst, Orientation{{{0, 1}, {1, 2}}})), (std::vector<std::int64_t>{0, 0, 7}));
  const auto r = simulate_orientation(inst, Orientation{{{1, 0}, {2, 1}}});
  EXPECT_EQ(r.outcome.votes, (std::vector<CandidateId>{CandidateId(2), CandidateId(0), CandidateId(1)}));
  EXPECT_EQ(scores_of(r), (std::vector<std::int64_t>{1, 5, 1}));
}

TEST(SimulateOrientation, RejectsCyclesAndPartialCovers) {
  const Instance tri("t", {"a", "b"}, {two(0, 1), two(0, 1), two(1, 0)}, {{0, 1}, {1, 2}, {0, 2}}, CandidateId(0));
  EXPECT_THROW(simulate_orientation(tri, Orientation{{{0, 1}, {1, 2}, {2, 0}}}), InputError);
  EXPECT_THROW(simulate_orientation(tri, Orientation{{{0, 1}}}), InputError);
}

TEST(Winners, CoWinnerSemantics) {
  EXPECT_EQ(winners(ScoreFunction({2, 0})), (std::vector<CandidateId>{CandidateId(0)}));
  EXPECT_EQ(winners(ScoreFunction({1, 1, 0})), (std::vector<CandidateId>{CandidateId(0), CandidateId(1)}));
  EXPECT_EQ(winners(ScoreFunction({0, 0, 7})), (std::vector<CandidateId>{CandidateId(2)}));
  EXPECT_TRUE(is_cowinner(ScoreFunction({1, 1, 0}), CandidateId(1)));
  EXPECT_FALSE(is_cowinner(ScoreFunction({1, 1, 0}), CandidateId(2)));
}

TEST(InstanceUnion, FamiliesAndIdentity) {
  const auto l1r1 = instance_union(gen_family(FamilyKind::L, 1), gen_family(FamilyKind::R, 1));
  EXPECT_EQ(l1r1.num_agents(), 2u);
  EXPECT_EQ(l1r1.graph().num_edges(), 0u);
  EXPECT_EQ(scores_of(simulate_order(l1r1, VotingOrder{{1, 0}})), (std::vector<std::int64_t>{1, 1}));

  const auto l2r3 = instance_union(gen_family(FamilyKind::L, 2), gen_family(FamilyKind::R, 3));
  EXPECT_EQ(l2r3.num_agents(), 5u);
  EXPECT_EQ(connected_components(l2r3.graph()).size(), 2u);
  EXPECT_EQ(all_orders_scores(l2r3), (std::set<std::vector<std::int64_t>>{{2, 3}}));

  const Instance empty("", {"a", "b", "c"}, {}, {}, CandidateId(0));
  EXPECT_EQ(instance_union(p3_gadget(), empty), p3_gadget());
}

TEST(InstanceUnion, WarnsOnConflictingDistinguished) {
  const Instance first("f", {"a", "b"}, {one(0)}, {}, CandidateId(0));
  const Instance second("s", {"b", "z"}, {one(1)}, {}, CandidateId(0));
  std::vector<std::string> warnings;
  const auto u = instance_union(first, second, &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_EQ(u.label(u.distinguished()), "a");
  EXPECT_EQ(u.candidate_labels(), (std::vector<std::string>{"a", "b", "z"}));
  EXPECT_EQ(u.agent(1).top, u.candidate("z"));
}

TEST(InstanceValidation, RejectsBrokenInstances) {
  EXPECT_THROW(Instance("x", {"a"}, {one(0), one(0)}, {{0, 0}}, CandidateId(0)), InputError);
  EXPECT_THROW(Instance("x", {"a"}, {one(0), one(0)}, {{0, 1}, {1, 0}}, CandidateId(0)), InputError);
  EXPECT_THROW(Instance("x", {"a"}, {one(0)}, {{0, 1}}, CandidateId(0)), InputError);
  EXPECT_THROW(Instance("x", {"a", "a"}, {one(0)}, {}, CandidateId(0)), InputError);
  EXPECT_THROW(Instance("x", {"a"}, {one(0)}, {}, CandidateId(3)), InputError);
  AgentPrefs bad_top = two(0, 1);
  bad_top.top = CandidateId(2);
  EXPECT_THROW(Instance("x", {"a", "b", "c"}, {bad_top}, {}, CandidateId(0)), InputError);
  EXPECT_THROW(Instance("x", {"a"}, {two(0, 0)}, {}, CandidateId(0)), InputError);
  EXPECT_THROW(Instance("x", {"a", "b"}, {two(0, 1, 0)}, {}, CandidateId(0)), InputError);
}

TEST(InstanceValidation, LintReportsNonUniformPreferredSets) {
  EXPECT_TRUE(lint(p3_gadget()).empty());
  const Instance mixed("m", {"a", "b"}, {two(0, 1), one(1)}, {}, CandidateId(0));
  EXPECT_EQ(lint(mixed).size(), 1u);
}

// Random trials of the model's invariants: orientation invariance, vote legality,
// score conservation and component independence.
TEST(ModelProperties, RandomizedInvariants) {
  std::mt19937_64 rng(20261015);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto inst = random_instance(rng, 8, 4, trial % 2 == 0, 8, 1 + rng() % 3);
    const auto first = random_order(rng, inst.num_agents());
    const auto orientation = orientation_of(inst, first);
    const auto second = random_extension(rng, inst.num_agents(), orientation);
    ASSERT_EQ(orientation_of(inst, second), orientation);
    const auto r1 = simulate_order(inst, first);
    const auto r2 = simulate_order(inst, second);
    ASSERT_EQ(r1.outcome, r2.outcome);
    ASSERT_EQ(r1.scores, simulate_orientation(inst, orientation).scores);
    ASSERT_EQ(r1.scores.total(), inst.total_weight());
    for (AgentId x = 0; x < inst.num_agents(); ++x) ASSERT_TRUE(inst.agent(x).prefers(r1.outcome.votes[x]));
    ASSERT_EQ(r1.scores.values(), reference_scores(inst, first.agents));
  }
}

TEST(ModelProperties, ComponentIndependence) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng, 8, 3, false, 8);
    const auto components = connected_components(inst.graph());
    if (components.size() < 2) continue;
    auto order = random_order(rng, inst.num_agents());
    const auto before = simulate_order(inst, order).outcome;
    // Shuffle the positions held by the first component only.
    const auto& comp = components.front();
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < order.agents.size(); ++i) {
      if (std::binary_search(comp.begin(), comp.end(), order.agents[i])) slots.push_back(i);
    }
    std::vector<AgentId> members;
    for (auto s : slots) members.push_back(order.agents[s]);
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t k = 0; k < slots.size(); ++k) order.agents[slots[k]] = members[k];
    const auto after = simulate_order(inst, order).outcome;
    for (std::size_t c = 1; c < components.size(); ++c) {
      for (auto x : components[c]) ASSERT_EQ(before.votes[x], after.votes[x]);
    }
  }
}

TEST(FormatScores, RendersLabels) { EXPECT_EQ(format_scores(two_agents(), ScoreFunction({2, 0})), "a=2 b=0"); }

}  // namespace
