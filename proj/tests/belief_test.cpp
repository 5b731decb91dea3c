// Copyright 2026 The sagame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sagame {
namespace {

using testing::act;
using testing::load;
using testing::node;
using testing::states;

const Choice& choice_at(const BeliefMdp& h, NodeId q, JointAction a) {
  const Choice* c = h.choice(q, a);
  if (!c) throw Error(ErrorCode::InvalidArgument, "action not offered");
  return *c;
}

std::set<NodeId> targets(const Choice& c) {
  std::set<NodeId> out;
  for (const auto& s : c.successors) out.insert(s.target);
  return out;
}

TEST(BeliefMdpTest, Fig1InitialUnderA0Sigma0WithBeta0) {
  const Game g = load("fig1.game").game;
  const BeliefMdp h = build_belief_mdp(g);
  const NodeId q0 = h.initial_node();
  EXPECT_EQ(q0, node(g, h, "s0", {"s0"}));
  const AttackId beta0 = *g.find_attack("beta0");
  std::set<NodeId> via_beta0;
  for (const auto& s : choice_at(h, q0, act(g, "a0", "sigma0")).successors)
    if (std::find(s.attacks.begin(), s.attacks.end(), beta0) != s.attacks.end()) via_beta0.insert(s.target);
  EXPECT_EQ(via_beta0, (std::set<NodeId>{node(g, h, "s0", {"s0"}), node(g, h, "s1", {"s1", "s2"}),
                                         node(g, h, "s2", {"s1", "s2"})}));
}

TEST(BeliefMdpTest, Fig1SureWinFromS1) {
  const Game g = load("fig1.game").game;
  const BeliefMdp h = build_belief_mdp(g);
  const NodeId q = node(g, h, "s1", {"s1", "s2"});
  for (const char* sigma : {"sigma0", "sigma1", "sigma2"})
    EXPECT_EQ(targets(choice_at(h, q, act(g, "a0", sigma))), std::set<NodeId>{h.final_node()});
}

TEST(BeliefMdpTest, Fig1Sigma1RevealsS1UnderBeta0) {
  const Game g = load("fig1.game").game;
  const BeliefMdp h = build_belief_mdp(g);
  EXPECT_TRUE(targets(choice_at(h, h.initial_node(), act(g, "a0", "sigma1"))).count(node(g, h, "s1", {"s1"})));
}

TEST(BeliefMdpTest, Fig1EquivalenceClass) {
  const Game g = load("fig1.game").game;
  const BeliefMdp h = build_belief_mdp(g);
  const NodeId q = node(g, h, "s1", {"s1", "s2"});
  EXPECT_EQ(equivalence_class(h, q), (std::vector<NodeId>{q, node(g, h, "s2", {"s1", "s2"})}));
  const NodeId single = node(g, h, "s1", {"s1"});
  EXPECT_EQ(equivalence_class(h, single), std::vector<NodeId>{single});
  try {
    equivalence_class(h, h.final_node());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FinalHasNoClass);
  }
}

TEST(BeliefMdpTest, FinalNodeIsAbsorbing) {
  const BeliefMdp h = build_belief_mdp(load("fig1.game").game);
  EXPECT_TRUE(h.node(h.final_node()).is_final());
  EXPECT_TRUE(h.choices(h.final_node()).empty());
}

TEST(BeliefMdpTest, ActionsNeedToBeEnabledOnTheWholeBelief) {
  const Game g = load("fig1.game").game;
  const BeliefMdp h = build_belief_mdp(g);
  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i)
    for (const Choice& c : h.choices(NodeId(i)))
      EXPECT_TRUE(enabled_on(g, h.node(NodeId(i)).belief, c.action.action));
  // a2 is disabled at s1 and s2.
  EXPECT_EQ(h.choice(node(g, h, "s0", {"s0", "s1"}), act(g, "a2", "sigma0")), nullptr);
}

// Structural invariants plus attack-outcome completeness re-derived directly
// from the game.
class BeliefProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(BeliefProperties, StructureAndCompleteness) {
  const Game g = generate_game({5, 2, 3, 2, 3, 3, 0.25, GetParam()});
  const BeliefMdp h = build_belief_mdp(g);
  std::set<StateSet> beliefs;
  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i) {
    const NodeId q(i);
    const BeliefNode& n = h.node(q);
    ASSERT_TRUE(n.belief.contains(n.state));
    beliefs.insert(n.belief);
    for (StateId t : n.belief) EXPECT_TRUE(h.find(t, n.belief).has_value()) << "closure";
    for (NodeId p : h.class_members(h.class_of(q))) EXPECT_EQ(h.node(p).belief, n.belief);

    for (std::size_t ai = 0; ai < g.num_actions(); ++ai) {
      const ActionId a(ai);
      for (std::size_t qi = 0; qi < g.num_queries(); ++qi) {
        const JointAction ja{a, QueryId(qi)};
        const Choice* c = h.choice(q, ja);
        ASSERT_EQ(c != nullptr, enabled_on(g, n.belief, a));
        if (!c) continue;
        ASSERT_FALSE(c->successors.empty());
        const StateSet& post = post_state(g, n.state, a);
        const StateSet reach = post_belief(g, n.belief, a);
        std::set<NodeId> expected;
        const bool all_goal = g.is_goal(n.state) || post.is_subset_of(g.goal());
        if (all_goal || post.intersects(g.goal())) expected.insert(h.final_node());
        if (!all_goal)
          for (StateId next : post) {
            if (g.is_goal(next)) continue;
            for (AttackId b : g.enabled_attacks(next)) {
              auto t = h.find(next, set_intersection(reach, get_observation(g, next, ja.query, b)));
              ASSERT_TRUE(t.has_value());
              expected.insert(*t);
            }
          }
        EXPECT_EQ(targets(*c), expected);
        for (const auto& s : c->successors) {
          if (h.is_final(s.target)) continue;
          EXPECT_TRUE(h.node(s.target).belief.is_subset_of(reach));
          EXPECT_TRUE(h.node(s.target).belief.contains(h.node(s.target).state));
        }
      }
    }
  }
  EXPECT_EQ(beliefs.size(), h.num_classes());
}

TEST_P(BeliefProperties, ConstructionIsDeterministic) {
  const GeneratorParams p{5, 2, 3, 2, 3, 3, 0.25, GetParam()};
  const BeliefMdp a = build_belief_mdp(generate_game(p));
  const BeliefMdp b = build_belief_mdp(generate_game(p));
  ASSERT_EQ(a.num_nodes(), b.num_nodes());
  for (std::size_t i = 0; i + 1 < a.num_nodes(); ++i) {
    EXPECT_EQ(a.node(NodeId(i)), b.node(NodeId(i)));
    ASSERT_EQ(a.choices(NodeId(i)).size(), b.choices(NodeId(i)).size());
    for (std::size_t k = 0; k < a.choices(NodeId(i)).size(); ++k) {
      const auto& x = a.choices(NodeId(i))[k];
      const auto& y = b.choices(NodeId(i))[k];
      EXPECT_EQ(x.action, y.action);
      EXPECT_EQ(targets(x), targets(y));
    }
    if (i > 0) {
      const auto& u = a.node(NodeId(i - 1));
      const auto& v = a.node(NodeId(i));
      EXPECT_TRUE(std::pair(u.state, u.belief) < std::pair(v.state, v.belief));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, BeliefProperties, ::testing::Range<std::uint64_t>(0, 40));

}  // namespace
}  // namespace sagame
