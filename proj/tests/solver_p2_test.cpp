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

using testing::load;
using testing::node;

struct Pipeline {
  Game g;
  BeliefMdp h;
  SolveReport r;
  AttackerMdp m;
  SafetyResult p2;
};

Pipeline run(Game g) {
  BeliefMdp h = build_belief_mdp(g);
  SolveReport r = solve_p1(h);
  AttackerMdp m = build_attacker_mdp(g, h, r);
  SafetyResult p2 = solve_p2_safety(m);
  return {std::move(g), std::move(h), std::move(r), std::move(m), std::move(p2)};
}

std::set<NodeId> targets(const AttackChoice& c) {
  std::set<NodeId> out;
  for (const auto& o : c.outcomes)
    if (o.target) out.insert(*o.target);
  return out;
}

TEST(SolverP2Test, Fig4WinningRegionOfP1) {
  const auto p = run(load("fig4.game").game);
  const auto& [g, h, r, m, p2] = p;
  EXPECT_EQ(r.win1, (std::vector<NodeId>{node(g, h, "s0", {"s0"}), node(g, h, "s0", {"s0", "s1"}),
                                        node(g, h, "s1", {"s0", "s1"}), node(g, h, "s1", {"s1"})}));
  EXPECT_TRUE(std::equal(m.nodes().begin(), m.nodes().end(), r.win1.begin(), r.win1.end()));
}

TEST(SolverP2Test, Fig4AttackerTransitionsFromInitial) {
  const auto p = run(load("fig4.game").game);
  const auto& [g, h, r, m, p2] = p;
  const NodeId q0 = h.initial_node();
  const AttackChoice* b0 = m.choice(q0, *g.find_attack("beta0"));
  const AttackChoice* b1 = m.choice(q0, *g.find_attack("beta1"));
  ASSERT_TRUE(b0 && b1);
  EXPECT_EQ(targets(*b0), (std::set<NodeId>{node(g, h, "s0", {"s0", "s1"}), node(g, h, "s1", {"s0", "s1"})}));
  EXPECT_EQ(targets(*b1), (std::set<NodeId>{node(g, h, "s0", {"s0"}), node(g, h, "s1", {"s1"})}));
  EXPECT_FALSE(b0->completes_task());
  EXPECT_TRUE(m.safe(q0));
}

TEST(SolverP2Test, Fig4WinningRegionOfP2AndGap) {
  const auto p = run(load("fig4.game").game);
  const auto& [g, h, r, m, p2] = p;
  const std::vector<NodeId> red{node(g, h, "s0", {"s0"}), node(g, h, "s0", {"s0", "s1"}),
                                node(g, h, "s1", {"s0", "s1"})};
  EXPECT_EQ(p2.win2, red);
  const AttackId beta0 = *g.find_attack("beta0");
  for (NodeId q : red) EXPECT_EQ(p2.strategy.at(q), beta0);
  const auto gap = deception_gap(r, p2);
  ASSERT_EQ(gap.size(), 3u);
  for (std::size_t i = 0; i < gap.size(); ++i) EXPECT_EQ(gap[i], (GapEntry{red[i], beta0}));
}

TEST(SolverP2Test, Fig4CertificatesHold) {
  const auto p = run(load("fig4.game").game);
  EXPECT_TRUE(check_attacker_closure(p.g, p.h, p.r, p.m));
  EXPECT_TRUE(check_safety_certificate(p.m, p.p2));
}

TEST(SolverP2Test, Fig1HasNoGap) {
  const auto p = run(load("fig1.game").game);
  EXPECT_TRUE(p.p2.win2.empty());
  EXPECT_TRUE(deception_gap(p.r, p.p2).empty());
}

TEST(SolverP2Test, EmptyWin1IsAnError) {
  const Game g = load("fig1_nosense.game").game;
  const BeliefMdp h = build_belief_mdp(g);
  try {
    build_attacker_mdp(g, h, solve_p1(h));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyWin1);
  }
}

TEST(SolverP2Test, BrokenSafetyResultsAreRejected) {
  const auto p = run(load("fig4.game").game);
  SafetyResult shrunk = p.p2;
  shrunk.win2.pop_back();
  shrunk.strategy.choice.erase(p.p2.win2.back());
  EXPECT_FALSE(check_safety_certificate(p.m, shrunk));

  SafetyResult wrong = p.p2;
  wrong.strategy.choice[p.p2.win2.front()] = *p.g.find_attack("beta1");
  EXPECT_FALSE(check_safety_certificate(p.m, wrong));

  SafetyResult grown = p.p2;
  const NodeId extra = node(p.g, p.h, "s1", {"s1"});
  grown.win2.push_back(extra);
  grown.strategy.choice[extra] = *p.g.find_attack("beta0");
  EXPECT_FALSE(check_safety_certificate(p.m, grown));
}

// P2 wins almost surely at q under a memoryless attack choice exactly when
// the task-complete event cannot be reached from q in the induced graph.
std::vector<NodeId> safe_under(const AttackerMdp& m, const std::map<NodeId, AttackId>& pol) {
  std::vector<NodeId> nodes(m.nodes().begin(), m.nodes().end());
  std::map<NodeId, bool> bad;
  for (NodeId q : nodes) bad[q] = !m.safe(q) || m.choice(q, pol.at(q))->completes_task();
  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId q : nodes) {
      if (bad[q]) continue;
      for (const auto& o : m.choice(q, pol.at(q))->outcomes)
        if (o.target && bad[*o.target]) {
          bad[q] = changed = true;
          break;
        }
    }
  }
  std::vector<NodeId> out;
  for (NodeId q : nodes)
    if (!bad[q]) out.push_back(q);
  return out;
}

std::vector<NodeId> union_over_policies(const AttackerMdp& m) {
  std::vector<NodeId> nodes(m.nodes().begin(), m.nodes().end());
  std::set<NodeId> acc;
  std::map<NodeId, AttackId> pol;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nodes.size()) {
      for (NodeId q : safe_under(m, pol)) acc.insert(q);
      return;
    }
    for (const auto& c : m.choices(nodes[i])) {
      pol[nodes[i]] = c.attack;
      rec(i + 1);
    }
  };
  rec(0);
  return {acc.begin(), acc.end()};
}

double policy_count(const AttackerMdp& m) {
  double n = 1;
  for (NodeId q : m.nodes()) n *= static_cast<double>(m.choices(q).size());
  return n;
}

TEST(SolverP2Test, ExhaustivePoliciesOnFig1AndFig4) {
  for (const char* name : {"fig1.game", "fig4.game"}) {
    const auto p = run(load(name).game);
    std::map<NodeId, AttackId> pol;
    // Goal-state nodes complete the task under every attack, so only the
    // safe nodes are enumerated.
    std::vector<NodeId> safe_nodes;
    for (NodeId q : p.m.nodes())
      if (p.m.safe(q)) safe_nodes.push_back(q);
    std::set<NodeId> acc;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == safe_nodes.size()) {
        auto full = pol;
        for (NodeId q : p.m.nodes())
          if (!p.m.safe(q)) full[q] = p.m.choices(q).front().attack;
        for (NodeId q : safe_under(p.m, full)) acc.insert(q);
        return;
      }
      for (const auto& c : p.m.choices(safe_nodes[i])) {
        pol[safe_nodes[i]] = c.attack;
        rec(i + 1);
      }
    };
    rec(0);
    EXPECT_EQ(std::vector<NodeId>(acc.begin(), acc.end()), p.p2.win2) << name;
  }
}

class SolverP2Properties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SolverP2Properties, CertificatesAndPolicyEnumeration) {
  const Game g = generate_game({4, 2, 2, 2, 3, 2, 0.25, GetParam()});
  const BeliefMdp h = build_belief_mdp(g);
  const SolveReport r = solve_p1(h);
  if (r.win1.empty()) GTEST_SKIP() << "P1 wins nowhere";
  const AttackerMdp m = build_attacker_mdp(g, h, r);
  const SafetyResult p2 = solve_p2_safety(m);
  EXPECT_TRUE(check_attacker_closure(g, h, r, m));
  EXPECT_TRUE(check_safety_certificate(m, p2));
  for (NodeId q : p2.win2) EXPECT_TRUE(r.winning(q));
  if (policy_count(m) <= 2e5) { EXPECT_EQ(union_over_policies(m), p2.win2); }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SolverP2Properties, ::testing::Range<std::uint64_t>(0, 60));

}  // namespace
}  // namespace sagame
