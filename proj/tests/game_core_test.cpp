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

using testing::game_from_text;
using testing::load;
using testing::states;

TEST(StateSetTest, KeepsMembersSortedAndUnique) {
  StateSet s{StateId(3), StateId(1), StateId(3)};
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.members()[0], StateId(1));
  EXPECT_EQ(s.members()[1], StateId(3));
  s.insert(StateId(2));
  s.insert(StateId(2));
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(StateSet{StateId(1)}.is_subset_of(s));
  EXPECT_EQ(set_intersection(s, StateSet{StateId(2), StateId(9)}), StateSet{StateId(2)});
  EXPECT_EQ(set_difference(StateSet::universe(4), s), (StateSet{StateId(0)}));
}

TEST(GameCoreTest, Fig1ValidatesWithDeclaredCounts) {
  auto vg = load("fig1.game");
  const Game& g = vg.game;
  EXPECT_EQ(g.num_states(), 6u);
  EXPECT_EQ(g.num_actions(), 3u);
  EXPECT_EQ(g.num_sensors(), 4u);
  EXPECT_EQ(g.num_queries(), 3u);
  EXPECT_EQ(g.num_attacks(), 4u);
  EXPECT_TRUE(vg.warnings.empty());
  EXPECT_EQ(g.initial(), *g.find_state("s0"));
  EXPECT_EQ(g.goal(), states(g, {"s4"}));
}

TEST(GameCoreTest, DanglingSuccessorIsUnknownId) {
  const char* text =
      "[states]\ns0 initial goal\n[actions]\na0\n[transitions]\ns0 a0 -> s9\n"
      "[sensors]\n[queries]\nq :\n[attacks]\nnone :\n";
  try {
    validate_game(parse_spec(text));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_TRUE(e.has(ErrorCode::UnknownId));
    EXPECT_NE(e.diagnostics().front().message.find("s0 a0"), std::string::npos);
    EXPECT_NE(e.diagnostics().front().message.find("s9"), std::string::npos);
    EXPECT_EQ(e.diagnostics().front().loc.line, 6);
  }
}

TEST(GameCoreTest, CollectsEveryViolation) {
  const char* text =
      "[states]\ns0 initial\ns1\ns1\n[actions]\na0\n[transitions]\ns0 a0 -> s0\n"
      "[sensors]\nc0 : s0\n[queries]\nq : c0 c7\n[attacks]\nb : c0 @ s1\n";
  try {
    validate_game(parse_spec(text));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.has(ErrorCode::DuplicateName));
    EXPECT_TRUE(e.has(ErrorCode::UnknownId));
    EXPECT_TRUE(e.has(ErrorCode::NoEnabledAction));
    EXPECT_TRUE(e.has(ErrorCode::EmptyAttackSet));
    EXPECT_GE(e.diagnostics().size(), 4u);
  }
}

TEST(GameCoreTest, EmptySupportAndBadWeightsAreRejected) {
  const char* text =
      "[states]\ns0 initial goal\n[actions]\na0 a1 a2\n[transitions]\ns0 a0 ->\ns0 a1 -> s0:0\ns0 a2 -> s0:1 s0:2\n"
      "[sensors]\n[queries]\nq :\n[attacks]\nnone :\n";
  try {
    validate_game(parse_spec(text));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.has(ErrorCode::EmptySupport));
    EXPECT_TRUE(e.has(ErrorCode::InvalidWeight));
    EXPECT_TRUE(e.has(ErrorCode::DuplicateDefinition));
  }
}

TEST(GameCoreTest, EmptyCoverageOnlyWarns) {
  auto doc = parse_spec_file(testing::game_path("fig1.game"));
  for (auto& s : doc.sensors)
    if (s.name == "g3") s.coverage.clear();
  auto vg = validate_game(doc);
  ASSERT_EQ(vg.warnings.size(), 1u);
  EXPECT_EQ(vg.warnings.front().code, ErrorCode::EmptyCoverage);
}

TEST(GameCoreTest, PostOperators) {
  const Game g = load("fig1.game").game;
  const ActionId a0 = *g.find_action("a0");
  EXPECT_EQ(post_state(g, *g.find_state("s0"), a0), states(g, {"s0", "s1", "s2"}));
  EXPECT_EQ(post_state(g, *g.find_state("s1"), a0), states(g, {"s4"}));
  EXPECT_EQ(post_state(g, *g.find_state("s4"), a0), states(g, {"s4"}));
  EXPECT_EQ(post_belief(g, states(g, {"s0"}), a0), states(g, {"s0", "s1", "s2"}));

  const Game g4 = load("fig4.game").game;
  EXPECT_EQ(post_belief(g4, states(g4, {"s0", "s1"}), *g4.find_action("a0")), states(g4, {"s0", "s1"}));
}

TEST(GameCoreTest, DisabledActionIsReported) {
  const Game g = load("fig1.game").game;
  const ActionId a2 = *g.find_action("a2");
  try {
    post_state(g, *g.find_state("s1"), a2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DisabledAction);
  }
  try {
    post_belief(g, states(g, {"s0", "s1", "s2"}), a2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DisabledAction);
    EXPECT_NE(std::string(e.what()).find("s1"), std::string::npos);
  }
  EXPECT_FALSE(enabled_on(g, states(g, {"s0", "s1"}), a2));
}

TEST(GameCoreTest, Fig1Observations) {
  const Game g = load("fig1.game").game;
  const StateId s1 = *g.find_state("s1");
  const QueryId sigma0 = *g.find_query("sigma0");
  EXPECT_EQ(get_observation(g, s1, sigma0, *g.find_attack("beta0")), states(g, {"s1", "s2"}));
  EXPECT_EQ(get_observation(g, s1, sigma0, *g.find_attack("none")), states(g, {"s1"}));
  EXPECT_EQ(sensor_readings(g, s1, sigma0, *g.find_attack("beta0")), "?T");
}

TEST(GameCoreTest, FullyJammedQueryRevealsNothing) {
  const Game g = game_from_text(
      "[states]\ns0 initial\ns1 goal\n[actions]\na\n[transitions]\ns0 a -> s1\ns1 a -> s1\n"
      "[sensors]\nc0 : s0\nc1 : s1\n[queries]\nq : c0\n[attacks]\nall : c0 c1\n");
  EXPECT_EQ(get_observation(g, StateId(0), QueryId(0), AttackId(0)), g.all_states());
}

TEST(GameCoreTest, Fig4ObservationsUnderSigma0) {
  const Game g = load("fig4.game").game;
  const QueryId sigma0 = *g.find_query("sigma0");
  std::set<Observation> seen;
  for (StateId s : g.all_states())
    for (std::size_t b = 0; b < g.num_attacks(); ++b) seen.insert(get_observation(g, s, sigma0, AttackId(b)));
  EXPECT_TRUE(seen.count(states(g, {"s0", "s1"})));
  EXPECT_TRUE(seen.count(states(g, {"s0", "s2", "s3"})));
  EXPECT_TRUE(seen.count(states(g, {"s1"})));
}

TEST(GameCoreTest, BlindQueryObservations) {
  const Game g = load("fig1_nosense.game").game;
  const auto obs = enumerate_observations(g);
  EXPECT_EQ(obs, (std::set<Observation>{g.all_states(), states(g, {"s0"})}));
}

TEST(GameCoreTest, ObservationCountBound) {
  for (const char* name : {"fig1.game", "fig4.game"}) {
    const Game g = load(name).game;
    EXPECT_LE(enumerate_observations(g).size(), g.num_states() * g.num_queries() * g.num_attacks() + 1);
  }
}

// Properties of the observation function over random games.
class ObservationProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ObservationProperties, HoldOnRandomGames) {
  GeneratorParams p{5, 2, 4, 3, 4, 2, 0.25, GetParam()};
  const Game g = generate_game(p);
  auto sensors_of = [](std::span<const SensorId> v) { return std::set<SensorId>(v.begin(), v.end()); };
  auto subset = [](const std::set<SensorId>& a, const std::set<SensorId>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (StateId s : g.all_states()) {
    for (std::size_t qi = 0; qi < g.num_queries(); ++qi) {
      const QueryId q(qi);
      for (std::size_t bi = 0; bi < g.num_attacks(); ++bi) {
        const AttackId b(bi);
        const Observation o = get_observation(g, s, q, b);
        EXPECT_TRUE(o.contains(s));
        for (StateId t : g.all_states())
          EXPECT_EQ(o.contains(t), get_observation(g, t, q, b) == o);
        for (std::size_t bj = 0; bj < g.num_attacks(); ++bj)
          if (subset(sensors_of(g.attack(b)), sensors_of(g.attack(AttackId(bj))))) {
            EXPECT_TRUE(o.is_subset_of(get_observation(g, s, q, AttackId(bj))));
          }
        for (std::size_t qj = 0; qj < g.num_queries(); ++qj)
          if (subset(sensors_of(g.query(q)), sensors_of(g.query(QueryId(qj))))) {
            EXPECT_TRUE(get_observation(g, s, QueryId(qj), b).is_subset_of(o));
          }
      }
    }
  }
  for (std::size_t ai = 0; ai < g.num_actions(); ++ai) {
    const ActionId a(ai);
    std::vector<StateId> ok;
    for (StateId s : g.all_states())
      if (g.enabled(s, a)) ok.push_back(s);
    if (ok.size() < 2) continue;
    const StateSet x{ok[0]}, y(std::vector<StateId>(ok.begin() + 1, ok.end()));
    EXPECT_EQ(post_belief(g, set_union(x, y), a), set_union(post_belief(g, x, a), post_belief(g, y, a)));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ObservationProperties, ::testing::Range<std::uint64_t>(0, 40));

}  // namespace
}  // namespace sagame
