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

#ifndef SAGAME_TESTS_TEST_UTIL_HPP
#define SAGAME_TESTS_TEST_UTIL_HPP

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sagame/sagame.hpp"

namespace sagame::testing {

inline std::string game_path(const std::string& name) { return std::string(SAGAME_GAMES_DIR) + "/" + name; }

inline ValidatedGame load(const std::string& name) { return validate_game(parse_spec_file(game_path(name))); }

inline Game game_from_text(const std::string& text) { return validate_game(parse_spec(text)).game; }

inline StateSet states(const Game& g, std::initializer_list<const char*> names) {
  StateSet out;
  for (const char* n : names) out.insert(*g.find_state(n));
  return out;
}

inline NodeId node(const Game& g, const BeliefMdp& h, const char* s, std::initializer_list<const char*> belief) {
  auto q = h.find(*g.find_state(s), states(g, belief));
  if (!q) throw Error(ErrorCode::InvalidArgument, std::string("no node for ") + s);
  return *q;
}

inline JointAction act(const Game& g, const char* a, const char* q) { return {*g.find_action(a), *g.find_query(q)}; }

struct RandomFamily {
  GeneratorParams params;
  std::uint64_t first = 0;
  std::size_t count = 0;
  std::size_t cap = 1'000'000;
};

// The seeded families listed in games/corpus.json.
inline std::vector<RandomFamily> corpus_families() {
  std::ifstream in(game_path("corpus.json"));
  const auto doc = nlohmann::json::parse(in);
  std::vector<RandomFamily> out;
  for (const auto& f : doc.at("random")) {
    const auto& p = f.at("params");
    RandomFamily fam;
    fam.params.n_states = p.at("states");
    fam.params.n_actions = p.at("actions");
    fam.params.n_sensors = p.at("sensors");
    fam.params.n_queries = p.at("queries");
    fam.params.n_attacks = p.at("attacks");
    fam.params.max_support = p.at("max_support");
    fam.params.goal_fraction = p.at("goal_fraction");
    fam.first = f.at("seeds").at("first");
    fam.count = f.at("seeds").at("count");
    fam.cap = f.value("oracle_cap", std::size_t{1'000'000});
    out.push_back(fam);
  }
  return out;
}

inline GeneratorParams with_seed(GeneratorParams p, std::uint64_t seed) {
  p.seed = seed;
  return p;
}

}  // namespace sagame::testing

#endif  // SAGAME_TESTS_TEST_UTIL_HPP
