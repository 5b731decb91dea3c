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

#ifndef SAGAME_OBSERVATION_HPP
#define SAGAME_OBSERVATION_HPP

#include <set>
#include <string>
#include <vector>

#include "sagame/game.hpp"

namespace sagame {

/// Set of states P1 cannot tell apart after one sensor round.
using Observation = StateSet;

/// Support of P(s, a, .).
inline const StateSet& post_state(const Game& g, StateId s, ActionId a) {
  const Transition* t = g.transition(s, a);
  if (!t) throw Error(ErrorCode::DisabledAction, "action '" + g.name(a) + "' is disabled at state '" + g.name(s) + "'");
  return t->successors;
}

/// Union of the supports of `a` over every state of `belief`.
inline StateSet post_belief(const Game& g, const StateSet& belief, ActionId a) {
  if (belief.empty()) throw Error(ErrorCode::InvalidArgument, "post_belief of an empty belief");
  std::vector<char> mask(g.num_states(), 0);
  for (StateId s : belief) {
    const Transition* t = g.transition(s, a);
    if (!t)
      throw Error(ErrorCode::DisabledAction,
                  "action '" + g.name(a) + "' is disabled at state '" + g.name(s) + "' of the belief");
    for (StateId succ : t->successors) mask[succ.index()] = 1;
  }
  return StateSet::from_mask(mask);
}

/// True when `a` can be played from every state of `belief`.
inline bool enabled_on(const Game& g, const StateSet& belief, ActionId a) {
  for (StateId s : belief)
    if (!g.enabled(s, a)) return false;
  return true;
}

/// Deterministic observation at true state `s` when P1 reads the sensors of
/// query `q` and P2 jams those of attack `att`. Each unjammed queried sensor
/// splits the state space into its coverage and the complement; the result
/// is the cell containing `s`.
inline Observation get_observation(const Game& g, StateId s, QueryId q, AttackId att) {
  if (s.index() >= g.num_states() || q.index() >= g.num_queries() || att.index() >= g.num_attacks())
    throw Error(ErrorCode::UnknownId, "get_observation: id out of range");
  std::vector<char> in(g.num_states(), 1);
  for (SensorId i : g.query(q)) {
    if (g.jams(att, i)) continue;
    const bool reading = g.covers(i, s);
    for (std::size_t t = 0; t < g.num_states(); ++t)
      if (g.covers(i, StateId(t)) != reading) in[t] = 0;
  }
  return StateSet::from_mask(in);
}

/// Raw readings of the queried sensors: 'T' covered, 'F' not covered,
/// '?' jammed. One character per sensor of the query, in sensor-id order.
inline std::string sensor_readings(const Game& g, StateId s, QueryId q, AttackId att) {
  std::string out;
  for (SensorId i : g.query(q)) out += g.jams(att, i) ? '?' : (g.covers(i, s) ? 'T' : 'F');
  return out;
}

/// Every observation the game can produce, plus the initial observation {s0}.
inline std::set<Observation> enumerate_observations(const Game& g) {
  std::set<Observation> out;
  out.insert(StateSet{g.initial()});
  for (std::size_t s = 0; s < g.num_states(); ++s)
    for (std::size_t q = 0; q < g.num_queries(); ++q)
      for (std::size_t b = 0; b < g.num_attacks(); ++b)
        out.insert(get_observation(g, StateId(s), QueryId(q), AttackId(b)));
  return out;
}

}  // namespace sagame

#endif  // SAGAME_OBSERVATION_HPP
