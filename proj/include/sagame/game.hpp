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

#ifndef SAGAME_GAME_HPP
#define SAGAME_GAME_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sagame/error.hpp"
#include "sagame/ids.hpp"
#include "sagame/spec_document.hpp"
#include "sagame/state_set.hpp"

namespace sagame {

/// Support of P(s, a, .). Weights are kept for the simulator only; the
/// qualitative solvers look at `successors` alone.
struct Transition {
  StateSet successors;
  std::vector<double> weights;  // empty, or parallel to successors
};

class Game;

struct ValidatedGame;
ValidatedGame validate_game(const GameSpecDocument& doc);

/// Explicit-state arena of a stochastic reachability game in which P1 picks
/// a control action and a sensor query, and P2 jams a subset of the sensors.
/// Immutable; only validate_game() constructs one.
class Game {
 public:
  const std::string& title() const { return title_; }

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_actions() const { return action_names_.size(); }
  std::size_t num_sensors() const { return sensor_names_.size(); }
  std::size_t num_queries() const { return query_names_.size(); }
  std::size_t num_attacks() const { return attack_names_.size(); }

  const std::string& name(StateId s) const { return state_names_.at(s.index()); }
  const std::string& name(ActionId a) const { return action_names_.at(a.index()); }
  const std::string& name(SensorId i) const { return sensor_names_.at(i.index()); }
  const std::string& name(QueryId q) const { return query_names_.at(q.index()); }
  const std::string& name(AttackId b) const { return attack_names_.at(b.index()); }

  std::optional<StateId> find_state(std::string_view n) const { return lookup<StateId>(state_index_, n); }
  std::optional<ActionId> find_action(std::string_view n) const { return lookup<ActionId>(action_index_, n); }
  std::optional<SensorId> find_sensor(std::string_view n) const { return lookup<SensorId>(sensor_index_, n); }
  std::optional<QueryId> find_query(std::string_view n) const { return lookup<QueryId>(query_index_, n); }
  std::optional<AttackId> find_attack(std::string_view n) const { return lookup<AttackId>(attack_index_, n); }

  StateId initial() const { return initial_; }
  const StateSet& goal() const { return goal_; }
  bool is_goal(StateId s) const { return goal_mask_.at(s.index()) != 0; }
  const StateSet& all_states() const { return all_states_; }

  bool enabled(StateId s, ActionId a) const { return transition(s, a) != nullptr; }
  /// nullptr when `a` is disabled at `s`.
  const Transition* transition(StateId s, ActionId a) const {
    const auto& t = trans_.at(s.index() * num_actions() + a.index());
    return t ? &*t : nullptr;
  }

  const StateSet& coverage(SensorId i) const { return coverage_.at(i.index()); }
  bool covers(SensorId i, StateId s) const { return covered_[i.index()][s.index()] != 0; }

  std::span<const SensorId> query(QueryId q) const { return queries_.at(q.index()); }
  std::span<const SensorId> attack(AttackId b) const { return attacks_.at(b.index()); }
  bool jams(AttackId b, SensorId i) const { return jam_mask_[b.index()][i.index()] != 0; }

  std::span<const AttackId> enabled_attacks(StateId s) const { return enabled_attacks_.at(s.index()); }
  bool attack_enabled(StateId s, AttackId b) const {
    return attack_mask_[s.index()][b.index()] != 0;
  }

  bool has_weights() const { return has_weights_; }

 private:
  friend ValidatedGame validate_game(const GameSpecDocument& doc);

  Game() = default;

  template <typename IdT>
  static std::optional<IdT> lookup(const std::unordered_map<std::string, std::uint32_t>& m, std::string_view n) {
    auto it = m.find(std::string(n));
    if (it == m.end()) return std::nullopt;
    return IdT(it->second);
  }

  std::string title_;
  std::vector<std::string> state_names_, action_names_, sensor_names_, query_names_, attack_names_;
  std::unordered_map<std::string, std::uint32_t> state_index_, action_index_, sensor_index_, query_index_,
      attack_index_;
  std::vector<std::optional<Transition>> trans_;
  StateId initial_;
  StateSet goal_;
  StateSet all_states_;
  std::vector<char> goal_mask_;
  std::vector<StateSet> coverage_;
  std::vector<std::vector<char>> covered_;  // [sensor][state]
  std::vector<std::vector<SensorId>> queries_;
  std::vector<std::vector<SensorId>> attacks_;
  std::vector<std::vector<char>> jam_mask_;  // [attack][sensor]
  std::vector<std::vector<AttackId>> enabled_attacks_;
  std::vector<std::vector<char>> attack_mask_;  // [state][attack]
  bool has_weights_ = false;
};

struct ValidatedGame {
  Game game;
  std::vector<Diagnostic> warnings;
};

namespace detail {

template <typename Decl>
std::unordered_map<std::string, std::uint32_t> index_names(const std::vector<Decl>& decls, std::string_view kind,
                                                           std::vector<Diagnostic>& errors,
                                                           std::vector<std::string>& names) {
  std::unordered_map<std::string, std::uint32_t> index;
  for (const auto& d : decls) {
    if (index.count(d.name)) {
      errors.push_back({ErrorCode::DuplicateName, std::string(kind) + " '" + d.name + "' declared twice", d.loc});
      continue;
    }
    index.emplace(d.name, static_cast<std::uint32_t>(names.size()));
    names.push_back(d.name);
  }
  return index;
}

}  // namespace detail

/// Resolves names to dense ids and checks every structural invariant of the
/// arena. All violations are collected; a ValidationError carries the full
/// list. Empty sensor coverage and an empty goal set are warnings.
inline ValidatedGame validate_game(const GameSpecDocument& doc) {
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
  Game g;
  g.title_ = doc.name;

  g.state_index_ = detail::index_names(doc.states, "state", errors, g.state_names_);
  g.action_index_ = detail::index_names(doc.actions, "action", errors, g.action_names_);
  g.sensor_index_ = detail::index_names(doc.sensors, "sensor", errors, g.sensor_names_);
  g.query_index_ = detail::index_names(doc.queries, "query", errors, g.query_names_);
  g.attack_index_ = detail::index_names(doc.attacks, "attack", errors, g.attack_names_);

  const std::size_t n_states = g.state_names_.size();
  const std::size_t n_actions = g.action_names_.size();
  const std::size_t n_sensors = g.sensor_names_.size();
  const std::size_t n_attacks = g.attack_names_.size();

  auto resolve = [&](const auto& index, const std::string& n, std::string_view kind, std::string_view context,
                     SourceLoc loc) -> std::optional<std::uint32_t> {
    auto it = index.find(n);
    if (it == index.end()) {
      errors.push_back({ErrorCode::UnknownId,
                        "unknown " + std::string(kind) + " '" + n + "' in " + std::string(context), loc});
      return std::nullopt;
    }
    return it->second;
  };

  // states, initial, goal
  g.goal_mask_.assign(n_states, 0);
  g.all_states_ = StateSet::universe(n_states);
  std::optional<StateId> initial;
  for (const auto& d : doc.states) {
    auto it = g.state_index_.find(d.name);
    if (it == g.state_index_.end()) continue;
    StateId s(it->second);
    if (d.initial) {
      if (initial && *initial != s)
        errors.push_back({ErrorCode::DuplicateDefinition, "second initial state '" + d.name + "'", d.loc});
      else
        initial = s;
    }
    if (d.goal) g.goal_mask_[s.index()] = 1;
  }
  if (doc.states.empty()) {
    errors.push_back({ErrorCode::MissingInitial, "game declares no states", {}});
  } else if (!initial) {
    errors.push_back({ErrorCode::MissingInitial, "no state is marked initial", doc.states.front().loc});
  } else {
    g.initial_ = *initial;
  }
  g.goal_ = StateSet::from_mask(g.goal_mask_);
  if (g.goal_.empty() && n_states > 0) warnings.push_back({ErrorCode::EmptyGoal, "goal set is empty", {}});

  // transitions
  g.trans_.assign(n_states * n_actions, std::nullopt);
  for (const auto& t : doc.transitions) {
    std::string edge = "transition " + t.state + " " + t.action;
    auto s = resolve(g.state_index_, t.state, "state", edge, t.loc);
    auto a = resolve(g.action_index_, t.action, "action", edge, t.loc);
    Transition tr;
    std::vector<std::pair<StateId, std::optional<double>>> succ;
    bool ok = s && a;
    for (const auto& sd : t.successors) {
      auto target = resolve(g.state_index_, sd.state, "state", edge + " -> " + sd.state, sd.loc);
      if (!target) {
        ok = false;
        continue;
      }
      if (sd.weight && !(*sd.weight > 0.0)) {
        errors.push_back({ErrorCode::InvalidWeight, "non-positive weight on " + edge + " -> " + sd.state, sd.loc});
        ok = false;
      }
      succ.emplace_back(StateId(*target), sd.weight);
    }
    if (t.successors.empty()) {
      errors.push_back({ErrorCode::EmptySupport, edge + " has no successors", t.loc});
      ok = false;
    }
    std::size_t weighted = 0;
    for (const auto& [_, w] : succ) weighted += w.has_value();
    if (weighted != 0 && weighted != succ.size()) {
      errors.push_back({ErrorCode::InvalidWeight, edge + " mixes weighted and unweighted successors", t.loc});
      ok = false;
    }
    if (!ok) continue;
    std::sort(succ.begin(), succ.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t k = 1; k < succ.size(); ++k) {
      if (succ[k].first == succ[k - 1].first) {
        errors.push_back({ErrorCode::DuplicateDefinition, edge + " lists a successor twice", t.loc});
        ok = false;
        break;
      }
    }
    auto& slot = g.trans_[*s * n_actions + *a];
    if (slot) {
      errors.push_back({ErrorCode::DuplicateDefinition, edge + " defined twice", t.loc});
      ok = false;
    }
    if (!ok) continue;
    std::vector<StateId> ids;
    for (const auto& [id, w] : succ) {
      ids.push_back(id);
      if (w) tr.weights.push_back(*w);
    }
    tr.successors = StateSet(std::move(ids));
    if (!tr.weights.empty()) g.has_weights_ = true;
    slot = std::move(tr);
  }
  for (std::size_t s = 0; s < n_states; ++s) {
    bool any = false;
    for (std::size_t a = 0; a < n_actions; ++a) any = any || g.trans_[s * n_actions + a].has_value();
    if (!any)
      errors.push_back({ErrorCode::NoEnabledAction, "state '" + g.state_names_[s] + "' has no enabled action",
                        doc.states.size() > s ? doc.states[s].loc : SourceLoc{}});
  }

  // sensors
  g.covered_.assign(n_sensors, std::vector<char>(n_states, 0));
  g.coverage_.assign(n_sensors, StateSet{});
  for (const auto& d : doc.sensors) {
    auto it = g.sensor_index_.find(d.name);
    if (it == g.sensor_index_.end()) continue;
    auto& mask = g.covered_[it->second];
    for (const auto& n : d.coverage)
      if (auto s = resolve(g.state_index_, n, "state", "coverage of sensor " + d.name, d.loc)) mask[*s] = 1;
    g.coverage_[it->second] = StateSet::from_mask(mask);
    if (d.coverage.empty())
      warnings.push_back({ErrorCode::EmptyCoverage, "sensor '" + d.name + "' covers no state", d.loc});
  }

  auto sensor_list = [&](const std::vector<std::string>& names, const std::string& context, SourceLoc loc) {
    std::vector<SensorId> out;
    for (const auto& n : names)
      if (auto i = resolve(g.sensor_index_, n, "sensor", context, loc)) out.emplace_back(*i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  g.queries_.assign(g.query_names_.size(), {});
  for (const auto& d : doc.queries) {
    auto it = g.query_index_.find(d.name);
    if (it == g.query_index_.end()) continue;
    g.queries_[it->second] = sensor_list(d.sensors, "query " + d.name, d.loc);
  }

  g.attacks_.assign(n_attacks, {});
  g.jam_mask_.assign(n_attacks, std::vector<char>(n_sensors, 0));
  g.attack_mask_.assign(n_states, std::vector<char>(n_attacks, 0));
  for (const auto& d : doc.attacks) {
    auto it = g.attack_index_.find(d.name);
    if (it == g.attack_index_.end()) continue;
    const auto b = it->second;
    g.attacks_[b] = sensor_list(d.sensors, "attack " + d.name, d.loc);
    for (auto i : g.attacks_[b]) g.jam_mask_[b][i.index()] = 1;
    if (d.enabled_at) {
      for (const auto& n : *d.enabled_at)
        if (auto s = resolve(g.state_index_, n, "state", "enabling of attack " + d.name, d.loc))
          g.attack_mask_[*s][b] = 1;
    } else {
      for (std::size_t s = 0; s < n_states; ++s) g.attack_mask_[s][b] = 1;
    }
  }
  g.enabled_attacks_.assign(n_states, {});
  for (std::size_t s = 0; s < n_states; ++s) {
    for (std::size_t b = 0; b < n_attacks; ++b)
      if (g.attack_mask_[s][b]) g.enabled_attacks_[s].emplace_back(b);
    if (g.enabled_attacks_[s].empty())
      errors.push_back({ErrorCode::EmptyAttackSet, "state '" + g.state_names_[s] + "' has no enabled attack action",
                        doc.states.size() > s ? doc.states[s].loc : SourceLoc{}});
  }

  if (!errors.empty()) throw ValidationError(std::move(errors));
  return ValidatedGame{std::move(g), std::move(warnings)};
}

/// Canonical name-level form of a game: declaration order follows the dense
/// ids, coverage and sensor lists are sorted by id, and attacks available
/// everywhere carry no enabling list.
inline GameSpecDocument to_document(const Game& g) {
  GameSpecDocument doc;
  doc.name = g.title();
  for (std::size_t s = 0; s < g.num_states(); ++s) {
    StateId id(s);
    doc.states.push_back({g.name(id), id == g.initial(), g.is_goal(id), {}});
  }
  for (std::size_t a = 0; a < g.num_actions(); ++a) doc.actions.push_back({g.name(ActionId(a)), {}});
  for (std::size_t s = 0; s < g.num_states(); ++s) {
    for (std::size_t a = 0; a < g.num_actions(); ++a) {
      const Transition* t = g.transition(StateId(s), ActionId(a));
      if (!t) continue;
      TransitionDecl td{g.name(StateId(s)), g.name(ActionId(a)), {}, {}};
      std::size_t k = 0;
      for (auto succ : t->successors) {
        std::optional<double> w;
        if (!t->weights.empty()) w = t->weights[k];
        td.successors.push_back({g.name(succ), w, {}});
        ++k;
      }
      doc.transitions.push_back(std::move(td));
    }
  }
  for (std::size_t i = 0; i < g.num_sensors(); ++i) {
    SensorDecl sd{g.name(SensorId(i)), {}, {}};
    for (auto s : g.coverage(SensorId(i))) sd.coverage.push_back(g.name(s));
    doc.sensors.push_back(std::move(sd));
  }
  for (std::size_t q = 0; q < g.num_queries(); ++q) {
    QueryDecl qd{g.name(QueryId(q)), {}, {}};
    for (auto i : g.query(QueryId(q))) qd.sensors.push_back(g.name(i));
    doc.queries.push_back(std::move(qd));
  }
  for (std::size_t b = 0; b < g.num_attacks(); ++b) {
    AttackId id(b);
    AttackDecl ad{g.name(id), {}, std::nullopt, {}};
    for (auto i : g.attack(id)) ad.sensors.push_back(g.name(i));
    std::vector<std::string> at;
    for (std::size_t s = 0; s < g.num_states(); ++s)
      if (g.attack_enabled(StateId(s), id)) at.push_back(g.name(StateId(s)));
    if (at.size() != g.num_states()) ad.enabled_at = std::move(at);
    doc.attacks.push_back(std::move(ad));
  }
  return doc;
}

}  // namespace sagame

#endif  // SAGAME_GAME_HPP
