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

#ifndef SAGAME_SOLVER_P2_HPP
#define SAGAME_SOLVER_P2_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sagame/belief_mdp.hpp"
#include "sagame/solver_p1.hpp"

namespace sagame {

/// P1 move and nature outcome that realize an attacker-MDP transition.
struct Inducer {
  JointAction action;
  StateId next;

  friend auto operator<=>(const Inducer&, const Inducer&) = default;
};

/// Successor under an attack. An empty target is the task-complete event:
/// the true state entered the goal set.
struct AttackOutcome {
  std::optional<NodeId> target;
  std::vector<Inducer> via;

  bool completes_task() const { return !target.has_value(); }
};

struct AttackChoice {
  AttackId attack;
  std::vector<AttackOutcome> outcomes;  // belief nodes by id, then task-complete

  bool completes_task() const { return !outcomes.empty() && outcomes.back().completes_task(); }
};

class AttackerMdp;
AttackerMdp build_attacker_mdp(const Game& g, const BeliefMdp& h, const SolveReport& report);

/// P2's perfect-observation MDP over P1's winning belief nodes. P2 picks an
/// attack per node; P1's random pick from its allowed set and the game's
/// successor distribution resolve the rest.
class AttackerMdp {
 public:
  std::span<const NodeId> nodes() const { return nodes_; }
  bool contains(NodeId q) const { return std::binary_search(nodes_.begin(), nodes_.end(), q); }
  std::span<const AttackChoice> choices(NodeId q) const { return choices_.at(local(q)); }
  const AttackChoice* choice(NodeId q, AttackId b) const {
    for (const auto& c : choices_.at(local(q)))
      if (c.attack == b) return &c;
    return nullptr;
  }
  /// Nodes whose true state is outside the goal set.
  bool safe(NodeId q) const { return safe_.at(local(q)) != 0; }

 private:
  friend AttackerMdp build_attacker_mdp(const Game& g, const BeliefMdp& h, const SolveReport& report);

  std::size_t local(NodeId q) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), q);
    if (it == nodes_.end() || *it != q) throw Error(ErrorCode::InvalidArgument, "node is not in the attacker MDP");
    return static_cast<std::size_t>(it - nodes_.begin());
  }

  std::vector<NodeId> nodes_;
  std::vector<std::vector<AttackChoice>> choices_;
  std::vector<char> safe_;
};

/// Builds P2's MDP from P1's solved multi-strategy. At q = (s, B) attack b is
/// offered when it is enabled at every non-goal state P1's allowed actions
/// can move to; the resulting successors are (s', Post(B, a) ∩ Obs(s', q, b))
/// for each allowed (a, q) and s' in Post(s, a) outside the goal, and the
/// task-complete event for goal successors. At a node whose state is a goal
/// state every attack leads straight to the task-complete event.
inline AttackerMdp build_attacker_mdp(const Game& g, const BeliefMdp& h, const SolveReport& report) {
  if (report.win1.empty()) throw Error(ErrorCode::EmptyWin1, "P1 has no winning belief node; nothing to attack");
  AttackerMdp m;
  m.nodes_ = report.win1;
  m.choices_.resize(m.nodes_.size());
  m.safe_.resize(m.nodes_.size());
  for (std::size_t li = 0; li < m.nodes_.size(); ++li) {
    const NodeId q = m.nodes_[li];
    const BeliefNode& node = h.node(q);
    m.safe_[li] = !g.is_goal(node.state);
    const auto allowed = report.strategy.allowed(q);
    if (g.is_goal(node.state)) {
      for (std::size_t bi = 0; bi < g.num_attacks(); ++bi)
        m.choices_[li].push_back({AttackId(bi), {AttackOutcome{std::nullopt, {}}}});
      continue;
    }
    for (std::size_t bi = 0; bi < g.num_attacks(); ++bi) {
      AttackId b(bi);
      bool offered = true;
      for (JointAction act : allowed)
        for (StateId next : post_state(g, node.state, act.action))
          if (!g.is_goal(next) && !g.attack_enabled(next, b)) offered = false;
      if (!offered) continue;

      std::map<NodeId, std::vector<Inducer>> targets;
      std::vector<Inducer> completing;
      for (JointAction act : allowed) {
        const StateSet reach = post_belief(g, node.belief, act.action);
        for (StateId next : post_state(g, node.state, act.action)) {
          if (g.is_goal(next)) {
            completing.push_back({act, next});
            continue;
          }
          StateSet nb = set_intersection(reach, get_observation(g, next, act.query, b));
          auto target = h.find(next, nb);
          if (!target) throw Error(ErrorCode::InvalidArgument, "attacker successor missing from the belief MDP");
          targets[*target].push_back({act, next});
        }
      }
      AttackChoice c{b, {}};
      for (auto& [t, via] : targets) c.outcomes.push_back({t, std::move(via)});
      if (!completing.empty()) c.outcomes.push_back({std::nullopt, std::move(completing)});
      m.choices_[li].push_back(std::move(c));
    }
  }
  return m;
}

/// Memoryless deterministic attack choice per node of P2's winning region.
struct AttackStrategy {
  std::map<NodeId, AttackId> choice;

  std::optional<AttackId> at(NodeId q) const {
    auto it = choice.find(q);
    if (it == choice.end()) return std::nullopt;
    return it->second;
  }
};

struct SafetyResult {
  std::vector<NodeId> win2;  // sorted
  AttackStrategy strategy;

  bool contains(NodeId q) const { return std::binary_search(win2.begin(), win2.end(), q); }
};

namespace detail {

inline bool keeps_inside(const AttackChoice& c, const std::vector<NodeId>& region) {
  if (c.completes_task()) return false;
  for (const auto& o : c.outcomes)
    if (!std::binary_search(region.begin(), region.end(), *o.target)) return false;
  return true;
}

}  // namespace detail

/// Greatest set of safe nodes from which P2 has an attack keeping every
/// successor inside the set and avoiding task completion. Against a
/// randomizing P1 this is also P2's almost-sure safety region. The strategy
/// picks the lowest-indexed witnessing attack.
inline SafetyResult solve_p2_safety(const AttackerMdp& m) {
  std::vector<NodeId> region;
  for (NodeId q : m.nodes())
    if (m.safe(q)) region.push_back(q);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<NodeId> kept;
    for (NodeId q : region) {
      bool ok = false;
      for (const auto& c : m.choices(q))
        if (detail::keeps_inside(c, region)) {
          ok = true;
          break;
        }
      if (ok) kept.push_back(q); else changed = true;
    }
    region = std::move(kept);
  }
  SafetyResult r;
  r.win2 = region;
  for (NodeId q : region)
    for (const auto& c : m.choices(q))
      if (detail::keeps_inside(c, region)) {
        r.strategy.choice.emplace(q, c.attack);
        break;
      }
  return r;
}

struct GapEntry {
  NodeId node;
  AttackId attack;

  friend bool operator==(const GapEntry&, const GapEntry&) = default;
};

/// Nodes P1 counts as almost-sure winning that P2 wins almost surely, each
/// with the attack P2 plays there.
inline std::vector<GapEntry> deception_gap(const SolveReport& report, const SafetyResult& p2) {
  std::vector<GapEntry> out;
  for (NodeId q : p2.win2)
    if (report.winning(q)) out.push_back({q, *p2.strategy.at(q)});
  return out;
}

/// Every attacker-MDP successor is a winning node of P1 (or task-complete),
/// and the transitions match a direct recomputation from the game.
inline Verdict check_attacker_closure(const Game& g, const BeliefMdp& h, const SolveReport& report,
                                      const AttackerMdp& m) {
  if (!std::equal(m.nodes().begin(), m.nodes().end(), report.win1.begin(), report.win1.end()))
    return {false, "attacker MDP nodes differ from P1's winning region", {}};
  for (NodeId q : m.nodes()) {
    const BeliefNode& node = h.node(q);
    for (const auto& c : m.choices(q)) {
      for (const auto& o : c.outcomes) {
        for (const Inducer& via : o.via) {
          if (!report.strategy.allows(q, via.action))
            return {false, "attacker transition induced by an action P1 does not allow", {q}};
          if (!post_state(g, node.state, via.action.action).contains(via.next))
            return {false, "attacker transition to a state outside Post(s, a)", {q}};
          if (o.completes_task()) {
            if (!g.is_goal(via.next)) return {false, "task-complete event from a non-goal state", {q}};
            continue;
          }
          const BeliefNode& t = h.node(*o.target);
          StateSet nb = set_intersection(post_belief(g, node.belief, via.action.action),
                                         get_observation(g, via.next, via.action.query, c.attack));
          if (t.state != via.next || t.belief != nb) return {false, "attacker successor has the wrong belief", {q, *o.target}};
        }
        if (!o.completes_task() && !report.winning(*o.target))
          return {false, "attacker transition leaves P1's winning region", {q, *o.target}};
      }
    }
  }
  return {};
}

/// One-step checks of a safety result: the strategy is defined on exactly
/// the region, keeps it closed and never completes the task; every safe
/// node left out has no attack that would keep it inside.
inline Verdict check_safety_certificate(const AttackerMdp& m, const SafetyResult& r) {
  for (NodeId q : r.win2) {
    if (!m.contains(q) || !m.safe(q)) return {false, "region contains an unsafe node", {q}};
    auto b = r.strategy.at(q);
    if (!b) return {false, "strategy undefined inside the region", {q}};
    const AttackChoice* c = m.choice(q, *b);
    if (!c) return {false, "strategy picks an attack that is not offered", {q}};
    if (!detail::keeps_inside(*c, r.win2)) return {false, "chosen attack leaves the region", {q}};
  }
  if (r.strategy.choice.size() != r.win2.size()) return {false, "strategy defined outside the region", {}};
  for (NodeId q : m.nodes()) {
    if (!m.safe(q) || r.contains(q)) continue;
    for (const auto& c : m.choices(q))
      if (detail::keeps_inside(c, r.win2)) return {false, "region is not maximal", {q}};
  }
  return {};
}

}  // namespace sagame

#endif  // SAGAME_SOLVER_P2_HPP
