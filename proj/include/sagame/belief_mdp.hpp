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

#ifndef SAGAME_BELIEF_MDP_HPP
#define SAGAME_BELIEF_MDP_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sagame/game.hpp"
#include "sagame/observation.hpp"

namespace sagame {

using NodeId = Id<struct NodeTag>;
using ClassId = Id<struct ClassTag>;

/// A state of P1's perceived MDP: either (true state, belief) or the
/// absorbing final node q_F.
struct BeliefNode {
  StateId state;
  StateSet belief;
  bool final = false;

  bool is_final() const { return final; }
  friend bool operator==(const BeliefNode&, const BeliefNode&) = default;
};

/// One entry of a transition support, with the attacks that produce it.
/// The final node carries no attacks.
struct Successor {
  NodeId target;
  std::vector<AttackId> attacks;
};

struct Choice {
  JointAction action;
  std::vector<Successor> successors;  // sorted by target
};

class BeliefMdp;
BeliefMdp build_belief_mdp(const Game& g);

/// P1's perfect-observation MDP over (state, belief) pairs. Pair nodes are
/// numbered in (state, belief) order; q_F is the last node and has no
/// outgoing choices.
class BeliefMdp {
 public:
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_pair_nodes() const { return nodes_.size() - 1; }
  NodeId final_node() const { return NodeId(nodes_.size() - 1); }
  NodeId initial_node() const { return initial_; }
  const BeliefNode& node(NodeId q) const { return nodes_.at(q.index()); }
  bool is_final(NodeId q) const { return q == final_node(); }

  std::optional<NodeId> find(StateId s, const StateSet& belief) const {
    auto it = index_.find({s, belief});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Offered actions at `q`, sorted. Nodes of one class share the list of
  /// offered actions (not the successors).
  std::span<const Choice> choices(NodeId q) const { return choices_.at(q.index()); }
  const Choice* choice(NodeId q, JointAction act) const {
    const auto& cs = choices_.at(q.index());
    auto it = std::lower_bound(cs.begin(), cs.end(), act,
                               [](const Choice& c, const JointAction& x) { return c.action < x; });
    return it != cs.end() && it->action == act ? &*it : nullptr;
  }

  /// Every (node, action) whose support contains `q`, sorted.
  std::span<const std::pair<NodeId, JointAction>> predecessors(NodeId q) const { return preds_.at(q.index()); }

  std::size_t num_classes() const { return classes_.size(); }
  ClassId class_of(NodeId q) const {
    if (is_final(q)) throw Error(ErrorCode::FinalHasNoClass, "the final node has no equivalence class");
    return class_of_.at(q.index());
  }
  std::span<const NodeId> class_members(ClassId c) const { return classes_.at(c.index()); }
  const StateSet& class_belief(ClassId c) const { return node(classes_.at(c.index()).front()).belief; }
  std::optional<ClassId> find_class(const StateSet& belief) const {
    auto it = class_index_.find(belief);
    if (it == class_index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  friend BeliefMdp build_belief_mdp(const Game& g);

  std::vector<BeliefNode> nodes_;
  NodeId initial_;
  std::map<std::pair<StateId, StateSet>, NodeId> index_;
  std::vector<std::vector<Choice>> choices_;
  std::vector<std::vector<std::pair<NodeId, JointAction>>> preds_;
  std::vector<ClassId> class_of_;
  std::vector<std::vector<NodeId>> classes_;
  std::map<StateSet, ClassId> class_index_;
};

/// "(s1, {s1,s2})" or "q_F".
inline std::string node_label(const Game& g, const BeliefMdp& h, NodeId q) {
  const BeliefNode& n = h.node(q);
  if (n.is_final()) return "q_F";
  std::string out = "(" + g.name(n.state) + ", {";
  bool first = true;
  for (StateId s : n.belief) {
    if (!first) out += ',';
    out += g.name(s);
    first = false;
  }
  return out + "})";
}

inline std::string action_label(const Game& g, JointAction act) {
  return "(" + g.name(act.action) + ", " + g.name(act.query) + ")";
}

/// Explores P1's perceived MDP forward from (s0, {s0}) and closes the node
/// set under belief equivalence: whenever a belief B appears, (s', B) is
/// explored for every s' in B. From (s, B) under (a, q) with a enabled on
/// all of B:
///   - if s is a goal state or Post(s, a) lies inside the goal set, the
///     only successor is q_F;
///   - otherwise every s' in Post(s, a) outside the goal and every attack
///     enabled at s' yields (s', Post(B, a) ∩ Obs(s', q, attack)), and q_F
///     is added when Post(s, a) also meets the goal set.
inline BeliefMdp build_belief_mdp(const Game& g) {
  using Key = std::pair<StateId, StateSet>;
  struct RawChoice {
    JointAction action;
    bool to_final = false;
    std::map<Key, std::vector<AttackId>> targets;
  };

  std::map<Key, std::vector<RawChoice>> explored;
  std::map<StateSet, bool> beliefs_seen;
  std::deque<Key> work;
  std::map<Key, bool> queued;

  auto enqueue = [&](const Key& k) {
    if (queued.emplace(k, true).second) work.push_back(k);
  };
  auto discover = [&](StateId s, const StateSet& b) {
    if (beliefs_seen.emplace(b, true).second)
      for (StateId t : b) enqueue({t, b});
    else
      enqueue({s, b});
  };

  discover(g.initial(), StateSet{g.initial()});

  while (!work.empty()) {
    Key key = work.front();
    work.pop_front();
    const auto& [s, belief] = key;
    std::vector<RawChoice> raw;
    for (std::size_t ai = 0; ai < g.num_actions(); ++ai) {
      ActionId a(ai);
      if (!enabled_on(g, belief, a)) continue;
      const StateSet& post = post_state(g, s, a);
      const StateSet reach = post_belief(g, belief, a);
      // At a goal state F has been reached already, whatever comes next.
      const bool all_goal = g.is_goal(s) || post.is_subset_of(g.goal());
      const bool some_goal = all_goal || post.intersects(g.goal());
      for (std::size_t qi = 0; qi < g.num_queries(); ++qi) {
        QueryId q(qi);
        RawChoice rc{{a, q}, some_goal, {}};
        if (!all_goal) {
          for (StateId next : post) {
            if (g.is_goal(next)) continue;
            for (AttackId b : g.enabled_attacks(next)) {
              StateSet nb = set_intersection(reach, get_observation(g, next, q, b));
              auto& atts = rc.targets[{next, nb}];
              atts.push_back(b);
            }
          }
        }
        raw.push_back(std::move(rc));
      }
    }
    for (const auto& rc : raw)
      for (const auto& [k, _] : rc.targets) discover(k.first, k.second);
    explored.emplace(key, std::move(raw));
  }

  // Canonical numbering: std::map iterates in (state, belief) order.
  BeliefMdp h;
  const std::size_t n_pairs = explored.size();
  h.nodes_.reserve(n_pairs + 1);
  for (const auto& [k, _] : explored) {
    h.index_.emplace(k, NodeId(h.nodes_.size()));
    h.nodes_.push_back({k.first, k.second, false});
  }
  h.nodes_.push_back({StateId(), StateSet{}, true});
  const NodeId final_id = h.final_node();
  h.initial_ = h.index_.at({g.initial(), StateSet{g.initial()}});

  h.choices_.assign(n_pairs + 1, {});
  h.preds_.assign(n_pairs + 1, {});
  std::size_t qid = 0;
  for (auto& [k, raw] : explored) {
    NodeId from(qid++);
    auto& out = h.choices_[from.index()];
    for (auto& rc : raw) {
      Choice c{rc.action, {}};
      for (auto& [tk, atts] : rc.targets) c.successors.push_back({h.index_.at(tk), std::move(atts)});
      if (rc.to_final) c.successors.push_back({final_id, {}});
      std::sort(c.successors.begin(), c.successors.end(),
                [](const Successor& x, const Successor& y) { return x.target < y.target; });
      for (const auto& succ : c.successors) h.preds_[succ.target.index()].emplace_back(from, c.action);
      out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Choice& x, const Choice& y) { return x.action < y.action; });
  }
  for (auto& p : h.preds_) std::sort(p.begin(), p.end());

  h.class_of_.assign(n_pairs, ClassId());
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const StateSet& b = h.nodes_[i].belief;
    auto [it, inserted] = h.class_index_.emplace(b, ClassId(h.classes_.size()));
    if (inserted) h.classes_.emplace_back();
    h.classes_[it->second.index()].emplace_back(i);
    h.class_of_[i] = it->second;
  }
  return h;
}

/// Every pair node sharing q's belief, q included.
inline std::vector<NodeId> equivalence_class(const BeliefMdp& h, NodeId q) {
  auto members = h.class_members(h.class_of(q));
  return {members.begin(), members.end()};
}

}  // namespace sagame

#endif  // SAGAME_BELIEF_MDP_HPP
