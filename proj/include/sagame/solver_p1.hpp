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

#ifndef SAGAME_SOLVER_P1_HPP
#define SAGAME_SOLVER_P1_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sagame/belief_mdp.hpp"

namespace sagame {

/// Allowed action sets per belief node. P1 realizes it by playing every
/// allowed action with positive probability.
class MultiStrategy {
 public:
  MultiStrategy() = default;
  explicit MultiStrategy(std::size_t num_nodes) : allowed_(num_nodes) {}

  std::size_t size() const { return allowed_.size(); }
  std::span<const JointAction> allowed(NodeId q) const { return allowed_.at(q.index()); }
  bool allows(NodeId q, JointAction act) const {
    const auto& v = allowed_.at(q.index());
    return std::binary_search(v.begin(), v.end(), act);
  }
  bool defined_at(NodeId q) const { return !allowed_.at(q.index()).empty(); }

  void set_allowed(NodeId q, std::vector<JointAction> acts) {
    std::sort(acts.begin(), acts.end());
    acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
    allowed_.at(q.index()) = std::move(acts);
  }
  /// False if `act` was not allowed.
  bool remove(NodeId q, JointAction act) {
    auto& v = allowed_.at(q.index());
    auto it = std::lower_bound(v.begin(), v.end(), act);
    if (it == v.end() || *it != act) return false;
    v.erase(it);
    return true;
  }

  friend bool operator==(const MultiStrategy&, const MultiStrategy&) = default;

 private:
  std::vector<std::vector<JointAction>> allowed_;
};

/// One action removal: `action` dropped at `node` in round `iteration`
/// because it can lead to the already-losing node `cause`.
struct EliminationStep {
  std::size_t iteration;
  NodeId node;
  JointAction action;
  NodeId cause;

  friend bool operator==(const EliminationStep&, const EliminationStep&) = default;
};

struct SolveReport {
  std::vector<NodeId> win1;  // sorted pair nodes
  MultiStrategy strategy;
  std::vector<EliminationStep> elimination_trace;
  /// Successive batches of losing nodes; layers[0] is the losing core.
  std::vector<std::vector<NodeId>> layers;
  bool initial_winning = false;

  bool winning(NodeId q) const { return std::binary_search(win1.begin(), win1.end(), q); }
};

/// Pair nodes with no path to q_F through any action.
inline std::vector<NodeId> losing_core(const BeliefMdp& h) {
  std::vector<char> reaches(h.num_nodes(), 0);
  std::deque<NodeId> work{h.final_node()};
  reaches[h.final_node().index()] = 1;
  while (!work.empty()) {
    NodeId u = work.front();
    work.pop_front();
    for (const auto& [p, _] : h.predecessors(u)) {
      if (reaches[p.index()]) continue;
      reaches[p.index()] = 1;
      work.push_back(p);
    }
  }
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i)
    if (!reaches[i]) out.emplace_back(i);
  return out;
}

/// Every (node, action) whose support contains `target`.
inline std::vector<std::pair<NodeId, JointAction>> pre_image(const BeliefMdp& h, NodeId target) {
  auto p = h.predecessors(target);
  return {p.begin(), p.end()};
}

namespace detail {

// Nodes outside `eliminated` that cannot reach q_F when only the actions of
// `pi` are played.
inline std::vector<NodeId> stranded_nodes(const BeliefMdp& h, const MultiStrategy& pi,
                                          const std::vector<char>& eliminated) {
  std::vector<char> reaches(h.num_nodes(), 0);
  std::deque<NodeId> work{h.final_node()};
  reaches[h.final_node().index()] = 1;
  while (!work.empty()) {
    NodeId u = work.front();
    work.pop_front();
    for (const auto& [p, act] : h.predecessors(u)) {
      if (reaches[p.index()] || !pi.allows(p, act)) continue;
      reaches[p.index()] = 1;
      work.push_back(p);
    }
  }
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i)
    if (!reaches[i] && !eliminated[i]) out.emplace_back(i);
  return out;
}

}  // namespace detail

/// Computes P1's almost-sure winning region and the largest
/// equivalence-preserving multi-strategy for it.
///
/// Start from the losing core. In each round, for every losing node u and
/// every (q, act) with u in the support of act at q, drop act at every node
/// of q's class; nodes left without actions form the next round. When a
/// round comes up empty, nodes that can no longer reach q_F under the
/// surviving actions are added as a fresh round, and the sweep continues
/// until that check finds nothing either.
inline SolveReport solve_p1(const BeliefMdp& h) {
  SolveReport rep;
  const std::size_t n = h.num_nodes();
  rep.strategy = MultiStrategy(n);
  std::vector<char> eliminated(n, 0);

  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i) {
    std::vector<JointAction> acts;
    for (const Choice& c : h.choices(NodeId(i))) acts.push_back(c.action);
    rep.strategy.set_allowed(NodeId(i), std::move(acts));
  }

  std::vector<NodeId> current = losing_core(h);
  for (NodeId q : current) eliminated[q.index()] = 1;
  std::size_t k = 0;
  while (!current.empty()) {
    rep.layers.push_back(current);
    std::vector<NodeId> next;
    for (NodeId u : current) {
      for (const auto& [q, act] : h.predecessors(u)) {
        for (NodeId p : h.class_members(h.class_of(q))) {
          if (rep.strategy.remove(p, act)) rep.elimination_trace.push_back({k, p, act, u});
          if (!rep.strategy.defined_at(p) && !eliminated[p.index()]) {
            eliminated[p.index()] = 1;
            next.push_back(p);
          }
        }
      }
    }
    ++k;
    std::sort(next.begin(), next.end());
    if (next.empty()) {
      next = detail::stranded_nodes(h, rep.strategy, eliminated);
      for (NodeId q : next) eliminated[q.index()] = 1;
    }
    current = std::move(next);
  }

  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i) {
    if (!eliminated[i]) {
      rep.win1.emplace_back(i);
    } else {
      rep.strategy.set_allowed(NodeId(i), {});
    }
  }
  rep.initial_winning = rep.winning(h.initial_node());
  return rep;
}

/// Re-applies an elimination trace to the full offered action sets and
/// returns the nodes that keep at least one action.
inline std::vector<NodeId> replay_trace(const BeliefMdp& h, std::span<const EliminationStep> trace) {
  MultiStrategy pi(h.num_nodes());
  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i) {
    std::vector<JointAction> acts;
    for (const Choice& c : h.choices(NodeId(i))) acts.push_back(c.action);
    pi.set_allowed(NodeId(i), std::move(acts));
  }
  for (const auto& step : trace) pi.remove(step.node, step.action);
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i)
    if (pi.defined_at(NodeId(i))) out.emplace_back(i);
  return out;
}

struct Verdict {
  bool holds = true;
  std::string reason;
  std::vector<NodeId> witness;  // offending node or path ending in it

  explicit operator bool() const { return holds; }
};

namespace detail {

inline std::vector<NodeId> path_to(const std::vector<std::optional<NodeId>>& parent, NodeId end) {
  std::vector<NodeId> path{end};
  while (parent[path.back().index()]) path.push_back(*parent[path.back().index()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Structural certificate that playing every action of `strat` with positive
/// probability reaches q_F almost surely from q0:
///   (0) allowed sets are offered and identical across each class;
///   (a) no allowed action leaves the strategy's domain plus q_F;
///   (b) every node reachable from q0 can reach q_F in the induced graph.
/// A strategy undefined at q0 passes (b) vacuously.
inline Verdict check_soundness(const BeliefMdp& h, const MultiStrategy& strat) {
  const std::size_t n = h.num_nodes();
  for (std::size_t c = 0; c < h.num_classes(); ++c) {
    auto members = h.class_members(ClassId(c));
    for (NodeId p : members) {
      auto a = strat.allowed(p);
      auto b = strat.allowed(members.front());
      if (!std::equal(a.begin(), a.end(), b.begin(), b.end()))
        return {false, "strategy is not equivalence-preserving", {members.front(), p}};
      for (JointAction act : a)
        if (!h.choice(p, act)) return {false, "strategy allows an action that is not offered", {p}};
    }
  }
  if (strat.defined_at(h.final_node())) return {false, "strategy is defined at the final node", {h.final_node()}};

  // (a) closure, with a witness path from q0 when the violation is reachable.
  std::vector<std::optional<NodeId>> parent(n);
  std::vector<char> seen(n, 0);
  std::deque<NodeId> work;
  if (strat.defined_at(h.initial_node())) {
    work.push_back(h.initial_node());
    seen[h.initial_node().index()] = 1;
  }
  std::vector<NodeId> order;
  while (!work.empty()) {
    NodeId u = work.front();
    work.pop_front();
    order.push_back(u);
    if (h.is_final(u)) continue;
    for (JointAction act : strat.allowed(u)) {
      for (const Successor& s : h.choice(u, act)->successors) {
        if (seen[s.target.index()]) continue;
        seen[s.target.index()] = 1;
        parent[s.target.index()] = u;
        if (!h.is_final(s.target) && !strat.defined_at(s.target))
          return {false, "allowed action leads outside the winning region", detail::path_to(parent, s.target)};
        work.push_back(s.target);
      }
    }
  }
  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i) {
    NodeId u(i);
    for (JointAction act : strat.allowed(u))
      for (const Successor& s : h.choice(u, act)->successors)
        if (!h.is_final(s.target) && !strat.defined_at(s.target))
          return {false, "allowed action leads outside the winning region", {u, s.target}};
  }

  // (b) backward reachability of q_F inside the induced graph.
  std::vector<char> reaches(n, 0);
  reaches[h.final_node().index()] = 1;
  std::deque<NodeId> back{h.final_node()};
  while (!back.empty()) {
    NodeId u = back.front();
    back.pop_front();
    for (const auto& [p, act] : h.predecessors(u)) {
      if (reaches[p.index()] || !strat.allows(p, act)) continue;
      reaches[p.index()] = 1;
      back.push_back(p);
    }
  }
  for (NodeId u : order)
    if (!reaches[u.index()])
      return {false, "node reachable from q0 cannot reach q_F under the strategy", detail::path_to(parent, u)};
  return {};
}

}  // namespace sagame

#endif  // SAGAME_SOLVER_P1_HPP
