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

#ifndef SAGAME_DOT_EXPORT_HPP
#define SAGAME_DOT_EXPORT_HPP

#include <string>

#include "sagame/belief_mdp.hpp"
#include "sagame/solver_p1.hpp"
#include "sagame/solver_p2.hpp"

namespace sagame {

struct DotStyle {
  /// Belief MDP: draw only actions the strategy allows (needs a report).
  bool strategy_only = false;
  /// Belief MDP: drop nodes outside P1's winning region (needs a report).
  bool winning_only = false;
  /// Fill colour for highlighted nodes (P1-winning or the deception gap).
  std::string highlight = "#f4cccc";
};

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

inline std::string dot_node_label(const Game& g, const BeliefMdp& h, NodeId q) {
  const BeliefNode& n = h.node(q);
  if (n.is_final()) return "q_F";
  std::string out = g.name(n.state) + ", {";
  bool first = true;
  for (StateId s : n.belief) {
    if (!first) out += ", ";
    out += g.name(s);
    first = false;
  }
  return out + "}";
}

inline std::string attack_set_label(const Game& g, const std::vector<AttackId>& atts) {
  if (atts.empty()) return "·";
  std::string out;
  for (AttackId b : atts) {
    if (!out.empty()) out += ',';
    out += g.name(b);
  }
  return atts.size() == 1 ? out : "{" + out + "}";
}

}  // namespace detail

/// P1's belief MDP. Nodes are "s, {B}", edges "(a, σ), attacks"; q_F is
/// double-circled. With a report, winning nodes are shaded.
inline std::string export_dot(const Game& g, const BeliefMdp& h, const SolveReport* report = nullptr,
                              const DotStyle& style = {}) {
  std::string out = "digraph belief_mdp {\n";
  auto keep = [&](NodeId q) {
    return h.is_final(q) || !style.winning_only || !report || report->winning(q);
  };
  std::string body;
  for (std::size_t i = 0; i < h.num_nodes(); ++i) {
    NodeId q(i);
    if (!keep(q)) continue;
    body += "  n" + std::to_string(i) + " [label=" + detail::dot_quote(detail::dot_node_label(g, h, q));
    if (h.is_final(q)) body += ", shape=doublecircle";
    if (q == h.initial_node()) body += ", penwidth=2";
    if (report && report->winning(q)) body += ", style=filled, fillcolor=" + detail::dot_quote(style.highlight);
    body += "];\n";
  }
  for (std::size_t i = 0; i < h.num_pair_nodes(); ++i) {
    NodeId q(i);
    if (!keep(q)) continue;
    for (const Choice& c : h.choices(q)) {
      if (style.strategy_only && report && !report->strategy.allows(q, c.action)) continue;
      for (const Successor& s : c.successors) {
        if (!keep(s.target)) continue;
        body += "  n" + std::to_string(i) + " -> n" + std::to_string(s.target.index()) + " [label=" +
                detail::dot_quote(action_label(g, c.action) + ", " + detail::attack_set_label(g, s.attacks)) + "];\n";
      }
    }
  }
  if (!body.empty()) out += "  rankdir=LR;\n  node [shape=ellipse];\n" + body;
  return out + "}\n";
}

/// P2's attacker MDP. Nodes of P2's winning region (the deception gap) are
/// shaded; the task-complete event is a double-circled "done" node.
inline std::string export_dot(const Game& g, const BeliefMdp& h, const AttackerMdp& m,
                              const SafetyResult* p2 = nullptr, const DotStyle& style = {}) {
  std::string out = "digraph attacker_mdp {\n";
  std::string body;
  bool any_done = false;
  for (NodeId q : m.nodes()) {
    body += "  n" + std::to_string(q.index()) + " [label=" + detail::dot_quote(detail::dot_node_label(g, h, q));
    if (q == h.initial_node()) body += ", penwidth=2";
    if (p2 && p2->contains(q)) body += ", style=filled, fillcolor=" + detail::dot_quote(style.highlight);
    body += "];\n";
  }
  std::string edges;
  for (NodeId q : m.nodes()) {
    for (const AttackChoice& c : m.choices(q)) {
      for (const AttackOutcome& o : c.outcomes) {
        std::string via;
        for (const Inducer& x : o.via) {
          std::string a = action_label(g, x.action);
          if (via.find(a) != std::string::npos) continue;
          if (!via.empty()) via += " ";
          via += a;
        }
        std::string target = o.completes_task() ? std::string("done") : "n" + std::to_string(o.target->index());
        any_done = any_done || o.completes_task();
        edges += "  n" + std::to_string(q.index()) + " -> " + target + " [label=" +
                 detail::dot_quote(via.empty() ? g.name(c.attack) : via + ", " + g.name(c.attack)) + "];\n";
      }
    }
  }
  if (any_done) body += "  done [label=\"done\", shape=doublecircle];\n";
  body += edges;
  if (!body.empty()) out += "  rankdir=LR;\n  node [shape=ellipse];\n" + body;
  return out + "}\n";
}

}  // namespace sagame

#endif  // SAGAME_DOT_EXPORT_HPP
