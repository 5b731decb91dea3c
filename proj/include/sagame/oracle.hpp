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

#ifndef SAGAME_ORACLE_HPP
#define SAGAME_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "sagame/belief_mdp.hpp"
#include "sagame/game.hpp"

namespace sagame {

struct GeneratorParams {
  std::size_t n_states = 4;
  std::size_t n_actions = 2;
  std::size_t n_sensors = 2;
  std::size_t n_queries = 2;
  std::size_t n_attacks = 3;  // includes the empty attack
  std::size_t max_support = 2;
  double goal_fraction = 0.25;
  std::uint64_t seed = 0;
};

namespace detail {

// Seeded stream over raw mt19937_64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace detail

/// Random game spec, a pure function of `p`. Attack "none" (jams nothing,
/// available everywhere) is always the first attack; the other attacks jam
/// at least one sensor and are each disabled at roughly a quarter of the
/// states.
inline GameSpecDocument generate_spec(const GeneratorParams& p) {
  if (p.n_states == 0 || p.n_actions == 0 || p.n_sensors == 0 || p.n_queries == 0 || p.n_attacks == 0)
    throw Error(ErrorCode::InvalidArgument, "generator counts must be at least 1");
  if (p.max_support == 0 || p.max_support > p.n_states)
    throw Error(ErrorCode::InvalidArgument, "max_support must be in [1, n_states]");
  if (!(p.goal_fraction >= 0.0 && p.goal_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "goal_fraction must be in [0, 1]");

  detail::Rng rng(p.seed);
  GameSpecDocument doc;
  doc.name = "random-" + std::to_string(p.seed);
  auto sname = [](std::size_t i) { return "s" + std::to_string(i); };
  auto aname = [](std::size_t i) { return "a" + std::to_string(i); };
  auto cname = [](std::size_t i) { return "c" + std::to_string(i); };

  std::vector<std::size_t> order(p.n_states);
  for (std::size_t i = 0; i < p.n_states; ++i) order[i] = i;
  rng.shuffle(order);
  const auto n_goal = static_cast<std::size_t>(std::lround(p.goal_fraction * static_cast<double>(p.n_states)));
  std::vector<char> goal(p.n_states, 0);
  for (std::size_t k = 0; k < n_goal && k < p.n_states; ++k) goal[order[k]] = 1;

  for (std::size_t s = 0; s < p.n_states; ++s) doc.states.push_back({sname(s), s == 0, goal[s] != 0, {}});
  for (std::size_t a = 0; a < p.n_actions; ++a) doc.actions.push_back({aname(a), {}});

  for (std::size_t s = 0; s < p.n_states; ++s) {
    std::vector<char> on(p.n_actions, 0);
    bool any = false;
    for (std::size_t a = 0; a < p.n_actions; ++a) {
      on[a] = rng.chance(3, 4);
      any = any || on[a];
    }
    if (!any) on[rng.below(p.n_actions)] = 1;
    for (std::size_t a = 0; a < p.n_actions; ++a) {
      if (!on[a]) continue;
      std::vector<std::size_t> targets(p.n_states);
      for (std::size_t i = 0; i < p.n_states; ++i) targets[i] = i;
      rng.shuffle(targets);
      targets.resize(1 + rng.below(p.max_support));
      std::sort(targets.begin(), targets.end());
      TransitionDecl t{sname(s), aname(a), {}, {}};
      for (auto x : targets) t.successors.push_back({sname(x), std::nullopt, {}});
      doc.transitions.push_back(std::move(t));
    }
  }

  for (std::size_t i = 0; i < p.n_sensors; ++i) {
    SensorDecl d{cname(i), {}, {}};
    for (std::size_t s = 0; s < p.n_states; ++s)
      if (rng.chance(1, 2)) d.coverage.push_back(sname(s));
    doc.sensors.push_back(std::move(d));
  }
  for (std::size_t q = 0; q < p.n_queries; ++q) {
    QueryDecl d{"q" + std::to_string(q), {}, {}};
    for (std::size_t i = 0; i < p.n_sensors; ++i)
      if (rng.chance(1, 2)) d.sensors.push_back(cname(i));
    doc.queries.push_back(std::move(d));
  }
  doc.attacks.push_back({"none", {}, std::nullopt, {}});
  for (std::size_t b = 1; b < p.n_attacks; ++b) {
    AttackDecl d{"b" + std::to_string(b), {}, std::nullopt, {}};
    for (std::size_t i = 0; i < p.n_sensors; ++i)
      if (rng.chance(1, 2)) d.sensors.push_back(cname(i));
    if (d.sensors.empty()) d.sensors.push_back(cname(rng.below(p.n_sensors)));
    std::vector<std::string> at;
    for (std::size_t s = 0; s < p.n_states; ++s)
      if (rng.chance(3, 4)) at.push_back(sname(s));
    if (at.size() != p.n_states) d.enabled_at = std::move(at);
    doc.attacks.push_back(std::move(d));
  }
  return doc;
}

inline Game generate_game(const GeneratorParams& p) { return validate_game(generate_spec(p)).game; }

struct OracleVerdict {
  bool initial_winning = false;
  std::size_t assignments = 0;  // complete or rejected partial assignments examined
};

namespace detail {

class BruteForce {
 public:
  BruteForce(const BeliefMdp& h, std::size_t cap) : h_(h), cap_(cap), choice_(h.num_classes(), 0) {
    // Own backward reachability over the unrestricted graph; prunes partial
    // assignments that already reach a node with no path to q_F.
    dead_.assign(h.num_nodes(), 1);
    dead_[h.final_node().index()] = 0;
    std::deque<NodeId> work{h.final_node()};
    while (!work.empty()) {
      NodeId u = work.front();
      work.pop_front();
      for (const auto& [p, _] : h.predecessors(u))
        if (dead_[p.index()]) {
          dead_[p.index()] = 0;
          work.push_back(p);
        }
    }
    for (std::size_t c = 0; c < h.num_classes(); ++c) {
      const std::size_t k = h.choices(h.class_members(ClassId(c)).front()).size();
      if (k > 20) throw Error(ErrorCode::CapExceeded, "a belief offers more than 20 actions");
    }
  }

  bool search() {
    // Expand everything reachable from q0 through assigned classes.
    const std::size_t n = h_.num_nodes();
    std::vector<char> seen(n, 0);
    std::vector<NodeId> reached;
    std::deque<NodeId> work{h_.initial_node()};
    seen[h_.initial_node().index()] = 1;
    std::optional<ClassId> open;
    while (!work.empty()) {
      NodeId u = work.front();
      work.pop_front();
      reached.push_back(u);
      if (h_.is_final(u)) continue;
      if (dead_[u.index()]) return reject();
      const ClassId c = h_.class_of(u);
      const auto choices = h_.choices(u);
      if (choices.empty()) return reject();
      const std::uint32_t mask = choice_[c.index()];
      if (mask == 0) {
        if (!open || c < *open) open = c;
        continue;
      }
      for (std::size_t k = 0; k < choices.size(); ++k) {
        if (!(mask >> k & 1u)) continue;
        for (const Successor& s : choices[k].successors)
          if (!seen[s.target.index()]) {
            seen[s.target.index()] = 1;
            work.push_back(s.target);
          }
      }
    }
    if (open) {
      const std::size_t k = h_.choices(h_.class_members(*open).front()).size();
      for (std::uint32_t mask = (1u << k) - 1; mask >= 1; --mask) {
        choice_[open->index()] = mask;
        if (search()) return true;
      }
      choice_[open->index()] = 0;
      return false;
    }
    bump();
    return certify(reached, seen);
  }

  std::size_t count() const { return count_; }

 private:
  bool reject() {
    bump();
    return false;
  }

  void bump() {
    if (++count_ > cap_) throw Error(ErrorCode::CapExceeded, "brute-force oracle exceeded its assignment cap");
  }

  // Every reached node must reach q_F using only the chosen actions.
  bool certify(const std::vector<NodeId>& reached, const std::vector<char>& in_play) const {
    const std::size_t n = h_.num_nodes();
    std::vector<char> good(n, 0);
    good[h_.final_node().index()] = 1;
    for (bool changed = true; changed;) {
      changed = false;
      for (NodeId u : reached) {
        if (good[u.index()] || h_.is_final(u)) continue;
        const auto choices = h_.choices(u);
        const std::uint32_t mask = choice_[h_.class_of(u).index()];
        for (std::size_t k = 0; k < choices.size() && !good[u.index()]; ++k) {
          if (!(mask >> k & 1u)) continue;
          for (const Successor& s : choices[k].successors)
            if (in_play[s.target.index()] && good[s.target.index()]) {
              good[u.index()] = 1;
              changed = true;
              break;
            }
        }
      }
    }
    for (NodeId u : reached)
      if (!good[u.index()]) return false;
    return true;
  }

  const BeliefMdp& h_;
  std::size_t cap_;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> choice_;  // per class: bitmask over offered actions, 0 = unassigned
  std::vector<char> dead_;
};

}  // namespace detail

/// Exhaustive check of whether q0 is almost-sure winning: tries every
/// assignment of a nonempty set of offered actions to each equivalence
/// class met from q0, and accepts when every node reachable under the
/// assignment can still reach q_F. Throws CapExceeded past `cap`
/// assignments.
inline OracleVerdict brute_force_win1(const BeliefMdp& h, std::size_t cap = 1'000'000) {
  detail::BruteForce bf(h, cap);
  const bool win = bf.search();
  return {win, bf.count()};
}

}  // namespace sagame

#endif  // SAGAME_ORACLE_HPP
