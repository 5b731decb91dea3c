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

#ifndef SAGAME_SIM_HPP
#define SAGAME_SIM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sagame/belief_mdp.hpp"
#include "sagame/observation.hpp"
#include "sagame/oracle.hpp"
#include "sagame/solver_p1.hpp"
#include "sagame/solver_p2.hpp"

namespace sagame {

enum class PlayOutcome { TaskKnownComplete, StepLimit };

inline std::string_view to_string(PlayOutcome o) {
  return o == PlayOutcome::TaskKnownComplete ? "TaskKnownComplete" : "StepLimit";
}

/// One round s a σ β s': P1's move from `from`, the successor `to`, P2's
/// attack and what P1 saw.
struct PlayStep {
  StateId from;
  JointAction action;
  StateId to;
  AttackId attack;
  std::string readings;  // per queried sensor: T, F or ? when jammed
  Observation observation;
  StateSet belief;  // after the update

  friend bool operator==(const PlayStep&, const PlayStep&) = default;
};

struct PlayTrace {
  StateId start;
  std::vector<PlayStep> steps;
  PlayOutcome outcome = PlayOutcome::StepLimit;
  std::uint64_t seed = 0;

  friend bool operator==(const PlayTrace&, const PlayTrace&) = default;
};

/// What P2 knows when choosing an attack: everything.
struct AttackContext {
  StateId from;
  const StateSet& belief;
  std::optional<NodeId> node;  // (from, belief) in the belief MDP, if present
  JointAction action;
  StateId next;
  std::span<const AttackId> enabled;
};

struct FixedAttack {
  AttackId attack;
};
struct RandomAttack {};
struct TableAttack {
  AttackStrategy strategy;
};
struct InteractiveAttack {
  std::function<AttackId(const AttackContext&)> choose;
};

/// Fixed and table policies fall back to the lowest enabled attack when
/// their pick is unavailable at the successor state.
using AttackPolicy = std::variant<FixedAttack, RandomAttack, TableAttack, InteractiveAttack>;

struct SimOptions {
  std::size_t max_steps = 100;
  std::uint64_t seed = 0;
};

/// Plays the game with P1 sampling uniformly from its allowed set at the
/// current belief and P2 following `p2`. Unweighted supports are sampled
/// uniformly. Ends once the belief lies inside the goal set (P1 knows the
/// task is done) or after `max_steps` rounds. Throws StrategyGap when P1's
/// strategy allows nothing at a belief the play reaches.
inline PlayTrace simulate(const Game& g, const BeliefMdp& h, const MultiStrategy& p1, const AttackPolicy& p2,
                          const SimOptions& opt) {
  detail::Rng rng(opt.seed);
  PlayTrace trace;
  trace.seed = opt.seed;
  trace.start = g.initial();
  StateId s = g.initial();
  StateSet belief{s};

  for (std::size_t t = 0; t < opt.max_steps; ++t) {
    if (belief.is_subset_of(g.goal())) break;
    auto cls = h.find_class(belief);
    std::span<const JointAction> allowed;
    if (cls) allowed = p1.allowed(h.class_members(*cls).front());
    if (allowed.empty())
      throw Error(ErrorCode::StrategyGap, "strategy allows no action at belief of " + g.name(s) + " after " +
                                              std::to_string(t) + " steps");
    const JointAction act = allowed[rng.below(allowed.size())];

    const Transition* tr = g.transition(s, act.action);
    if (!tr) throw Error(ErrorCode::DisabledAction, "sampled action disabled at the true state");
    StateId next;
    if (tr->weights.empty()) {
      next = tr->successors.members()[rng.below(tr->successors.size())];
    } else {
      double total = 0;
      for (double w : tr->weights) total += w;
      double u = rng.unit() * total;
      std::size_t k = 0;
      for (; k + 1 < tr->weights.size(); ++k) {
        if (u < tr->weights[k]) break;
        u -= tr->weights[k];
      }
      next = tr->successors.members()[k];
    }

    const auto enabled = g.enabled_attacks(next);
    AttackContext ctx{s, belief, h.find(s, belief), act, next, enabled};
    auto fallback = [&](std::optional<AttackId> pick) {
      return pick && g.attack_enabled(next, *pick) ? *pick : enabled.front();
    };
    const AttackId b = std::visit(
        [&](const auto& pol) -> AttackId {
          using P = std::decay_t<decltype(pol)>;
          if constexpr (std::is_same_v<P, FixedAttack>) {
            return fallback(pol.attack);
          } else if constexpr (std::is_same_v<P, RandomAttack>) {
            return enabled[rng.below(enabled.size())];
          } else if constexpr (std::is_same_v<P, TableAttack>) {
            return fallback(ctx.node ? pol.strategy.at(*ctx.node) : std::nullopt);
          } else {
            return fallback(pol.choose(ctx));
          }
        },
        p2);

    PlayStep step{s, act, next, b, sensor_readings(g, next, act.query, b), get_observation(g, next, act.query, b), {}};
    step.belief = set_intersection(post_belief(g, belief, act.action), step.observation);
    belief = step.belief;
    s = next;
    trace.steps.push_back(std::move(step));
  }
  trace.outcome = belief.is_subset_of(g.goal()) ? PlayOutcome::TaskKnownComplete : PlayOutcome::StepLimit;
  return trace;
}

}  // namespace sagame

#endif  // SAGAME_SIM_HPP
