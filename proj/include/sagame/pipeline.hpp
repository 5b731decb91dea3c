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

#ifndef SAGAME_PIPELINE_HPP
#define SAGAME_PIPELINE_HPP

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "sagame/belief_mdp.hpp"
#include "sagame/game.hpp"
#include "sagame/sim.hpp"
#include "sagame/solver_p1.hpp"
#include "sagame/solver_p2.hpp"
#include "sagame/spec_format.hpp"

namespace sagame {

inline constexpr int kResultVersion = 1;

/// Error from one pipeline stage; what() is prefixed with the stage name.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const Error& cause)
      : Error(cause.code(), stage + ": " + cause.what()), stage_(std::move(stage)) {
    if (auto* d = dynamic_cast<const DiagnosticError*>(&cause)) diagnostics_ = d->diagnostics();
  }
  const std::string& stage() const { return stage_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::string stage_;
  std::vector<Diagnostic> diagnostics_;
};

/// "sha256:<hex>" of the canonical serialization, so comments, layout and
/// weights-free formatting differences do not change it.
inline std::string game_digest(const Game& g) {
  const std::string canon = serialize_spec(to_document(g));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canon.data(), canon.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InvalidArgument, "sha256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

struct StageTimes {
  double validate_ms = 0, belief_ms = 0, p1_ms = 0, p2_ms = 0;
};

struct PipelineResult {
  ValidatedGame validated;
  BeliefMdp belief;
  SolveReport p1;
  std::optional<AttackerMdp> attacker;
  std::optional<SafetyResult> p2;
  std::vector<GapEntry> gap;
  std::string digest;
  StageTimes times;

  const Game& game() const { return validated.game; }
};

/// validate, build the belief MDP, solve for P1, then (when P1 wins
/// anywhere) build and solve P2's attacker MDP and extract the gap.
inline PipelineResult run_pipeline(const GameSpecDocument& doc) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw PipelineError(name, e);
    }
  };

  auto t0 = clock::now();
  ValidatedGame vg = stage("validate", [&] { return validate_game(doc); });
  auto t1 = clock::now();
  BeliefMdp h = stage("belief", [&] { return build_belief_mdp(vg.game); });
  auto t2 = clock::now();
  SolveReport rep = stage("solve-p1", [&] { return solve_p1(h); });
  auto t3 = clock::now();
  PipelineResult r{std::move(vg), std::move(h), std::move(rep), std::nullopt, std::nullopt, {}, {}, {}};
  r.digest = game_digest(r.game());
  if (!r.p1.win1.empty()) {
    stage("solve-p2", [&] {
      r.attacker = build_attacker_mdp(r.game(), r.belief, r.p1);
      r.p2 = solve_p2_safety(*r.attacker);
      r.gap = deception_gap(r.p1, *r.p2);
      return 0;
    });
  }
  auto t4 = clock::now();
  r.times = {ms(t0, t1), ms(t1, t2), ms(t2, t3), ms(t3, t4)};
  return r;
}

inline PipelineResult run_pipeline(const std::string& path) {
  GameSpecDocument doc;
  try {
    doc = parse_spec_file(path);
  } catch (const Error& e) {
    throw PipelineError("parse", e);
  }
  return run_pipeline(doc);
}

struct ResultOptions {
  bool trace = false;
  bool timing = false;  // off by default: timings break byte-identical output
};

/// Structured result document. Deterministic for identical inputs unless
/// timing is requested.
inline nlohmann::ordered_json result_json(const PipelineResult& r, const ResultOptions& opt = {}) {
  using nlohmann::ordered_json;
  const Game& g = r.game();
  const BeliefMdp& h = r.belief;
  auto names = [&](const StateSet& s) {
    ordered_json a = ordered_json::array();
    for (StateId x : s) a.push_back(g.name(x));
    return a;
  };

  ordered_json doc;
  doc["format"] = "sagame-result";
  doc["version"] = kResultVersion;
  doc["game"] = {{"title", g.title()},
                 {"digest", r.digest},
                 {"states", g.num_states()},
                 {"actions", g.num_actions()},
                 {"sensors", g.num_sensors()},
                 {"queries", g.num_queries()},
                 {"attacks", g.num_attacks()},
                 {"weights_present", g.has_weights()},
                 {"weights_used_by_solvers", false}};
  doc["belief_mdp"] = {{"pair_nodes", h.num_pair_nodes()}, {"classes", h.num_classes()}};

  const NodeId q0 = h.initial_node();
  ordered_json verdict;
  verdict["initial_node"] = node_label(g, h, q0);
  verdict["q0_in_win1"] = r.p1.initial_winning;
  if (r.p2) verdict["q0_in_win2"] = r.p2->contains(q0); else verdict["q0_in_win2"] = nullptr;
  verdict["p2_stage_run"] = r.p2.has_value();
  verdict["gap_size"] = r.gap.size();
  doc["verdict"] = verdict;

  ordered_json win1 = ordered_json::array();
  for (NodeId q : r.p1.win1) {
    ordered_json allowed = ordered_json::array();
    for (JointAction act : r.p1.strategy.allowed(q)) allowed.push_back({g.name(act.action), g.name(act.query)});
    win1.push_back({{"node", node_label(g, h, q)},
                    {"state", g.name(h.node(q).state)},
                    {"belief", names(h.node(q).belief)},
                    {"allowed", allowed}});
  }
  doc["win1"] = win1;

  if (r.p2) {
    ordered_json win2 = ordered_json::array();
    for (NodeId q : r.p2->win2) win2.push_back(node_label(g, h, q));
    doc["win2"] = win2;
    ordered_json strat = ordered_json::array();
    for (const auto& [q, b] : r.p2->strategy.choice) strat.push_back({{"node", node_label(g, h, q)}, {"attack", g.name(b)}});
    doc["attack_strategy"] = strat;
  } else {
    doc["win2"] = nullptr;
    doc["attack_strategy"] = nullptr;
  }
  ordered_json gap = ordered_json::array();
  for (const auto& e : r.gap) gap.push_back({{"node", node_label(g, h, e.node)}, {"attack", g.name(e.attack)}});
  doc["gap"] = gap;

  ordered_json warnings = ordered_json::array();
  for (const auto& w : r.validated.warnings) warnings.push_back(w.str());
  doc["warnings"] = warnings;

  if (opt.trace) {
    ordered_json tr = ordered_json::array();
    for (const auto& s : r.p1.elimination_trace)
      tr.push_back({{"iteration", s.iteration},
                    {"node", node_label(g, h, s.node)},
                    {"removed", {g.name(s.action.action), g.name(s.action.query)}},
                    {"cause", node_label(g, h, s.cause)}});
    doc["elimination_trace"] = tr;
  }
  if (opt.timing) {
    doc["timing_ms"] = {{"validate", r.times.validate_ms},
                        {"belief", r.times.belief_ms},
                        {"solve_p1", r.times.p1_ms},
                        {"solve_p2", r.times.p2_ms}};
  }
  return doc;
}

/// Human-readable report of the same content.
inline std::string result_text(const PipelineResult& r, const ResultOptions& opt = {}) {
  const Game& g = r.game();
  const BeliefMdp& h = r.belief;
  std::ostringstream out;
  out << "game " << (g.title().empty() ? "(untitled)" : g.title()) << "  " << r.digest << "\n";
  out << "belief MDP: " << h.num_pair_nodes() << " nodes, " << h.num_classes() << " classes\n";
  out << "q0 = " << node_label(g, h, h.initial_node()) << (r.p1.initial_winning ? " is" : " is NOT")
      << " almost-sure winning for P1\n";
  out << "Win1 (" << r.p1.win1.size() << "):\n";
  for (NodeId q : r.p1.win1) {
    out << "  " << node_label(g, h, q) << " :";
    for (JointAction act : r.p1.strategy.allowed(q)) out << ' ' << action_label(g, act);
    out << '\n';
  }
  if (r.p2) {
    out << "Win2 (" << r.p2->win2.size() << "):\n";
    for (NodeId q : r.p2->win2) out << "  " << node_label(g, h, q) << " : " << g.name(*r.p2->strategy.at(q)) << '\n';
    out << "deception gap (" << r.gap.size() << "):\n";
    for (const auto& e : r.gap) out << "  " << node_label(g, h, e.node) << " : " << g.name(e.attack) << '\n';
  } else {
    out << "P2 stage skipped: P1 wins nowhere\n";
  }
  if (opt.trace) {
    out << "elimination trace:\n";
    for (const auto& s : r.p1.elimination_trace)
      out << "  [" << s.iteration << "] " << node_label(g, h, s.node) << " drops " << action_label(g, s.action)
          << " (reaches " << node_label(g, h, s.cause) << ")\n";
  }
  for (const auto& w : r.validated.warnings) out << "warning: " << w.str() << '\n';
  if (opt.timing)
    out << "timing (ms): validate " << r.times.validate_ms << ", belief " << r.times.belief_ms << ", p1 "
        << r.times.p1_ms << ", p2 " << r.times.p2_ms << '\n';
  return out.str();
}

/// One record per step.
inline nlohmann::ordered_json trace_json(const Game& g, const PlayTrace& t) {
  auto names = [&](const StateSet& s) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (StateId x : s) a.push_back(g.name(x));
    return a;
  };
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& st : t.steps)
    steps.push_back({{"state", g.name(st.from)},
                     {"action", g.name(st.action.action)},
                     {"query", g.name(st.action.query)},
                     {"next", g.name(st.to)},
                     {"attack", g.name(st.attack)},
                     {"readings", st.readings},
                     {"observation", names(st.observation)},
                     {"belief", names(st.belief)}});
  nlohmann::ordered_json doc;
  doc["format"] = "sagame-trace";
  doc["version"] = kResultVersion;
  doc["seed"] = t.seed;
  doc["start"] = g.name(t.start);
  doc["outcome"] = std::string(to_string(t.outcome));
  doc["length"] = t.steps.size();
  doc["steps"] = steps;
  return doc;
}

inline std::string trace_text(const Game& g, const PlayTrace& t) {
  auto set = [&](const StateSet& s) {
    std::string out = "{";
    bool first = true;
    for (StateId x : s) {
      if (!first) out += ',';
      out += g.name(x);
      first = false;
    }
    return out + "}";
  };
  std::ostringstream out;
  out << "seed " << t.seed << ", start " << g.name(t.start) << '\n';
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& st = t.steps[i];
    out << i << ": " << g.name(st.from) << " (" << g.name(st.action.action) << ", " << g.name(st.action.query)
        << ") -> " << g.name(st.to) << "  attack " << g.name(st.attack) << "  read [" << st.readings << "]  obs "
        << set(st.observation) << "  belief " << set(st.belief) << '\n';
  }
  out << to_string(t.outcome) << " after " << t.steps.size() << " step(s)\n";
  return out.str();
}

}  // namespace sagame

#endif  // SAGAME_PIPELINE_HPP
