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

// Command-line front end for the sagame toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sagame/sagame.hpp"

namespace {

using namespace sagame;

constexpr int kOk = 0;
constexpr int kExpectFailed = 1;
constexpr int kInputError = 2;

struct Common {
  std::string spec;
  std::string format = "text";
  std::string expect;
  std::string output;
  bool trace = false;
  bool timing = false;
};

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + c.output + "'");
  out << text;
}

void report_error(const Error& e) {
  const std::vector<Diagnostic>* diags = nullptr;
  std::string stage;
  if (auto* p = dynamic_cast<const PipelineError*>(&e)) {
    diags = &p->diagnostics();
    stage = p->stage();
  } else if (auto* d = dynamic_cast<const DiagnosticError*>(&e)) {
    diags = &d->diagnostics();
  }
  if (!diags || diags->empty()) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return;
  }
  std::cerr << "error" << (stage.empty() ? "" : " in " + stage) << ": " << diags->size() << " problem(s)\n";
  for (const auto& d : *diags) std::cerr << "  " << d.str() << '\n';
}

// --expect values: win / lose refer to q0 in Win1, gap / no-gap to the
// deception gap.
int check_expect(const std::string& expect, const PipelineResult& r) {
  if (expect.empty()) return kOk;
  bool ok = false;
  if (expect == "win") ok = r.p1.initial_winning;
  else if (expect == "lose") ok = !r.p1.initial_winning;
  else if (expect == "gap") ok = !r.gap.empty();
  else if (expect == "no-gap") ok = r.gap.empty();
  if (!ok) std::cerr << "expectation '" << expect << "' not met\n";
  return ok ? kOk : kExpectFailed;
}

std::string p1_text(const PipelineResult& r, const ResultOptions& opt) {
  const Game& g = r.game();
  const BeliefMdp& h = r.belief;
  std::ostringstream out;
  out << "q0 = " << node_label(g, h, h.initial_node()) << (r.p1.initial_winning ? " is" : " is NOT")
      << " almost-sure winning for P1\n";
  out << "Win1 (" << r.p1.win1.size() << "):\n";
  for (NodeId q : r.p1.win1) {
    out << "  " << node_label(g, h, q) << " :";
    for (JointAction act : r.p1.strategy.allowed(q)) out << ' ' << action_label(g, act);
    out << '\n';
  }
  if (opt.trace) {
    out << "elimination trace:\n";
    for (const auto& s : r.p1.elimination_trace)
      out << "  [" << s.iteration << "] " << node_label(g, h, s.node) << " drops " << action_label(g, s.action)
          << " (reaches " << node_label(g, h, s.cause) << ")\n";
  }
  return out.str();
}

std::string gap_text(const PipelineResult& r) {
  const Game& g = r.game();
  std::ostringstream out;
  if (!r.p2) {
    out << "P2 stage skipped: P1 wins nowhere\n";
    return out.str();
  }
  out << "deception gap (" << r.gap.size() << "):\n";
  for (const auto& e : r.gap) out << "  " << node_label(g, r.belief, e.node) << " : " << g.name(e.attack) << '\n';
  return out.str();
}

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("-o,--output", c.output, "Write to a file instead of stdout");
}

void add_spec(CLI::App* cmd, Common& c) { cmd->add_option("spec", c.spec, "Game spec file")->required(); }

AttackPolicy parse_attack_policy(const std::string& text, const Game& g, const PipelineResult& r) {
  if (text == "strategy") {
    if (!r.p2) throw Error(ErrorCode::EmptyWin1, "no attack strategy: P1 wins nowhere");
    return TableAttack{r.p2->strategy};
  }
  if (text == "random") return RandomAttack{};
  if (text.rfind("fixed:", 0) == 0) {
    auto b = g.find_attack(text.substr(6));
    if (!b) throw Error(ErrorCode::UnknownId, "unknown attack '" + text.substr(6) + "'");
    return FixedAttack{*b};
  }
  if (text == "interactive") {
    return InteractiveAttack{[&g](const AttackContext& ctx) -> AttackId {
      for (;;) {
        std::cerr << g.name(ctx.from) << " (" << g.name(ctx.action.action) << ", " << g.name(ctx.action.query)
                  << ") -> " << g.name(ctx.next) << "; attack [";
        for (std::size_t k = 0; k < ctx.enabled.size(); ++k) std::cerr << (k ? " " : "") << g.name(ctx.enabled[k]);
        std::cerr << "]: " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) return ctx.enabled.front();
        if (line.empty()) return ctx.enabled.front();
        if (auto b = g.find_attack(line); b && g.attack_enabled(ctx.next, *b)) return *b;
        std::cerr << "not an enabled attack\n";
      }
    }};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown attack policy '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver toolkit for stochastic reachability games with sensor queries and sensor attacks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sagame 0.1.0");

  Common c;
  std::uint64_t seed = 0;
  std::size_t max_steps = 100;
  std::string attack = "strategy";
  std::size_t cap = 1'000'000;
  std::string model = "belief";
  DotStyle style;
  GeneratorParams gen;

  auto* validate = app.add_subcommand("validate", "Parse and validate a game spec");
  add_spec(validate, c);
  add_format(validate, c);

  auto* solve_p1_cmd = app.add_subcommand("solve-p1", "P1's almost-sure winning region and multi-strategy");
  auto* solve_p2_cmd = app.add_subcommand("solve-p2", "P2's almost-sure winning region against P1's strategy");
  auto* gap_cmd = app.add_subcommand("gap", "Nodes P1 believes winning that P2 wins almost surely");
  for (auto* cmd : {solve_p1_cmd, solve_p2_cmd, gap_cmd}) {
    add_spec(cmd, c);
    add_format(cmd, c);
    cmd->add_flag("--trace", c.trace, "Include the elimination trace");
    cmd->add_flag("--timing", c.timing, "Include stage timings (output is then not reproducible)");
    cmd->add_option("--expect", c.expect, "Exit 1 unless the verdict holds")
        ->check(CLI::IsMember({"win", "lose", "gap", "no-gap"}));
  }

  auto* simulate_cmd = app.add_subcommand("simulate", "Play the game with P1 following its computed strategy");
  add_spec(simulate_cmd, c);
  add_format(simulate_cmd, c);
  simulate_cmd->add_option("--seed", seed, "Random seed");
  simulate_cmd->add_option("--max-steps", max_steps, "Step limit");
  simulate_cmd->add_option("--attack", attack, "strategy, random, fixed:NAME or interactive");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force check of whether q0 is almost-sure winning");
  add_spec(oracle_cmd, c);
  add_format(oracle_cmd, c);
  oracle_cmd->add_option("--cap", cap, "Maximum number of assignments examined");
  oracle_cmd->add_option("--expect", c.expect, "Exit 1 unless the verdict holds")
      ->check(CLI::IsMember({"win", "lose"}));

  auto* gen_cmd = app.add_subcommand("gen-random", "Write a seeded random game spec");
  gen_cmd->add_option("--states", gen.n_states);
  gen_cmd->add_option("--actions", gen.n_actions);
  gen_cmd->add_option("--sensors", gen.n_sensors);
  gen_cmd->add_option("--queries", gen.n_queries);
  gen_cmd->add_option("--attacks", gen.n_attacks, "Attack count, the empty attack included");
  gen_cmd->add_option("--max-support", gen.max_support);
  gen_cmd->add_option("--goal-fraction", gen.goal_fraction);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("-o,--output", c.output, "Write to a file instead of stdout");

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of the belief or attacker MDP");
  add_spec(dot_cmd, c);
  dot_cmd->add_option("--model", model)->check(CLI::IsMember({"belief", "attacker"}));
  dot_cmd->add_flag("--strategy-only", style.strategy_only, "Only edges of allowed actions");
  dot_cmd->add_flag("--winning-only", style.winning_only, "Only winning nodes");
  dot_cmd->add_option("-o,--output", c.output, "Write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      emit(c, serialize_spec(generate_spec(gen)));
      return kOk;
    }

    if (validate->parsed()) {
      ValidatedGame vg = [&] {
        try {
          return validate_game(parse_spec_file(c.spec));
        } catch (const Error& e) {
          throw PipelineError("validate", e);
        }
      }();
      const Game& g = vg.game;
      if (c.format == "structured") {
        nlohmann::ordered_json doc{{"format", "sagame-validation"},
                                   {"version", kResultVersion},
                                   {"valid", true},
                                   {"title", g.title()},
                                   {"digest", game_digest(g)},
                                   {"states", g.num_states()},
                                   {"actions", g.num_actions()},
                                   {"sensors", g.num_sensors()},
                                   {"queries", g.num_queries()},
                                   {"attacks", g.num_attacks()},
                                   {"warnings", nlohmann::ordered_json::array()}};
        for (const auto& w : vg.warnings) doc["warnings"].push_back(w.str());
        emit(c, doc.dump(2) + "\n");
      } else {
        std::ostringstream out;
        out << c.spec << ": ok (" << g.num_states() << " states, " << g.num_actions() << " actions, "
            << g.num_sensors() << " sensors, " << g.num_queries() << " queries, " << g.num_attacks()
            << " attacks)\n";
        for (const auto& w : vg.warnings) out << "warning: " << w.str() << '\n';
        emit(c, out.str());
      }
      return kOk;
    }

    PipelineResult r = run_pipeline(c.spec);
    const Game& g = r.game();

    if (solve_p1_cmd->parsed() || solve_p2_cmd->parsed() || gap_cmd->parsed()) {
      ResultOptions opt{c.trace, c.timing};
      if (c.format == "structured") {
        emit(c, result_json(r, opt).dump(2) + "\n");
      } else if (solve_p1_cmd->parsed()) {
        emit(c, p1_text(r, opt));
      } else if (gap_cmd->parsed()) {
        emit(c, gap_text(r));
      } else {
        emit(c, result_text(r, opt));
      }
      return check_expect(c.expect, r);
    }

    if (simulate_cmd->parsed()) {
      AttackPolicy policy = parse_attack_policy(attack, g, r);
      PlayTrace t = simulate(g, r.belief, r.p1.strategy, policy, {max_steps, seed});
      emit(c, c.format == "structured" ? trace_json(g, t).dump(2) + "\n" : trace_text(g, t));
      return kOk;
    }

    if (oracle_cmd->parsed()) {
      OracleVerdict v = brute_force_win1(r.belief, cap);
      const bool agrees = v.initial_winning == r.p1.initial_winning;
      if (c.format == "structured") {
        nlohmann::ordered_json doc{{"format", "sagame-oracle"},
                                   {"version", kResultVersion},
                                   {"digest", r.digest},
                                   {"oracle_q0_winning", v.initial_winning},
                                   {"solver_q0_winning", r.p1.initial_winning},
                                   {"agree", agrees},
                                   {"assignments", v.assignments}};
        emit(c, doc.dump(2) + "\n");
      } else {
        std::ostringstream out;
        out << "oracle: q0 " << (v.initial_winning ? "is" : "is NOT") << " almost-sure winning (" << v.assignments
            << " assignments)\nsolver: q0 " << (r.p1.initial_winning ? "is" : "is NOT")
            << " almost-sure winning\n" << (agrees ? "agree" : "DISAGREE") << '\n';
        emit(c, out.str());
      }
      if (!agrees) return kExpectFailed;
      if (c.expect == "win" && !v.initial_winning) return kExpectFailed;
      if (c.expect == "lose" && v.initial_winning) return kExpectFailed;
      return kOk;
    }

    if (dot_cmd->parsed()) {
      if (model == "belief") {
        emit(c, export_dot(g, r.belief, &r.p1, style));
      } else {
        if (!r.attacker) throw Error(ErrorCode::EmptyWin1, "no attacker MDP: P1 wins nowhere");
        emit(c, export_dot(g, r.belief, *r.attacker, &*r.p2, style));
      }
      return kOk;
    }
  } catch (const Error& e) {
    report_error(e);
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
