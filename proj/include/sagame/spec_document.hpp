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

#ifndef SAGAME_SPEC_DOCUMENT_HPP
#define SAGAME_SPEC_DOCUMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "sagame/error.hpp"

namespace sagame {

// Name-level description of a game as written in a spec file. Nothing here
// is resolved or checked; validate_game() turns it into a Game.

struct StateDecl {
  std::string name;
  bool initial = false;
  bool goal = false;
  SourceLoc loc;
  friend bool operator==(const StateDecl&, const StateDecl&) = default;
};

struct ActionDecl {
  std::string name;
  SourceLoc loc;
  friend bool operator==(const ActionDecl&, const ActionDecl&) = default;
};

struct SuccessorDecl {
  std::string state;
  std::optional<double> weight;
  SourceLoc loc;
  friend bool operator==(const SuccessorDecl&, const SuccessorDecl&) = default;
};

struct TransitionDecl {
  std::string state;
  std::string action;
  std::vector<SuccessorDecl> successors;
  SourceLoc loc;
  friend bool operator==(const TransitionDecl&, const TransitionDecl&) = default;
};

struct SensorDecl {
  std::string name;
  std::vector<std::string> coverage;
  SourceLoc loc;
  friend bool operator==(const SensorDecl&, const SensorDecl&) = default;
};

struct QueryDecl {
  std::string name;
  std::vector<std::string> sensors;
  SourceLoc loc;
  friend bool operator==(const QueryDecl&, const QueryDecl&) = default;
};

struct AttackDecl {
  std::string name;
  std::vector<std::string> sensors;
  /// States at which the attack is available; every state when absent.
  std::optional<std::vector<std::string>> enabled_at;
  SourceLoc loc;
  friend bool operator==(const AttackDecl&, const AttackDecl&) = default;
};

struct GameSpecDocument {
  std::string name;
  std::vector<StateDecl> states;
  std::vector<ActionDecl> actions;
  std::vector<TransitionDecl> transitions;
  std::vector<SensorDecl> sensors;
  std::vector<QueryDecl> queries;
  std::vector<AttackDecl> attacks;
  friend bool operator==(const GameSpecDocument&, const GameSpecDocument&) = default;
};

}  // namespace sagame

#endif  // SAGAME_SPEC_DOCUMENT_HPP
