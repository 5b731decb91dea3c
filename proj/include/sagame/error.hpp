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

#ifndef SAGAME_ERROR_HPP
#define SAGAME_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sagame {

enum class ErrorCode {
  // game-spec text
  SyntaxError,
  UnknownField,
  DuplicateDefinition,
  // game validation
  UnknownId,
  EmptySupport,
  NoEnabledAction,
  EmptyAttackSet,
  DuplicateName,
  MissingInitial,
  InvalidWeight,
  // validation warnings
  EmptyCoverage,
  EmptyGoal,
  // runtime queries
  DisabledAction,
  FinalHasNoClass,
  EmptyWin1,
  CapExceeded,
  StrategyGap,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::DuplicateDefinition: return "DuplicateDefinition";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::NoEnabledAction: return "NoEnabledAction";
    case ErrorCode::EmptyAttackSet: return "EmptyAttackSet";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::MissingInitial: return "MissingInitial";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::EmptyCoverage: return "EmptyCoverage";
    case ErrorCode::EmptyGoal: return "EmptyGoal";
    case ErrorCode::DisabledAction: return "DisabledAction";
    case ErrorCode::FinalHasNoClass: return "FinalHasNoClass";
    case ErrorCode::EmptyWin1: return "EmptyWin1";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::StrategyGap: return "StrategyGap";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Position in a game-spec document; 1-based, 0 when not applicable.
struct SourceLoc {
  int line = 0;
  int column = 0;

  // Locations are diagnostic metadata and never take part in equality.
  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

struct Diagnostic {
  ErrorCode code;
  std::string message;
  SourceLoc loc;

  std::string str() const {
    std::string out;
    if (loc.line > 0) {
      out += std::to_string(loc.line);
      out += ':';
      out += std::to_string(loc.column);
      out += ": ";
    }
    out += to_string(code);
    out += ": ";
    out += message;
    return out;
  }
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Carries every diagnostic found in one pass. code() is that of the first.
class DiagnosticError : public Error {
 public:
  explicit DiagnosticError(std::vector<Diagnostic> diags)
      : Error(diags.empty() ? ErrorCode::InvalidArgument : diags.front().code, join(diags)),
        diagnostics_(std::move(diags)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  bool has(ErrorCode code) const {
    for (const auto& d : diagnostics_)
      if (d.code == code) return true;
    return false;
  }

 private:
  static std::string join(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) {
      if (!out.empty()) out += '\n';
      out += d.str();
    }
    return out;
  }

  std::vector<Diagnostic> diagnostics_;
};

class ParseError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

class ValidationError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

}  // namespace sagame

#endif  // SAGAME_ERROR_HPP
