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

#ifndef SAGAME_SPEC_FORMAT_HPP
#define SAGAME_SPEC_FORMAT_HPP

// Text format for game specs. Sections in brackets, one declaration per
// line, '#' starts a comment:
//
//   [game]         name = <title>
//   [states]       <state> [initial] [goal]
//   [actions]      <action>...
//   [transitions]  <state> <action> -> <succ>[:<weight>]...
//   [sensors]      <sensor> : <state>...
//   [queries]      <query> : <sensor>...
//   [attacks]      <attack> : <sensor>... [@ <state>...]
//
// An attack without '@' is available at every state.

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sagame/error.hpp"
#include "sagame/spec_document.hpp"

namespace sagame {

namespace detail {

struct Token {
  std::string text;
  int column;
};

inline bool is_punct(char c) { return c == ':' || c == '@' || c == '='; }

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (is_punct(c)) {
      out.push_back({std::string(1, c), col});
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", col});
      i += 2;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && !is_punct(line[j]) &&
           !(line[j] == '-' && j + 1 < line.size() && line[j + 1] == '>'))
      ++j;
    out.push_back({std::string(line.substr(i, j - i)), col});
    i = j;
  }
  return out;
}

inline bool is_name(const Token& t) {
  if (t.text.empty() || t.text == "->" || (t.text.size() == 1 && is_punct(t.text[0]))) return false;
  for (char c : t.text)
    if (c == '[' || c == ']') return false;
  return true;
}

enum class Section { None, Game, States, Actions, Transitions, Sensors, Queries, Attacks };

inline std::string_view section_name(Section s) {
  switch (s) {
    case Section::Game: return "game";
    case Section::States: return "states";
    case Section::Actions: return "actions";
    case Section::Transitions: return "transitions";
    case Section::Sensors: return "sensors";
    case Section::Queries: return "queries";
    case Section::Attacks: return "attacks";
    case Section::None: break;
  }
  return "";
}

inline void append_weight(std::string& out, double w) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, w);
  out.append(buf, res.ptr);
}

}  // namespace detail

/// Parses a game spec. Reports every problem it can find (each line is
/// parsed independently after an error) and throws ParseError if any.
inline GameSpecDocument parse_spec(std::string_view text) {
  using detail::Section;
  using detail::Token;
  GameSpecDocument doc;
  std::vector<Diagnostic> diags;
  std::set<Section> seen;
  std::set<std::pair<std::string, std::string>> transition_keys;
  Section current = Section::None;
  bool saw_game_name = false;

  const std::map<std::string, Section, std::less<>> sections = {
      {"game", Section::Game},       {"states", Section::States},   {"actions", Section::Actions},
      {"transitions", Section::Transitions}, {"sensors", Section::Sensors}, {"queries", Section::Queries},
      {"attacks", Section::Attacks}};

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    auto err = [&](ErrorCode code, std::string msg, int col) { diags.push_back({code, std::move(msg), {line_no, col}}); };

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (eol == text.size()) break;
      continue;
    }
    const int first_col = static_cast<int>(first) + 1;

    if (line[first] == '[') {
      std::size_t close = line.find(']', first);
      if (close == std::string_view::npos || line.find_first_not_of(" \t\r", close + 1) != std::string_view::npos) {
        err(ErrorCode::SyntaxError, "malformed section header", first_col);
        current = Section::None;
        continue;
      }
      std::string_view name = line.substr(first + 1, close - first - 1);
      auto it = sections.find(name);
      if (it == sections.end()) {
        err(ErrorCode::UnknownField, "unknown section [" + std::string(name) + "]", first_col);
        current = Section::None;
        continue;
      }
      if (!seen.insert(it->second).second) {
        err(ErrorCode::DuplicateDefinition, "section [" + std::string(name) + "] appears twice", first_col);
        current = Section::None;
        continue;
      }
      current = it->second;
      continue;
    }

    std::vector<Token> toks = detail::tokenize(line);
    const SourceLoc loc{line_no, first_col};
    auto expect_name = [&](const Token& t, std::string_view what) {
      if (detail::is_name(t)) return true;
      err(ErrorCode::SyntaxError, "expected " + std::string(what) + ", found '" + t.text + "'", t.column);
      return false;
    };
    // Collects names from toks[from, to); false on a non-name token.
    auto names = [&](std::size_t from, std::size_t to, std::vector<std::string>& out, std::string_view what) {
      for (std::size_t k = from; k < to; ++k) {
        if (!expect_name(toks[k], what)) return false;
        out.push_back(toks[k].text);
      }
      return true;
    };

    switch (current) {
      case Section::None:
        err(ErrorCode::SyntaxError, "declaration outside of any section", first_col);
        break;

      case Section::Game: {
        if (!expect_name(toks[0], "key")) break;
        if (toks[0].text != "name") {
          err(ErrorCode::UnknownField, "unknown key '" + toks[0].text + "' in [game]", toks[0].column);
          break;
        }
        if (toks.size() < 3 || toks[1].text != "=") {
          err(ErrorCode::SyntaxError, "expected 'name = <title>'", toks[0].column);
          break;
        }
        if (saw_game_name) {
          err(ErrorCode::DuplicateDefinition, "game name given twice", toks[0].column);
          break;
        }
        std::string title;
        for (std::size_t k = 2; k < toks.size(); ++k) {
          if (!title.empty()) title += ' ';
          title += toks[k].text;
        }
        doc.name = std::move(title);
        saw_game_name = true;
        break;
      }

      case Section::States: {
        if (!expect_name(toks[0], "state name")) break;
        StateDecl d{toks[0].text, false, false, {line_no, toks[0].column}};
        bool ok = true;
        for (std::size_t k = 1; k < toks.size(); ++k) {
          if (toks[k].text == "initial") {
            d.initial = true;
          } else if (toks[k].text == "goal") {
            d.goal = true;
          } else {
            err(ErrorCode::UnknownField, "unknown state flag '" + toks[k].text + "'", toks[k].column);
            ok = false;
          }
        }
        if (ok) doc.states.push_back(std::move(d));
        break;
      }

      case Section::Actions: {
        for (const auto& t : toks) {
          if (!expect_name(t, "action name")) break;
          doc.actions.push_back({t.text, {line_no, t.column}});
        }
        break;
      }

      case Section::Transitions: {
        if (toks.size() < 3 || toks[2].text != "->") {
          err(ErrorCode::SyntaxError, "expected '<state> <action> -> <successors>'", first_col);
          break;
        }
        if (!expect_name(toks[0], "state name") || !expect_name(toks[1], "action name")) break;
        TransitionDecl d{toks[0].text, toks[1].text, {}, loc};
        bool ok = true;
        for (std::size_t k = 3; k < toks.size() && ok; ++k) {
          if (!expect_name(toks[k], "successor state")) {
            ok = false;
            break;
          }
          SuccessorDecl sd{toks[k].text, std::nullopt, {line_no, toks[k].column}};
          if (k + 1 < toks.size() && toks[k + 1].text == ":") {
            if (k + 2 >= toks.size()) {
              err(ErrorCode::SyntaxError, "missing weight after ':'", toks[k + 1].column);
              ok = false;
              break;
            }
            const std::string& num = toks[k + 2].text;
            double w = 0;
            auto res = std::from_chars(num.data(), num.data() + num.size(), w);
            if (res.ec != std::errc{} || res.ptr != num.data() + num.size() || !std::isfinite(w)) {
              err(ErrorCode::SyntaxError, "invalid weight '" + num + "'", toks[k + 2].column);
              ok = false;
              break;
            }
            sd.weight = w;
            k += 2;
          }
          d.successors.push_back(std::move(sd));
        }
        if (!ok) break;
        if (!transition_keys.emplace(d.state, d.action).second) {
          err(ErrorCode::DuplicateDefinition, "transition " + d.state + " " + d.action + " defined twice", first_col);
          break;
        }
        doc.transitions.push_back(std::move(d));
        break;
      }

      case Section::Sensors:
      case Section::Queries:
      case Section::Attacks: {
        if (!expect_name(toks[0], "name")) break;
        if (toks.size() < 2 || toks[1].text != ":") {
          err(ErrorCode::SyntaxError, "expected ':' after '" + toks[0].text + "'", toks[0].column);
          break;
        }
        std::size_t at = toks.size();
        for (std::size_t k = 2; k < toks.size(); ++k)
          if (toks[k].text == "@") {
            at = k;
            break;
          }
        if (current != Section::Attacks && at != toks.size()) {
          err(ErrorCode::SyntaxError, "'@' is only allowed in [attacks]", toks[at].column);
          break;
        }
        std::vector<std::string> items;
        const char* what = current == Section::Sensors ? "state name" : "sensor name";
        if (!names(2, at, items, what)) break;
        const SourceLoc item_loc{line_no, toks[0].column};
        if (current == Section::Sensors) {
          doc.sensors.push_back({toks[0].text, std::move(items), item_loc});
        } else if (current == Section::Queries) {
          doc.queries.push_back({toks[0].text, std::move(items), item_loc});
        } else {
          AttackDecl d{toks[0].text, std::move(items), std::nullopt, item_loc};
          if (at != toks.size()) {
            std::vector<std::string> where;
            if (!names(at + 1, toks.size(), where, "state name")) break;
            d.enabled_at = std::move(where);
          }
          doc.attacks.push_back(std::move(d));
        }
        break;
      }
    }
    if (eol == text.size()) break;
  }

  if (!seen.count(Section::States)) diags.push_back({ErrorCode::SyntaxError, "missing states section", {line_no, 1}});
  if (!seen.count(Section::Actions)) diags.push_back({ErrorCode::SyntaxError, "missing actions section", {line_no, 1}});
  if (!diags.empty()) throw ParseError(std::move(diags));
  return doc;
}

inline GameSpecDocument parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

/// Writes `doc` back to text. parse_spec(serialize_spec(d)) == d.
inline std::string serialize_spec(const GameSpecDocument& doc) {
  std::string out;
  auto list = [&out](const std::vector<std::string>& items) {
    for (const auto& n : items) {
      out += ' ';
      out += n;
    }
  };
  if (!doc.name.empty()) out += "[game]\nname = " + doc.name + "\n\n";
  out += "[states]\n";
  for (const auto& s : doc.states) {
    out += s.name;
    if (s.initial) out += " initial";
    if (s.goal) out += " goal";
    out += '\n';
  }
  out += "\n[actions]\n";
  for (std::size_t k = 0; k < doc.actions.size(); ++k) {
    if (k) out += ' ';
    out += doc.actions[k].name;
  }
  out += "\n\n[transitions]\n";
  for (const auto& t : doc.transitions) {
    out += t.state + " " + t.action + " ->";
    for (const auto& s : t.successors) {
      out += ' ';
      out += s.state;
      if (s.weight) {
        out += ':';
        detail::append_weight(out, *s.weight);
      }
    }
    out += '\n';
  }
  out += "\n[sensors]\n";
  for (const auto& s : doc.sensors) {
    out += s.name + " :";
    list(s.coverage);
    out += '\n';
  }
  out += "\n[queries]\n";
  for (const auto& q : doc.queries) {
    out += q.name + " :";
    list(q.sensors);
    out += '\n';
  }
  out += "\n[attacks]\n";
  for (const auto& a : doc.attacks) {
    out += a.name + " :";
    list(a.sensors);
    if (a.enabled_at) {
      out += " @";
      list(*a.enabled_at);
    }
    out += '\n';
  }
  return out;
}

}  // namespace sagame

#endif  // SAGAME_SPEC_FORMAT_HPP
