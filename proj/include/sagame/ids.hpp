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

#ifndef SAGAME_IDS_HPP
#define SAGAME_IDS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace sagame {

/// Dense index into one of the game's symbol tables. The tag keeps state,
/// action, sensor, query and attack indices from being mixed up.
template <typename Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit Id(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(Id, Id) = default;
};

using StateId = Id<struct StateTag>;
using ActionId = Id<struct ActionTag>;
using SensorId = Id<struct SensorTag>;
using QueryId = Id<struct QueryTag>;
using AttackId = Id<struct AttackTag>;

/// P1's combined move: a control action paired with a sensor query.
struct JointAction {
  ActionId action;
  QueryId query;

  friend constexpr auto operator<=>(const JointAction&, const JointAction&) = default;
};

}  // namespace sagame

template <typename Tag>
struct std::hash<sagame::Id<Tag>> {
  std::size_t operator()(sagame::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

#endif  // SAGAME_IDS_HPP
