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

#ifndef SAGAME_STATE_SET_HPP
#define SAGAME_STATE_SET_HPP

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <vector>

#include "sagame/ids.hpp"

namespace sagame {

/// Sorted, duplicate-free set of states. Used for beliefs, observations,
/// sensor coverage and transition supports. Ordering is lexicographic on
/// the sorted member list, which gives belief nodes a canonical order.
class StateSet {
 public:
  using const_iterator = std::vector<StateId>::const_iterator;

  StateSet() = default;
  StateSet(std::initializer_list<StateId> ids) : members_(ids) { normalize(); }
  explicit StateSet(std::vector<StateId> ids) : members_(std::move(ids)) { normalize(); }

  /// All states 0..n-1.
  static StateSet universe(std::size_t n) {
    StateSet s;
    s.members_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.members_.emplace_back(i);
    return s;
  }

  /// Builds a set from a membership mask indexed by state.
  static StateSet from_mask(const std::vector<char>& mask) {
    StateSet s;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) s.members_.emplace_back(i);
    return s;
  }

  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }
  StateId front() const { return members_.front(); }
  const std::vector<StateId>& members() const { return members_; }

  bool contains(StateId s) const { return std::binary_search(members_.begin(), members_.end(), s); }

  void insert(StateId s) {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) members_.insert(it, s);
  }

  bool is_subset_of(const StateSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  bool intersects(const StateSet& other) const {
    auto a = members_.begin();
    auto b = other.members_.begin();
    while (a != members_.end() && b != other.members_.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }

  friend StateSet set_union(const StateSet& x, const StateSet& y) {
    StateSet r;
    r.members_.reserve(x.size() + y.size());
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r.members_));
    return r;
  }

  friend StateSet set_intersection(const StateSet& x, const StateSet& y) {
    StateSet r;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r.members_));
    return r;
  }

  friend StateSet set_difference(const StateSet& x, const StateSet& y) {
    StateSet r;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(r.members_));
    return r;
  }

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend auto operator<=>(const StateSet& x, const StateSet& y) {
    return std::lexicographical_compare_three_way(x.members_.begin(), x.members_.end(), y.members_.begin(),
                                                  y.members_.end());
  }

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<StateId> members_;
};

}  // namespace sagame

#endif  // SAGAME_STATE_SET_HPP
