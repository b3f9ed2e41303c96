// Copyright 2026 The derivguide Authors
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

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "derivguide/fol/clause.hpp"

namespace derivguide::saturation {

/// A pair ratio such as age:weight = 1:1 or A:B = 2:1. At least one side
/// must be positive.
struct Ratio {
  unsigned first = 1;
  unsigned second = 1;

  unsigned period() const { return first + second; }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Parses "a:b"; throws std::invalid_argument on malformed input or 0:0.
Ratio parse_ratio(std::string_view text);
std::string to_string(const Ratio& r);

/// Unprocessed clauses ordered by age (clause id) and by weight; picks
/// alternate according to the age:weight ratio. Ties go to the lowest id.
class ClauseQueue {
 public:
  explicit ClauseQueue(Ratio age_weight = {}) : ratio_(age_weight) {}

  void add(fol::ClauseId id, std::size_t weight);
  /// No-op when `id` is absent.
  void remove(fol::ClauseId id);
  bool contains(fol::ClauseId id) const { return weights_.contains(id); }
  bool empty() const { return by_age_.empty(); }
  std::size_t size() const { return by_age_.size(); }
  /// Removes and returns the next clause; the queue must be nonempty.
  fol::ClauseId pop();

 private:
  Ratio ratio_;
  unsigned tick_ = 0;
  std::set<fol::ClauseId> by_age_;
  std::set<std::pair<std::size_t, fol::ClauseId>> by_weight_;
  std::unordered_map<fol::ClauseId, std::size_t> weights_;
};

enum class PickSource : std::uint8_t { a, b, fallback };
std::string_view to_string(PickSource s);

/// Layered clause selection. View A holds the clauses the advisor classified
/// positive, view B all unprocessed clauses. Picks cycle through the
/// second-level ratio (first: A, second: B); an A slot with A empty falls
/// back to B and still advances the cycle. Each view runs its own age/weight
/// queue. Without layering every pick comes from B.
class LayeredSelector {
 public:
  LayeredSelector(Ratio age_weight, Ratio second_level, bool layered);

  void add(fol::ClauseId id, std::size_t weight, bool positive);
  bool empty() const { return all_.empty(); }
  std::size_t size() const { return all_.size(); }
  std::size_t positive_size() const { return positive_.size(); }

  struct Pick {
    fol::ClauseId id;
    PickSource source;
  };
  Pick select();

 private:
  ClauseQueue all_;
  ClauseQueue positive_;
  Ratio second_level_;
  bool layered_;
  unsigned tick_ = 0;
};

}  // namespace derivguide::saturation
