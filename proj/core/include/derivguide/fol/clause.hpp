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

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "derivguide/fol/term.hpp"

namespace derivguide::fol {

struct Literal {
  bool positive = true;
  SymbolId predicate = 0;
  std::vector<Term> args;

  Literal complement() const { return Literal{!positive, predicate, args}; }
  std::size_t weight() const;
  VarId max_variable() const;

  friend bool operator==(const Literal& a, const Literal& b);
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);
};

using ClauseId = std::uint32_t;
inline constexpr ClauseId kNoClause = std::numeric_limits<ClauseId>::max();

enum class Role : std::uint8_t { axiom, negated_conjecture };
enum class Origin : std::uint8_t { input_axiom, input_conjecture, derived };

/// A clause: a multiset of literals with identity and origin. The empty
/// clause is the contradiction. Variables are local to the clause.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals, ClauseId id = kNoClause,
                  Origin origin = Origin::derived)
      : literals_(std::move(literals)), id_(id), origin_(origin) {}

  const std::vector<Literal>& literals() const { return literals_; }
  const Literal& operator[](std::size_t i) const { return literals_[i]; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }

  ClauseId id() const { return id_; }
  Origin origin() const { return origin_; }
  void set_id(ClauseId id) { id_ = id; }
  void set_origin(Origin origin) { origin_ = origin; }

  /// Symbol count, the weight used by weight-based selection.
  std::size_t weight() const;
  VarId max_variable() const;
  bool is_tautology() const;

 private:
  std::vector<Literal> literals_;
  ClauseId id_ = kNoClause;
  Origin origin_ = Origin::derived;
};

/// Shift every variable of `c` by `offset`; used to rename two clauses apart.
Clause rename_apart(const Clause& c, VarId offset);

/// Rename variables to 0,1,... in order of first occurrence, then sort and
/// deduplicate the literals. Gives derived clauses a deterministic shape.
Clause normalize(const Clause& c);

/// True when the two clauses are equal up to a bijective variable renaming
/// and a permutation of literals.
bool is_variant(const Clause& a, const Clause& b);

std::string to_string(const Literal& l, const Signature& sig);
std::string to_string(const Clause& c, const Signature& sig);

}  // namespace derivguide::fol
