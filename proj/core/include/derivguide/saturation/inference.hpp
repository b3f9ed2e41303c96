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

#include <optional>
#include <vector>

#include "derivguide/derivation/dag.hpp"
#include "derivguide/fol/unify.hpp"

namespace derivguide::saturation {

/// Conclusion of one rule application with its ordered premises.
struct Inference {
  fol::Clause conclusion;
  Rule rule = Rule::resolution;
  std::vector<fol::ClauseId> premises;
};

/// Binary resolution on literal i of c1 and literal j of c2. c2 is renamed
/// apart from c1 internally. Premises are recorded as (c1, c2).
std::optional<Inference> resolve(const fol::Clause& c1, std::size_t i, const fol::Clause& c2,
                                 std::size_t j);

/// Factoring of literals i and j of c (same polarity and predicate).
std::optional<Inference> factor(const fol::Clause& c, std::size_t i, std::size_t j);

/// True iff some substitution maps every literal of `general` onto a literal
/// of `specific`. Set semantics: several literals of `general` may land on
/// the same literal, so {p(X), p(Y)} subsumes {p(a)}.
bool subsumes(const fol::Clause& general, const fol::Clause& specific);

/// Subsumption as used for deleting new clauses: `subsumes` restricted to
/// |general| <= |specific|, which keeps a clause from deleting its own
/// factors.
bool subsumes_for_deletion(const fol::Clause& general, const fol::Clause& specific);

/// Subsumption resolution: when some literal L of `general` matches the
/// complement of a literal M of `specific` under a substitution that maps
/// the rest of `general` into the rest of `specific`, returns `specific`
/// without M. Premises are recorded as (specific, general).
std::optional<Inference> subsumption_resolve(const fol::Clause& general,
                                             const fol::Clause& specific);

}  // namespace derivguide::saturation
