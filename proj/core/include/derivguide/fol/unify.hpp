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

#include <map>
#include <optional>

#include "derivguide/fol/clause.hpp"

namespace derivguide::fol {

/// Variable bindings. Bindings may be triangular while a unification is in
/// progress; `apply` always resolves them completely.
class Substitution {
 public:
  void bind(VarId v, Term t) { bindings_.insert_or_assign(v, std::move(t)); }
  const Term* lookup(VarId v) const;

  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

  /// Rewrite every binding to its fully applied form (idempotent result).
  void resolve();

 private:
  std::map<VarId, Term> bindings_;
};

/// Robinson unification with occurs check. Extends `s` in place; on failure
/// `s` is left in an unspecified state.
bool unify_into(const Term& a, const Term& b, Substitution& s);

/// Most general unifier of two terms, or nullopt.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Most general unifier of two atoms (polarity ignored); nullopt when the
/// predicates differ or the arguments clash.
std::optional<Substitution> unify_atoms(const Literal& a, const Literal& b);

/// One-sided matching: extends `s` so that s(pattern) == target, binding only
/// variables of `pattern`. Variables of `target` are treated as constants.
bool match_into(const Term& pattern, const Term& target, Substitution& s);
bool match_atoms_into(const Literal& pattern, const Literal& target, Substitution& s);

/// Simultaneous replacement; duplicate literals collapse to their first
/// occurrence. An empty substitution returns the clause unchanged.
Clause apply_substitution(const Clause& c, const Substitution& s);

}  // namespace derivguide::fol
