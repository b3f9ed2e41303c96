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
#include <vector>

#include "derivguide/derivation/dag.hpp"
#include "derivguide/fol/problem.hpp"

namespace derivguide::sine {

inline constexpr double kDefaultTolerance = 1.5;

/// Per input clause SInE level, indexed like Problem::clauses. Negated
/// conjecture clauses have level 0; axioms never triggered hold
/// kSineUnreached.
struct SineLevels {
  std::vector<int> level;
  double tolerance = kDefaultTolerance;
};

/// Number of axiom clauses each symbol (function or predicate) occurs in;
/// a symbol occurring twice in one clause counts once. Symbols absent from
/// every axiom are absent from the map.
std::map<fol::SymbolId, std::size_t> symbol_occurrences(const fol::Problem& problem);

/// Symbols occurring in a clause, each once, in increasing id order.
std::vector<fol::SymbolId> clause_symbols(const fol::Clause& clause);

/// Breadth-first trigger fixpoint: symbol s triggers axiom c when s occurs in
/// c and occ(s) <= tolerance * min{occ(s') : s' in c}. Level k+1 holds the
/// axioms first triggered by a symbol of a clause of level <= k.
/// Requires tolerance >= 1.
SineLevels sine_levels(const fol::Problem& problem, double tolerance = kDefaultTolerance);

}  // namespace derivguide::sine
