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

#include "derivguide/sine/sine.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace derivguide::sine {

namespace {

void collect(const fol::Term& t, std::set<fol::SymbolId>& out) {
  if (t.is_variable()) return;
  out.insert(t.functor());
  for (const auto& a : t.args()) collect(a, out);
}

}  // namespace

std::vector<fol::SymbolId> clause_symbols(const fol::Clause& clause) {
  std::set<fol::SymbolId> symbols;
  for (const auto& lit : clause.literals()) {
    symbols.insert(lit.predicate);
    for (const auto& a : lit.args) collect(a, symbols);
  }
  return {symbols.begin(), symbols.end()};
}

std::map<fol::SymbolId, std::size_t> symbol_occurrences(const fol::Problem& problem) {
  std::map<fol::SymbolId, std::size_t> occ;
  for (const auto& ic : problem.clauses) {
    if (ic.role != fol::Role::axiom) continue;
    for (auto s : clause_symbols(ic.clause)) ++occ[s];
  }
  return occ;
}

SineLevels sine_levels(const fol::Problem& problem, double tolerance) {
  if (!(tolerance >= 1.0)) throw std::invalid_argument("SInE tolerance must be >= 1");
  const auto occ = symbol_occurrences(problem);
  auto occurrences = [&occ](fol::SymbolId s) {
    auto it = occ.find(s);
    return it == occ.end() ? std::size_t{0} : it->second;
  };

  const std::size_t count = problem.clauses.size();
  std::vector<std::vector<fol::SymbolId>> symbols(count);
  // For every symbol, the axioms it triggers.
  std::map<fol::SymbolId, std::vector<std::size_t>> triggers;
  for (std::size_t c = 0; c < count; ++c) {
    symbols[c] = clause_symbols(problem.clauses[c].clause);
    if (problem.clauses[c].role != fol::Role::axiom || symbols[c].empty()) continue;
    std::size_t least = std::numeric_limits<std::size_t>::max();
    for (auto s : symbols[c]) least = std::min(least, occurrences(s));
    for (auto s : symbols[c]) {
      if (static_cast<double>(occurrences(s)) <= tolerance * static_cast<double>(least)) {
        triggers[s].push_back(c);
      }
    }
  }

  SineLevels result;
  result.tolerance = tolerance;
  result.level.assign(count, kSineUnreached);
  std::vector<std::size_t> frontier;
  for (std::size_t c = 0; c < count; ++c) {
    if (problem.clauses[c].role == fol::Role::negated_conjecture) {
      result.level[c] = 0;
      frontier.push_back(c);
    }
  }
  std::set<fol::SymbolId> seen_symbols;
  for (int level = 1; !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t c : frontier) {
      for (auto s : symbols[c]) {
        if (!seen_symbols.insert(s).second) continue;
        auto it = triggers.find(s);
        if (it == triggers.end()) continue;
        for (std::size_t axiom : it->second) {
          if (result.level[axiom] == kSineUnreached) {
            result.level[axiom] = level;
            next.push_back(axiom);
          }
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return result;
}

}  // namespace derivguide::sine
