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

#include "derivguide/model/model.hpp"
#include "derivguide/harness/ground_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace derivguide::harness {

namespace {

using GroundClause = std::vector<std::int64_t>;  // sorted literals, atom * 2 + polarity

std::int64_t atom_of(std::int64_t lit) { return lit >> 1; }

class Grounder {
 public:
  explicit Grounder(const fol::Problem& problem) : problem_(problem) {
    const auto& sig = problem.signature;
    for (fol::SymbolId s = 0; s < sig.size(); ++s) {
      if (sig[s].kind != fol::SymbolKind::function) continue;
      if (sig[s].arity > 0) {
        throw OracleError("ground oracle needs a function-free problem; '" + sig[s].name +
                          "' has arity " + std::to_string(sig[s].arity));
      }
      constants_.push_back(s);
    }
    if (constants_.empty()) fresh_constant_ = true;
    domain_ = fresh_constant_ ? 1 : constants_.size();
  }

  void ground(const fol::Clause& clause, std::size_t limit, std::vector<GroundClause>& out) {
    const fol::VarId vars = clause.max_variable() + 1;
    std::vector<std::size_t> assignment(static_cast<std::size_t>(std::max<fol::VarId>(vars, 0)), 0);
    while (true) {
      GroundClause g;
      for (const auto& lit : clause.literals()) {
        std::vector<std::int64_t> key{static_cast<std::int64_t>(lit.predicate)};
        for (const auto& t : lit.args) {
          key.push_back(t.is_variable() ? static_cast<std::int64_t>(assignment[static_cast<std::size_t>(t.var())])
                                        : constant_index(t.functor()));
        }
        auto [it, inserted] = atoms_.emplace(std::move(key), static_cast<std::int64_t>(atoms_.size()));
        g.push_back(it->second * 2 + (lit.positive ? 1 : 0));
      }
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
      out.push_back(std::move(g));
      if (out.size() > limit) throw OracleError("grounding exceeds the clause limit");
      std::size_t k = 0;
      while (k < assignment.size() && ++assignment[k] == domain_) assignment[k++] = 0;
      if (k == assignment.size()) break;
    }
  }

 private:
  std::int64_t constant_index(fol::SymbolId s) const {
    auto it = std::find(constants_.begin(), constants_.end(), s);
    return static_cast<std::int64_t>(it - constants_.begin());
  }

  const fol::Problem& problem_;
  std::vector<fol::SymbolId> constants_;
  bool fresh_constant_ = false;
  std::size_t domain_ = 1;
  std::map<std::vector<std::int64_t>, std::int64_t> atoms_;
};

bool tautology(const GroundClause& c) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (atom_of(c[i]) == atom_of(c[i + 1])) return true;
  }
  return false;
}

bool subset(const GroundClause& a, const GroundClause& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Ordered ground resolution: only the maximal literal of each clause is
// resolved upon. Complete for ground clause sets.
OracleVerdict close(std::vector<GroundClause> input, std::size_t max_clauses) {
  OracleVerdict verdict;
  verdict.ground_clauses = input.size();
  std::vector<GroundClause> kept;
  std::set<GroundClause> seen;
  using Entry = std::pair<std::size_t, std::size_t>;  // (size, index into pending)
  std::vector<GroundClause> pending;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  auto push = [&](GroundClause c) {
    if (tautology(c) || !seen.insert(c).second) return;
    queue.emplace(c.size(), pending.size());
    pending.push_back(std::move(c));
  };
  for (auto& c : input) push(std::move(c));

  std::map<std::int64_t, std::vector<std::size_t>> by_max;  // max literal -> kept clauses
  while (!queue.empty()) {
    auto [size, idx] = queue.top();
    queue.pop();
    GroundClause given = std::move(pending[idx]);
    if (given.empty()) {
      verdict.unsatisfiable = true;
      verdict.kept = kept.size();
      return verdict;
    }
    bool redundant = std::any_of(kept.begin(), kept.end(),
                                 [&](const GroundClause& k) { return subset(k, given); });
    if (redundant) continue;
    const std::int64_t top = given.back();
    const std::size_t given_index = kept.size();
    kept.push_back(given);
    by_max[top].push_back(given_index);
    if (kept.size() > max_clauses) throw OracleError("ground closure exceeds the clause limit");
    auto partners = by_max.find(top ^ 1);
    if (partners == by_max.end()) continue;
    for (std::size_t p : partners->second) {
      const auto& other = kept[p];
      GroundClause r;
      r.reserve(given.size() + other.size() - 2);
      std::merge(given.begin(), given.end() - 1, other.begin(), other.end() - 1, std::back_inserter(r));
      r.erase(std::unique(r.begin(), r.end()), r.end());
      push(std::move(r));
    }
  }
  verdict.kept = kept.size();
  return verdict;
}

}  // namespace

OracleVerdict ground_oracle(const fol::Problem& problem, std::span<const std::size_t> subset_indices,
                            std::size_t max_clauses) {
  Grounder grounder(problem);
  std::vector<GroundClause> ground;
  for (std::size_t k : subset_indices) grounder.ground(problem.clauses.at(k).clause, max_clauses, ground);
  return close(std::move(ground), max_clauses);
}

OracleVerdict ground_oracle(const fol::Problem& problem, std::size_t max_clauses) {
  std::vector<std::size_t> all(problem.clauses.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return ground_oracle(problem, all, max_clauses);
}

std::vector<std::size_t> necessary_clauses(const fol::Problem& problem) {
  std::vector<std::size_t> out;
  for (std::size_t drop = 0; drop < problem.clauses.size(); ++drop) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < problem.clauses.size(); ++k) {
      if (k != drop) rest.push_back(k);
    }
    if (!ground_oracle(problem, rest).unsatisfiable) out.push_back(drop);
  }
  return out;
}

}  // namespace derivguide::harness
