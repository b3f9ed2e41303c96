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

#include "derivguide/saturation/inference.hpp"

namespace derivguide::saturation {

using fol::Clause;
using fol::Literal;
using fol::Substitution;

std::optional<Inference> resolve(const Clause& c1, std::size_t i, const Clause& c2, std::size_t j) {
  if (i >= c1.size() || j >= c2.size()) return std::nullopt;
  const Clause right = fol::rename_apart(c2, c1.max_variable() + 1);
  const Literal& a = c1[i];
  const Literal& b = right[j];
  if (a.positive == b.positive) return std::nullopt;
  auto mgu = fol::unify_atoms(a, b);
  if (!mgu) return std::nullopt;
  std::vector<Literal> lits;
  lits.reserve(c1.size() + c2.size() - 2);
  for (std::size_t k = 0; k < c1.size(); ++k) {
    if (k != i) lits.push_back(mgu->apply(c1[k]));
  }
  for (std::size_t k = 0; k < right.size(); ++k) {
    if (k != j) lits.push_back(mgu->apply(right[k]));
  }
  return Inference{fol::normalize(Clause(std::move(lits))), Rule::resolution, {c1.id(), c2.id()}};
}

std::optional<Inference> factor(const Clause& c, std::size_t i, std::size_t j) {
  if (i == j || i >= c.size() || j >= c.size()) return std::nullopt;
  if (c[i].positive != c[j].positive) return std::nullopt;
  auto mgu = fol::unify_atoms(c[i], c[j]);
  if (!mgu) return std::nullopt;
  Clause merged = fol::apply_substitution(c, *mgu);
  return Inference{fol::normalize(Clause(merged.literals())), Rule::factoring, {c.id()}};
}

namespace {

// Backtracking search mapping general[k..] into `specific`, skipping the
// literal `excluded` of specific.
bool embed_from(const Clause& general, std::size_t k, std::size_t skip_general,
                const Clause& specific, std::size_t excluded, const Substitution& s) {
  if (k == skip_general) return embed_from(general, k + 1, skip_general, specific, excluded, s);
  if (k >= general.size()) return true;
  const Literal& g = general[k];
  for (std::size_t t = 0; t < specific.size(); ++t) {
    if (t == excluded) continue;
    const Literal& target = specific[t];
    if (target.positive != g.positive || target.predicate != g.predicate) continue;
    Substitution extended = s;
    if (!fol::match_atoms_into(g, target, extended)) continue;
    if (embed_from(general, k + 1, skip_general, specific, excluded, extended)) return true;
  }
  return false;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

bool subsumes(const Clause& general, const Clause& specific) {
  return embed_from(general, 0, kNone, specific, kNone, Substitution{});
}

bool subsumes_for_deletion(const Clause& general, const Clause& specific) {
  return general.size() <= specific.size() && subsumes(general, specific);
}

std::optional<Inference> subsumption_resolve(const Clause& general, const Clause& specific) {
  if (general.empty() || general.size() > specific.size()) return std::nullopt;
  for (std::size_t l = 0; l < general.size(); ++l) {
    const Literal& lit = general[l];
    for (std::size_t m = 0; m < specific.size(); ++m) {
      const Literal& target = specific[m];
      if (target.positive == lit.positive || target.predicate != lit.predicate) continue;
      Substitution s;
      if (!fol::match_atoms_into(lit, target, s)) continue;
      if (!embed_from(general, 0, l, specific, m, s)) continue;
      std::vector<Literal> rest;
      rest.reserve(specific.size() - 1);
      for (std::size_t k = 0; k < specific.size(); ++k) {
        if (k != m) rest.push_back(specific[k]);
      }
      return Inference{fol::normalize(Clause(std::move(rest))), Rule::subsumption_resolution,
                       {specific.id(), general.id()}};
    }
  }
  return std::nullopt;
}

}  // namespace derivguide::saturation
