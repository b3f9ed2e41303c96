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

#include "derivguide/fol/unify.hpp"

#include <algorithm>

namespace derivguide::fol {

const Term* Substitution::lookup(VarId v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_variable()) {
    const Term* bound = lookup(t.var());
    return bound ? apply(*bound) : t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(apply(a));
  return Term::apply(t.functor(), std::move(args));
}

Literal Substitution::apply(const Literal& l) const {
  Literal out{l.positive, l.predicate, {}};
  out.args.reserve(l.args.size());
  for (const auto& a : l.args) out.args.push_back(apply(a));
  return out;
}

void Substitution::resolve() {
  std::map<VarId, Term> resolved;
  for (const auto& [v, t] : bindings_) resolved.emplace(v, apply(t));
  bindings_ = std::move(resolved);
}

namespace {

const Term& deref(const Term& t, const Substitution& s) {
  const Term* cur = &t;
  while (cur->is_variable()) {
    const Term* bound = s.lookup(cur->var());
    if (!bound) break;
    cur = bound;
  }
  return *cur;
}

bool occurs(VarId v, const Term& t, const Substitution& s) {
  const Term& d = deref(t, s);
  if (d.is_variable()) return d.var() == v;
  return std::any_of(d.args().begin(), d.args().end(),
                     [&](const Term& a) { return occurs(v, a, s); });
}

}  // namespace

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  const Term& x = deref(a, s);
  const Term& y = deref(b, s);
  if (x.is_variable() && y.is_variable() && x.var() == y.var()) return true;
  if (x.is_variable()) {
    if (occurs(x.var(), y, s)) return false;
    s.bind(x.var(), y);
    return true;
  }
  if (y.is_variable()) {
    if (occurs(y.var(), x, s)) return false;
    s.bind(y.var(), x);
    return true;
  }
  if (x.functor() != y.functor() || x.args().size() != y.args().size()) return false;
  // Copy the argument lists: binding may not invalidate them, but x and y
  // may alias terms owned by the substitution map.
  const std::vector<Term> xs = x.args();
  const std::vector<Term> ys = y.args();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!unify_into(xs[i], ys[i], s)) return false;
  }
  return true;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Substitution s;
  if (!unify_into(a, b, s)) return std::nullopt;
  s.resolve();
  return s;
}

std::optional<Substitution> unify_atoms(const Literal& a, const Literal& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unify_into(a.args[i], b.args[i], s)) return std::nullopt;
  }
  s.resolve();
  return s;
}

bool match_into(const Term& pattern, const Term& target, Substitution& s) {
  if (pattern.is_variable()) {
    if (const Term* bound = s.lookup(pattern.var())) return *bound == target;
    s.bind(pattern.var(), target);
    return true;
  }
  if (target.is_variable() || pattern.functor() != target.functor() ||
      pattern.args().size() != target.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match_into(pattern.args()[i], target.args()[i], s)) return false;
  }
  return true;
}

bool match_atoms_into(const Literal& pattern, const Literal& target, Substitution& s) {
  if (pattern.predicate != target.predicate || pattern.args.size() != target.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match_into(pattern.args[i], target.args[i], s)) return false;
  }
  return true;
}

Clause apply_substitution(const Clause& c, const Substitution& s) {
  if (s.empty()) return c;
  std::vector<Literal> lits;
  lits.reserve(c.size());
  for (const auto& l : c.literals()) {
    Literal applied = s.apply(l);
    if (std::find(lits.begin(), lits.end(), applied) == lits.end()) {
      lits.push_back(std::move(applied));
    }
  }
  return Clause(std::move(lits), c.id(), c.origin());
}

}  // namespace derivguide::fol
