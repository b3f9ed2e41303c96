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

#include "derivguide/fol/clause.hpp"

#include <algorithm>
#include <unordered_map>

namespace derivguide::fol {

std::size_t Literal::weight() const {
  std::size_t w = 1;
  for (const auto& a : args) w += a.weight();
  return w;
}

VarId Literal::max_variable() const {
  VarId m = -1;
  for (const auto& a : args) m = std::max(m, a.max_variable());
  return m;
}

bool operator==(const Literal& a, const Literal& b) {
  return a.positive == b.positive && a.predicate == b.predicate && a.args == b.args;
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  if (a.positive != b.positive) {
    return a.positive ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t Clause::weight() const {
  std::size_t w = 0;
  for (const auto& l : literals_) w += l.weight();
  return w;
}

VarId Clause::max_variable() const {
  VarId m = -1;
  for (const auto& l : literals_) m = std::max(m, l.max_variable());
  return m;
}

bool Clause::is_tautology() const {
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    for (std::size_t j = i + 1; j < literals_.size(); ++j) {
      const auto& a = literals_[i];
      const auto& b = literals_[j];
      if (a.positive != b.positive && a.predicate == b.predicate && a.args == b.args) return true;
    }
  }
  return false;
}

namespace {

Term map_variables(const Term& t, const auto& fn) {
  if (t.is_variable()) return Term::variable(fn(t.var()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(map_variables(a, fn));
  return Term::apply(t.functor(), std::move(args));
}

Literal map_variables(const Literal& l, const auto& fn) {
  Literal out{l.positive, l.predicate, {}};
  out.args.reserve(l.args.size());
  for (const auto& a : l.args) out.args.push_back(map_variables(a, fn));
  return out;
}

}  // namespace

Clause rename_apart(const Clause& c, VarId offset) {
  std::vector<Literal> lits;
  lits.reserve(c.size());
  for (const auto& l : c.literals()) {
    lits.push_back(map_variables(l, [offset](VarId v) { return v + offset; }));
  }
  return Clause(std::move(lits), c.id(), c.origin());
}

Clause normalize(const Clause& c) {
  std::unordered_map<VarId, VarId> renaming;
  auto fn = [&renaming](VarId v) {
    auto [it, inserted] = renaming.try_emplace(v, static_cast<VarId>(renaming.size()));
    return it->second;
  };
  std::vector<Literal> lits;
  lits.reserve(c.size());
  for (const auto& l : c.literals()) lits.push_back(map_variables(l, fn));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return Clause(std::move(lits), c.id(), c.origin());
}

namespace {

using VarMap = std::unordered_map<VarId, VarId>;

bool variant_terms(const Term& a, const Term& b, VarMap& fwd, VarMap& bwd) {
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) {
    auto f = fwd.find(a.var());
    auto g = bwd.find(b.var());
    if (f == fwd.end() && g == bwd.end()) {
      fwd.emplace(a.var(), b.var());
      bwd.emplace(b.var(), a.var());
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.var() && g->second == a.var();
  }
  if (a.functor() != b.functor() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!variant_terms(a.args()[i], b.args()[i], fwd, bwd)) return false;
  }
  return true;
}

bool variant_from(const Clause& a, const Clause& b, std::size_t i, std::vector<bool>& used,
                  const VarMap& fwd, const VarMap& bwd) {
  if (i == a.size()) return true;
  const Literal& la = a[i];
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    const Literal& lb = b[j];
    if (la.positive != lb.positive || la.predicate != lb.predicate) continue;
    VarMap f = fwd;
    VarMap g = bwd;
    bool ok = true;
    for (std::size_t k = 0; k < la.args.size() && ok; ++k) {
      ok = variant_terms(la.args[k], lb.args[k], f, g);
    }
    if (!ok) continue;
    used[j] = true;
    if (variant_from(a, b, i + 1, used, f, g)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

bool is_variant(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  return variant_from(a, b, 0, used, {}, {});
}

std::string to_string(const Literal& l, const Signature& sig) {
  std::string out = l.positive ? "" : "~";
  out += sig[l.predicate].name;
  if (!l.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (i) out += ',';
      out += to_string(l.args[i], sig);
    }
    out += ')';
  }
  return out;
}

std::string to_string(const Clause& c, const Signature& sig) {
  if (c.empty()) return "$false";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " | ";
    out += to_string(c[i], sig);
  }
  return out;
}

}  // namespace derivguide::fol
