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

#include "derivguide/fol/term.hpp"

#include <algorithm>

namespace derivguide::fol {

SymbolId Signature::intern(std::string_view name, std::uint32_t arity, SymbolKind kind) {
  auto& index = index_[static_cast<int>(kind)];
  auto it = index.find(name);
  if (it != index.end()) {
    const Symbol& existing = symbols_[it->second];
    if (existing.arity != arity) {
      throw ArityConflict("symbol '" + std::string(name) + "' used with arity " +
                          std::to_string(arity) + " but declared with arity " +
                          std::to_string(existing.arity));
    }
    return it->second;
  }
  auto id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back(Symbol{std::string(name), arity, kind});
  index.emplace(std::string(name), id);
  return id;
}

std::optional<SymbolId> Signature::find(std::string_view name, SymbolKind kind) const {
  const auto& index = index_[static_cast<int>(kind)];
  auto it = index.find(name);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Term Term::variable(VarId v) {
  Term t;
  t.var_ = v;
  return t;
}

Term Term::apply(SymbolId functor, std::vector<Term> args) {
  Term t;
  t.functor_ = functor;
  t.args_ = std::move(args);
  return t;
}

bool Term::contains_variable(VarId v) const {
  if (is_variable()) return var_ == v;
  return std::any_of(args_.begin(), args_.end(),
                     [v](const Term& a) { return a.contains_variable(v); });
}

std::size_t Term::weight() const {
  std::size_t w = 1;
  for (const auto& a : args_) w += a.weight();
  return w;
}

VarId Term::max_variable() const {
  if (is_variable()) return var_;
  VarId m = -1;
  for (const auto& a : args_) m = std::max(m, a.max_variable());
  return m;
}

bool operator==(const Term& a, const Term& b) {
  if (a.var_ != b.var_) return false;
  if (a.is_variable()) return true;
  return a.functor_ == b.functor_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  // Variables order before applications.
  if (a.is_variable() != b.is_variable()) {
    return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_variable()) return a.var_ <=> b.var_;
  if (auto c = a.functor_ <=> b.functor_; c != 0) return c;
  if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args_.size(); ++i) {
    if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Term& t, const Signature& sig) {
  if (t.is_variable()) return "X" + std::to_string(t.var());
  std::string out = sig[t.functor()].name;
  if (!t.args().empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ',';
      out += to_string(t.args()[i], sig);
    }
    out += ')';
  }
  return out;
}

}  // namespace derivguide::fol
