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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace derivguide::fol {

using SymbolId = std::uint32_t;
using VarId = std::int32_t;

enum class SymbolKind : std::uint8_t { function, predicate };

struct Symbol {
  std::string name;
  std::uint32_t arity = 0;
  SymbolKind kind = SymbolKind::function;
};

class ArityConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symbol table of one problem. (name, kind) identifies a symbol; its arity
/// is fixed at first use.
class Signature {
 public:
  /// Returns the id of (name, kind), creating it on first use. Throws
  /// ArityConflict when the symbol was already declared with another arity.
  SymbolId intern(std::string_view name, std::uint32_t arity, SymbolKind kind);
  std::optional<SymbolId> find(std::string_view name, SymbolKind kind) const;

  const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }

 private:
  std::vector<Symbol> symbols_;
  // One index per SymbolKind.
  std::map<std::string, SymbolId, std::less<>> index_[2];
};

/// A first-order term: a variable or a function application. Immutable value.
class Term {
 public:
  static Term variable(VarId v);
  static Term apply(SymbolId functor, std::vector<Term> args = {});

  bool is_variable() const { return var_ >= 0; }
  VarId var() const { return var_; }
  SymbolId functor() const { return functor_; }
  const std::vector<Term>& args() const { return args_; }

  bool contains_variable(VarId v) const;
  /// Number of symbol and variable occurrences.
  std::size_t weight() const;
  /// Largest variable index occurring in the term, or -1.
  VarId max_variable() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  VarId var_ = -1;
  SymbolId functor_ = 0;
  std::vector<Term> args_;
};

std::string to_string(const Term& t, const Signature& sig);

}  // namespace derivguide::fol
