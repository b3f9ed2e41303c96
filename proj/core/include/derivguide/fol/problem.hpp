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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "derivguide/fol/clause.hpp"

namespace derivguide::fol {

struct InputClause {
  Clause clause;
  Role role = Role::axiom;
  std::string name;
};

/// A clausified problem: named axiom clauses plus negated conjecture clauses.
struct Problem {
  std::string name;
  Signature signature;
  std::vector<InputClause> clauses;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the CNF dialect:
///
///   % comment
///   cnf(<name>, axiom | negated_conjecture, <clause>).
///
/// A clause is a `|`-separated list of literals, optionally parenthesized;
/// `~` negates an atom; identifiers starting with an uppercase letter or `_`
/// are variables; `$false` denotes the empty clause. Variables are numbered
/// per clause in order of first occurrence.
Problem parse_problem(std::string_view text, std::string name = {});
Problem load_problem(const std::filesystem::path& path);

/// Prints a problem back in the dialect accepted by parse_problem.
std::string print_problem(const Problem& problem);

}  // namespace derivguide::fol
