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
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "derivguide/fol/problem.hpp"

namespace derivguide::harness {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleVerdict {
  bool unsatisfiable = false;
  std::size_t ground_clauses = 0;  // instances after grounding
  std::size_t kept = 0;            // clauses kept by the closure
};

/// Decides a function-free problem: grounds every clause over the problem's
/// constants (one fresh constant if there are none) and closes the ground
/// set under ordered resolution with subsumption, smallest clause first.
/// Throws OracleError for non-constant function symbols or when a limit is hit.
OracleVerdict ground_oracle(const fol::Problem& problem, std::size_t max_clauses = 2'000'000);

/// Same decision restricted to the input clauses listed in `subset`.
OracleVerdict ground_oracle(const fol::Problem& problem, std::span<const std::size_t> subset,
                            std::size_t max_clauses = 2'000'000);

/// Input clauses of an unsatisfiable problem without which it becomes
/// satisfiable; every refutation must use all of them.
std::vector<std::size_t> necessary_clauses(const fol::Problem& problem);

}  // namespace derivguide::harness
