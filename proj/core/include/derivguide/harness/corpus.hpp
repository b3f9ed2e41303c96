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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "derivguide/fol/problem.hpp"

namespace derivguide::harness {

/// Shape of a synthetic corpus. The pool holds a chain of "useful" axioms
/// ~p_k(X) | p_{k+1}(X) and "junk" axioms that branch off the chain into
/// q-predicates and chain among those. A problem asserts p_s(c), refutes
/// p_t(c) and includes chain axioms s..t-1, so each of them is in every
/// proof; junk axioms never are. A decoy omits one chain link.
struct CorpusSpec {
  std::size_t problems = 200;
  std::size_t pool = 50;            // named axioms shared by all problems
  double useful_fraction = 0.4;     // share of the pool on the chain
  std::size_t min_depth = 1;
  std::size_t max_depth = 12;       // chain steps between fact and goal
  double decoy_fraction = 0.15;     // satisfiable problems (one chain link missing)
  double junk_keep = 0.8;           // probability a junk axiom is included
  std::size_t noise_facts = 12;     // per-problem facts on junk predicates
  std::size_t noise_constants = 6;  // constants d0.. used by the noise facts
};

struct GeneratedProblem {
  std::string name;
  std::string text;  // CNF source
  bool unsatisfiable = false;
  std::size_t depth = 0;
};

struct Corpus {
  std::vector<GeneratedProblem> problems;
  std::vector<std::string> useful_axioms;
  std::vector<std::string> junk_axioms;
};

/// Deterministic in (spec, seed). Every problem's status is confirmed by the
/// ground oracle; throws OracleError if a problem disagrees with its design.
Corpus gen_corpus(const CorpusSpec& spec, std::uint64_t seed);

/// Writes one <name>.p file per problem plus index.csv (name, status, depth).
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

/// Parses every problem of a corpus.
std::vector<fol::Problem> parse_corpus(const Corpus& corpus);

/// Loads every *.p file of a directory, sorted by file name.
std::vector<fol::Problem> load_corpus(const std::filesystem::path& dir);

}  // namespace derivguide::harness
