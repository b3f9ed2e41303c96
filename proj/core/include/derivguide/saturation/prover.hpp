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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "derivguide/derivation/dag.hpp"
#include "derivguide/fol/problem.hpp"
#include "derivguide/saturation/selection.hpp"
#include "derivguide/sine/sine.hpp"

namespace derivguide::saturation {

/// Clause classifier consulted once per retained clause. Implementations
/// may inspect the derivation recorded so far; `node` is the clause's node.
class ClauseAdvisor {
 public:
  virtual ~ClauseAdvisor() = default;
  virtual bool is_positive(const derivation::DerivationDag& dag, derivation::NodeId node,
                           const fol::Clause& clause) = 0;
};

/// Creates a fresh advisor (and with it a fresh evaluation cache) per run.
using AdvisorFactory = std::function<std::unique_ptr<ClauseAdvisor>()>;

struct SelectorConfig {
  Ratio age_weight{1, 1};
  Ratio second_level{2, 1};
  AdvisorFactory guidance;  // empty: unguided
};

struct Limits {
  std::size_t max_selections = 10000;
  double wall_time_seconds = 0.0;  // 0: unlimited
  std::size_t max_clauses = 200000;  // 0: unlimited
};

struct ProverOptions {
  SelectorConfig selector;
  Limits limits;
  double sine_tolerance = sine::kDefaultTolerance;
  bool factoring = true;
  bool subsumption_resolution = true;
};

enum class Outcome : std::uint8_t { proof, saturated, limit_reached };
std::string_view to_string(Outcome o);

struct ProverStats {
  std::size_t selections = 0;
  std::size_t generated = 0;  // inference conclusions before redundancy checks
  std::size_t retained = 0;
  std::size_t model_evaluations = 0;
  double model_eval_seconds = 0.0;
  double wall_seconds = 0.0;
};

struct SelectionEvent {
  std::size_t tick = 0;
  PickSource source = PickSource::b;
  fol::ClauseId clause = 0;
};

struct ProverResult {
  Outcome outcome = Outcome::saturated;
  derivation::DerivationDag dag;
  /// Clause of every DAG node, indexed by node id (= clause id).
  std::vector<fol::Clause> clauses;
  std::optional<derivation::NodeId> refutation;
  ProverStats stats;
  std::vector<SelectionEvent> trace;
};

/// Given-clause saturation with resolution, factoring, forward subsumption
/// and subsumption resolution. Input clauses become the first DAG nodes in
/// file order. Stops on the empty clause, an empty unprocessed set, or a
/// limit.
/// Rules the prover may apply under `options`.
std::vector<Rule> active_rules(const ProverOptions& options);

ProverResult saturate(const fol::Problem& problem, const ProverOptions& options);

/// Re-executes every inference recorded in the proof and checks that it
/// reproduces the recorded clause (up to variable renaming) and that the
/// proof ends in the empty clause. On failure `why` (if given) explains.
bool replay_proof(const fol::Problem& problem, const ProverResult& result,
                  std::string* why = nullptr);

}  // namespace derivguide::saturation
