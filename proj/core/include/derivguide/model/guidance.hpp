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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "derivguide/model/network.hpp"
#include "derivguide/saturation/prover.hpp"

namespace derivguide::model {

/// Evaluation-time ablations.
struct EvalOverrides {
  bool mask_axioms = false;             // every non-goal axiom presented as unknown
  bool generic_rules = false;           // generic per-arity deriv blocks everywhere
  std::optional<int> fixed_sine_level;  // every initial node gets this level
};

/// Classifies clauses of one proof attempt by their derivation history.
/// Embeddings are memoized per collapse key, so each distinct node is
/// evaluated once per run.
class GuidedAdvisor : public saturation::ClauseAdvisor {
 public:
  GuidedAdvisor(std::shared_ptr<const Model> model, const EvalOverrides& overrides);

  bool is_positive(const derivation::DerivationDag& dag, derivation::NodeId node,
                   const fol::Clause& clause) override;

  /// Score of a DAG node already seen by is_positive.
  double score(derivation::NodeId node) const { return scores_.at(collapsed_.at(node)); }
  std::size_t distinct_nodes() const { return scores_.size(); }

 private:
  void extend(const derivation::DerivationDag& dag, derivation::NodeId upto);

  std::shared_ptr<const Model> model_;
  derivation::AxiomResolver resolver_;
  bool generic_;
  derivation::Collapser collapser_;
  std::vector<std::uint32_t> collapsed_;  // DAG node -> collapsed id
  std::vector<Eigen::VectorXd> embeddings_;
  std::vector<double> scores_;
};

/// Checks that `model` can evaluate every rule in `prover_rules` under
/// `overrides`; throws ModelMismatch otherwise. Returns a note for
/// overrides that have no effect on this model.
std::optional<std::string> check_guidance(const Model& model, const EvalOverrides& overrides,
                                          const std::vector<Rule>& prover_rules);

saturation::AdvisorFactory make_guidance(std::shared_ptr<const Model> model,
                                         const EvalOverrides& overrides = {});

}  // namespace derivguide::model
