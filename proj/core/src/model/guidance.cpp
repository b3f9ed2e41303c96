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
#include "derivguide/model/guidance.hpp"

#include <algorithm>

namespace derivguide::model {

using derivation::DerivationDag;
using derivation::NodeId;

namespace {

derivation::InitialOverrides initial_overrides(const EvalOverrides& o) {
  return {o.mask_axioms, o.fixed_sine_level};
}

}  // namespace

GuidedAdvisor::GuidedAdvisor(std::shared_ptr<const Model> model, const EvalOverrides& overrides)
    : model_(std::move(model)),
      resolver_(model_->config().revealed_axioms, static_cast<int>(model_->config().sine_cap),
                initial_overrides(overrides)),
      generic_(overrides.generic_rules) {}

bool GuidedAdvisor::is_positive(const DerivationDag& dag, NodeId node, const fol::Clause&) {
  extend(dag, node);
  return classify(scores_[collapsed_[node]]);
}

void GuidedAdvisor::extend(const DerivationDag& dag, NodeId upto) {
  while (collapsed_.size() <= upto) {
    const NodeId id = static_cast<NodeId>(collapsed_.size());
    derivation::NetNode net;
    if (const auto* init = std::get_if<derivation::InitialNode>(&dag[id])) {
      net = resolver_.resolve(*init);
    } else {
      const auto& d = std::get<derivation::DerivedNode>(dag[id]);
      derivation::NetDerived nd{d.rule, {}};
      nd.premises.reserve(d.premises.size());
      for (NodeId p : d.premises) nd.premises.push_back(collapsed_.at(p));
      net = std::move(nd);
    }
    const std::size_t before = collapser_.nodes().size();
    const std::uint32_t cid = collapser_.add(std::move(net));
    collapsed_.push_back(cid);
    if (collapser_.nodes().size() == before) continue;

    const auto& stored = collapser_.nodes()[cid];
    Eigen::VectorXd v;
    if (const auto* init = std::get_if<derivation::NetInitial>(&stored)) {
      v = embed_initial(*model_, init->tag, init->level);
    } else {
      const auto& d = std::get<derivation::NetDerived>(stored);
      std::vector<Eigen::VectorXd> premises;
      premises.reserve(d.premises.size());
      for (auto p : d.premises) premises.push_back(embeddings_[p]);
      v = embed_derived(*model_, d.rule, premises, generic_);
    }
    scores_.push_back(evaluate(*model_, v));
    embeddings_.push_back(std::move(v));
  }
}

std::optional<std::string> check_guidance(const Model& model, const EvalOverrides& overrides,
                                          const std::vector<Rule>& prover_rules) {
  const auto& config = model.config();
  if (overrides.generic_rules) {
    if (!config.generic_blocks) {
      throw ModelMismatch("generic_rules ablation needs a model trained with swapout");
    }
  } else {
    for (Rule r : prover_rules) {
      if (std::find(config.rules.begin(), config.rules.end(), r) == config.rules.end()) {
        throw ModelMismatch("model has no deriv block for rule '" + std::string(rule_name(r)) +
                            "' which the prover applies");
      }
    }
  }
  if (overrides.fixed_sine_level && !config.use_sine) {
    return "model was trained without SInE input; fixing the SInE level has no effect";
  }
  return std::nullopt;
}

saturation::AdvisorFactory make_guidance(std::shared_ptr<const Model> model,
                                         const EvalOverrides& overrides) {
  if (overrides.generic_rules && !model->config().generic_blocks) {
    throw ModelMismatch("generic_rules ablation needs a model trained with swapout");
  }
  return [model = std::move(model), overrides]() -> std::unique_ptr<saturation::ClauseAdvisor> {
    return std::make_unique<GuidedAdvisor>(model, overrides);
  };
}

}  // namespace derivguide::model
