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

#include <span>
#include <unordered_map>
#include <vector>

#include "derivguide/model/model.hpp"

namespace derivguide::model {

enum class Activation : std::uint8_t { relu, identity };

/// The SInE level as fed to the embedder: min(level, cap) / cap, with an
/// unreached level (negative) at 1.
double sine_feature(int level, std::uint32_t cap);

/// S(I_tag, level) = relu(W_S [I_tag; phi(level)] + b_S), or I_tag for a
/// model without SInE input. `activation` exists for tests.
Eigen::VectorXd embed_initial(const Model& model, const derivation::AxiomTag& tag, int level,
                              Activation activation = Activation::relu);

/// Deriv function of `rule`: relu(W v + b) for one premise, relu(W [v1; v2] + b)
/// for two, and a left fold of the binary block D(...D(D(v1, v2), v3)..., vk)
/// beyond. `use_generic` swaps in the per-arity generic block. Throws
/// ModelMismatch when the needed block is absent.
Eigen::VectorXd embed_derived(const Model& model, Rule rule,
                              std::span<const Eigen::VectorXd> premises, bool use_generic = false);

/// Eval head: w2 . relu(W1 v + b1) + b2.
double evaluate(const Model& model, const Eigen::Ref<const Eigen::VectorXd>& v);
inline bool classify(double score) { return score >= 0.0; }

struct EvalOptions {
  bool all_generic = false;
  std::span<const std::uint8_t> generic_mask;  // per node, empty for none
};

/// Intermediate values kept for the backward pass.
struct Tape {
  Eigen::MatrixXd pre;       // n x N: pre-activation of each node's last stage
  Eigen::MatrixXd head_pre;  // n x N: W1 v + b1
  /// Fold intermediates of nodes with more than two premises: per stage the
  /// pre-activation and output.
  std::unordered_map<std::uint32_t, std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>> folds;
};

struct ForwardResult {
  Eigen::MatrixXd embeddings;  // n x N
  std::vector<double> scores;
  std::size_t block_evaluations = 0;  // embed + eval invocations
};

/// One bottom-up pass over a topologically ordered node list; each node is
/// computed exactly once. Throws ModelError when a premise does not precede
/// its consumer (which includes any cycle).
ForwardResult forward_dag(const Model& model, std::span<const derivation::NetNode> nodes,
                          const EvalOptions& options = {}, Tape* tape = nullptr);

/// Which deriv block a node uses: the rule's own or the generic one.
struct DerivBlock {
  const Block* weight;
  const Block* bias;
};
DerivBlock select_block(const Model& model, Rule rule, std::size_t premise_count, bool use_generic);

}  // namespace derivguide::model
