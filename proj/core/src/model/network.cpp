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

#include "derivguide/model/network.hpp"

#include <algorithm>

namespace derivguide::model {

using derivation::NetDerived;
using derivation::NetInitial;
using Eigen::VectorXd;

double sine_feature(int level, std::uint32_t cap) {
  if (level < 0) return 1.0;
  return static_cast<double>(std::min<std::uint32_t>(static_cast<std::uint32_t>(level), cap)) /
         static_cast<double>(cap);
}

namespace {

VectorXd relu(const VectorXd& z) { return z.cwiseMax(0.0); }

// Pre-activation of the SInE embedder for one initial node.
VectorXd sine_pre(const Model& model, const Eigen::Ref<const VectorXd>& base, int level) {
  const auto& layout = model.layout();
  const auto n = static_cast<Eigen::Index>(model.n());
  auto w = model.matrix(*layout.sine_weight());
  VectorXd z = model.vector(*layout.sine_bias());
  z.noalias() += w.leftCols(n) * base;
  z += w.col(n) * sine_feature(level, model.config().sine_cap);
  return z;
}

}  // namespace

VectorXd embed_initial(const Model& model, const derivation::AxiomTag& tag, int level,
                       Activation activation) {
  VectorXd base = model.matrix(model.layout().init()).col(static_cast<Eigen::Index>(model.init_column(tag)));
  if (!model.config().use_sine) return base;
  VectorXd z = sine_pre(model, base, level);
  return activation == Activation::relu ? relu(z) : z;
}

DerivBlock select_block(const Model& model, Rule rule, std::size_t premise_count, bool use_generic) {
  if (premise_count == 0) throw ModelError("derived node without premises");
  const std::size_t block_arity = std::min<std::size_t>(premise_count, 2);
  const auto& layout = model.layout();
  if (use_generic) {
    const Block* w = layout.generic_weight(block_arity);
    if (!w) throw ModelMismatch("model has no generic deriv blocks (trained without swapout)");
    return {w, layout.generic_bias(block_arity)};
  }
  const Block* w = layout.rule_weight(rule);
  if (!w) {
    throw ModelMismatch("model has no deriv block for rule '" + std::string(rule_name(rule)) +
                        "'; the prover strategy and the model disagree");
  }
  if (rule_arity(rule) != block_arity) {
    throw ModelError("rule '" + std::string(rule_name(rule)) + "' applied to " +
                     std::to_string(premise_count) + " premises");
  }
  return {w, layout.rule_bias(rule)};
}

namespace {

// Affine stage of a binary block on (left, right).
VectorXd binary_pre(const Model& model, const DerivBlock& block, const Eigen::Ref<const VectorXd>& left,
                    const Eigen::Ref<const VectorXd>& right) {
  const auto n = static_cast<Eigen::Index>(model.n());
  auto w = model.matrix(*block.weight);
  VectorXd z = model.vector(*block.bias);
  z.noalias() += w.leftCols(n) * left;
  z.noalias() += w.rightCols(n) * right;
  return z;
}

VectorXd unary_pre(const Model& model, const DerivBlock& block, const Eigen::Ref<const VectorXd>& v) {
  VectorXd z = model.vector(*block.bias);
  z.noalias() += model.matrix(*block.weight) * v;
  return z;
}

}  // namespace

VectorXd embed_derived(const Model& model, Rule rule, std::span<const VectorXd> premises,
                       bool use_generic) {
  DerivBlock block = select_block(model, rule, premises.size(), use_generic);
  if (premises.size() == 1) return relu(unary_pre(model, block, premises[0]));
  VectorXd acc = relu(binary_pre(model, block, premises[0], premises[1]));
  for (std::size_t k = 2; k < premises.size(); ++k) {
    acc = relu(binary_pre(model, block, acc, premises[k]));
  }
  return acc;
}

double evaluate(const Model& model, const Eigen::Ref<const VectorXd>& v) {
  const auto& layout = model.layout();
  VectorXd a = model.vector(layout.head_b1());
  a.noalias() += model.matrix(layout.head_w1()) * v;
  return model.vector(layout.head_w2()).dot(a.cwiseMax(0.0)) + model.vector(layout.head_b2())(0);
}

ForwardResult forward_dag(const Model& model, std::span<const derivation::NetNode> nodes,
                          const EvalOptions& options, Tape* tape) {
  const auto n = static_cast<Eigen::Index>(model.n());
  const auto count = static_cast<Eigen::Index>(nodes.size());
  const auto& layout = model.layout();
  if (!options.generic_mask.empty() && options.generic_mask.size() != nodes.size()) {
    throw ModelError("generic mask size does not match node count");
  }
  ForwardResult out;
  out.embeddings.resize(n, count);
  out.scores.resize(nodes.size());
  if (tape) {
    tape->pre.setZero(n, count);
    tape->head_pre.resize(n, count);
    tape->folds.clear();
  }
  auto init = model.matrix(layout.init());
  auto w1 = model.matrix(layout.head_w1());
  auto b1 = model.vector(layout.head_b1());
  auto w2 = model.vector(layout.head_w2());
  const double b2 = model.vector(layout.head_b2())(0);

  for (Eigen::Index i = 0; i < count; ++i) {
    const auto& node = nodes[static_cast<std::size_t>(i)];
    if (const auto* init_node = std::get_if<NetInitial>(&node)) {
      auto base = init.col(static_cast<Eigen::Index>(model.init_column(init_node->tag)));
      if (model.config().use_sine) {
        VectorXd z = sine_pre(model, base, init_node->level);
        out.embeddings.col(i) = z.cwiseMax(0.0);
        if (tape) tape->pre.col(i) = z;
      } else {
        out.embeddings.col(i) = base;
      }
    } else {
      const auto& d = std::get<NetDerived>(node);
      for (auto p : d.premises) {
        if (p >= static_cast<std::uint32_t>(i)) {
          throw ModelError("node " + std::to_string(i) + " consumes node " + std::to_string(p) +
                           " that does not precede it (cycle or bad order)");
        }
      }
      const bool generic = options.all_generic ||
                           (!options.generic_mask.empty() && options.generic_mask[static_cast<std::size_t>(i)]);
      DerivBlock block = select_block(model, d.rule, d.premises.size(), generic);
      VectorXd z;
      if (d.premises.size() == 1) {
        z = unary_pre(model, block, out.embeddings.col(d.premises[0]));
      } else {
        z = binary_pre(model, block, out.embeddings.col(d.premises[0]), out.embeddings.col(d.premises[1]));
        std::vector<std::pair<VectorXd, VectorXd>> stages;
        for (std::size_t k = 2; k < d.premises.size(); ++k) {
          VectorXd u = z.cwiseMax(0.0);
          if (tape) stages.emplace_back(z, u);
          z = binary_pre(model, block, u, out.embeddings.col(d.premises[k]));
        }
        if (tape && !stages.empty()) tape->folds.emplace(static_cast<std::uint32_t>(i), std::move(stages));
      }
      out.embeddings.col(i) = z.cwiseMax(0.0);
      if (tape) tape->pre.col(i) = z;
    }
    VectorXd a = b1;
    a.noalias() += w1 * out.embeddings.col(i);
    out.scores[static_cast<std::size_t>(i)] = w2.dot(a.cwiseMax(0.0)) + b2;
    if (tape) tape->head_pre.col(i) = a;
    out.block_evaluations += 2;
  }
  return out;
}

}  // namespace derivguide::model
