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
#include "derivguide/training/loss.hpp"

#include <cmath>

namespace derivguide::training {

using derivation::NetDerived;
using derivation::NetInitial;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double bce_with_logits(double score, double target) {
  return std::max(score, 0.0) - score * target + std::log1p(std::exp(-std::abs(score)));
}

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double weighted_loss(const derivation::Batch& batch, const std::vector<double>& scores) {
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch.is_example[i] && batch.weight[i] != 0.0) {
      total += batch.weight[i] * bce_with_logits(scores[i], batch.target[i]);
    }
  }
  return total;
}

model::EvalOptions options_for(std::span<const std::uint8_t> swapout) {
  model::EvalOptions options;
  options.generic_mask = swapout;
  return options;
}

// Mutable views into the flat gradient, mirroring Model::matrix/vector.
class GradientView {
 public:
  explicit GradientView(std::vector<double>& g) : g_(g) {}

  Eigen::Map<MatrixXd> matrix(const model::Block& b) {
    return {g_.data() + b.offset, static_cast<Index>(b.rows), static_cast<Index>(b.cols)};
  }
  Eigen::Map<VectorXd> vector(const model::Block& b) {
    return {g_.data() + b.offset, static_cast<Index>(b.size())};
  }

 private:
  std::vector<double>& g_;
};

}  // namespace

double loss(const model::Model& model, const derivation::Batch& batch,
            std::span<const std::uint8_t> swapout) {
  auto fwd = model::forward_dag(model, batch.nodes, options_for(swapout));
  return weighted_loss(batch, fwd.scores);
}

LossGradient backward(const model::Model& model, const derivation::Batch& batch,
                      std::span<const std::uint8_t> swapout) {
  const auto options = options_for(swapout);
  model::Tape tape;
  auto fwd = model::forward_dag(model, batch.nodes, options, &tape);

  const auto& layout = model.layout();
  const Index n = static_cast<Index>(model.n());
  const Index count = static_cast<Index>(batch.size());
  LossGradient out;
  out.loss = weighted_loss(batch, fwd.scores);
  out.gradient.assign(layout.total(), 0.0);
  GradientView grad(out.gradient);

  // Eval head, all nodes at once.
  VectorXd dscore = VectorXd::Zero(count);
  for (Index i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (batch.is_example[k] && batch.weight[k] != 0.0) {
      dscore(i) = batch.weight[k] * (sigmoid(fwd.scores[k]) - batch.target[k]);
    }
  }
  const MatrixXd g = tape.head_pre.cwiseMax(0.0);
  auto w1 = model.matrix(layout.head_w1());
  auto w2 = model.vector(layout.head_w2());
  grad.vector(layout.head_b2())(0) += dscore.sum();
  grad.vector(layout.head_w2()).noalias() += g * dscore;
  MatrixXd da = (w2 * dscore.transpose()).cwiseProduct(
      (tape.head_pre.array() > 0.0).cast<double>().matrix());
  grad.matrix(layout.head_w1()).noalias() += da * fwd.embeddings.transpose();
  grad.vector(layout.head_b1()).noalias() += da.rowwise().sum();
  MatrixXd dh = w1.transpose() * da;

  auto init = model.matrix(layout.init());
  auto ginit = grad.matrix(layout.init());

  for (Index i = count - 1; i >= 0; --i) {
    const auto& node = batch.nodes[static_cast<std::size_t>(i)];
    if (const auto* init_node = std::get_if<NetInitial>(&node)) {
      const Index col = static_cast<Index>(model.init_column(init_node->tag));
      if (!model.config().use_sine) {
        ginit.col(col) += dh.col(i);
        continue;
      }
      VectorXd dz = dh.col(i).cwiseProduct((tape.pre.col(i).array() > 0.0).cast<double>().matrix());
      const auto& wb = *layout.sine_weight();
      auto ws = model.matrix(wb);
      auto gws = grad.matrix(wb);
      gws.leftCols(n).noalias() += dz * init.col(col).transpose();
      gws.col(n) += dz * model::sine_feature(init_node->level, model.config().sine_cap);
      grad.vector(*layout.sine_bias()) += dz;
      ginit.col(col).noalias() += ws.leftCols(n).transpose() * dz;
      continue;
    }
    const auto& d = std::get<NetDerived>(node);
    const bool generic = options.all_generic ||
                         (!swapout.empty() && swapout[static_cast<std::size_t>(i)]);
    const auto block = model::select_block(model, d.rule, d.premises.size(), generic);
    auto w = model.matrix(*block.weight);
    auto gw = grad.matrix(*block.weight);
    auto gb = grad.vector(*block.bias);
    VectorXd dz = dh.col(i).cwiseProduct((tape.pre.col(i).array() > 0.0).cast<double>().matrix());
    const auto& p = d.premises;
    if (p.size() == 1) {
      gw.noalias() += dz * fwd.embeddings.col(p[0]).transpose();
      gb += dz;
      dh.col(p[0]).noalias() += w.transpose() * dz;
      continue;
    }
    if (p.size() > 2) {
      const auto& stages = tape.folds.at(static_cast<std::uint32_t>(i));
      for (std::size_t s = p.size() - 2; s >= 1; --s) {
        const auto& [z_prev, u_prev] = stages[s - 1];
        gw.leftCols(n).noalias() += dz * u_prev.transpose();
        gw.rightCols(n).noalias() += dz * fwd.embeddings.col(p[s + 1]).transpose();
        gb += dz;
        dh.col(p[s + 1]).noalias() += w.rightCols(n).transpose() * dz;
        VectorXd du = w.leftCols(n).transpose() * dz;
        dz = du.cwiseProduct((z_prev.array() > 0.0).cast<double>().matrix());
      }
    }
    gw.leftCols(n).noalias() += dz * fwd.embeddings.col(p[0]).transpose();
    gw.rightCols(n).noalias() += dz * fwd.embeddings.col(p[1]).transpose();
    gb += dz;
    dh.col(p[0]).noalias() += w.leftCols(n).transpose() * dz;
    dh.col(p[1]).noalias() += w.rightCols(n).transpose() * dz;
  }

  for (std::size_t k = 0; k < out.gradient.size(); ++k) {
    if (!std::isfinite(out.gradient[k])) {
      throw NonFiniteGradient("non-finite gradient in parameter block '" + layout.block_name(k) + "'");
    }
  }
  out.scores = std::move(fwd.scores);
  return out;
}

}  // namespace derivguide::training
