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

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "derivguide/derivation/batch.hpp"

namespace derivguide::model {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The model lacks a deriv block for a rule the prover applies.
class ModelMismatch : public ModelError {
 public:
  using ModelError::ModelError;
};

struct ModelConfig {
  std::uint32_t n = 32;                         // embedding dimension
  std::vector<std::string> revealed_axioms;     // m names, index = position
  std::vector<Rule> rules{std::begin(kAllRules), std::end(kAllRules)};
  std::uint32_t sine_cap = 16;
  bool use_sine = true;        // initial embeddings pass through the SInE embedder
  bool generic_blocks = false; // per-arity generic deriv blocks (trained by swapout)

  std::size_t m() const { return revealed_axioms.size(); }
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// A named slice of the flat parameter vector holding a column-major
/// rows x cols matrix (cols == 1 for vectors).
struct Block {
  std::string name;
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
};

/// Where each parameter tensor lives in the flat vector, in this order:
/// init embeddings (n x (m+2): revealed axioms, unknown, goal), SInE
/// embedder (n x (n+1), n), per rule (n x arity*n, n), generic blocks for
/// arity 1 and 2, eval head (n x n, n, 1 x n, 1).
class ParamLayout {
 public:
  explicit ParamLayout(const ModelConfig& config);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t total() const { return total_; }

  const Block& init() const { return blocks_[init_]; }
  const Block* sine_weight() const { return sine_ ? &blocks_[*sine_] : nullptr; }
  const Block* sine_bias() const { return sine_ ? &blocks_[*sine_ + 1] : nullptr; }
  /// Weight and bias of a rule's deriv block; nullptr if the model lacks it.
  const Block* rule_weight(Rule r) const;
  const Block* rule_bias(Rule r) const;
  const Block* generic_weight(std::size_t arity) const;
  const Block* generic_bias(std::size_t arity) const;
  const Block& head_w1() const { return blocks_[head_]; }
  const Block& head_b1() const { return blocks_[head_ + 1]; }
  const Block& head_w2() const { return blocks_[head_ + 2]; }
  const Block& head_b2() const { return blocks_[head_ + 3]; }

  /// Name of the block containing flat index `i`.
  const std::string& block_name(std::size_t i) const;

 private:
  std::size_t add(std::string name, std::size_t rows, std::size_t cols);

  std::vector<Block> blocks_;
  std::size_t total_ = 0;
  std::size_t init_ = 0;
  std::optional<std::size_t> sine_;
  std::optional<std::size_t> rule_[3];
  std::optional<std::size_t> generic_[3];
  std::size_t head_ = 0;
};

/// A model: configuration plus all learnable parameters in one flat vector.
class Model {
 public:
  Model(ModelConfig config, std::vector<double> params);

  /// Seeded initialization: weight matrices uniform in [-1/sqrt(n), 1/sqrt(n)],
  /// embeddings standard normal scaled by 1/sqrt(n), biases zero.
  static Model initialize(ModelConfig config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  const ParamLayout& layout() const { return layout_; }
  const std::vector<double>& params() const { return params_; }
  std::vector<double>& mutable_params() { return params_; }
  std::size_t n() const { return config_.n; }

  Eigen::Map<const Eigen::MatrixXd> matrix(const Block& b) const {
    return {params_.data() + b.offset, static_cast<Eigen::Index>(b.rows),
            static_cast<Eigen::Index>(b.cols)};
  }
  Eigen::Map<const Eigen::VectorXd> vector(const Block& b) const {
    return {params_.data() + b.offset, static_cast<Eigen::Index>(b.size())};
  }

  /// Column of the init block for an axiom tag. Throws ModelError for a
  /// named index >= m.
  std::size_t init_column(const derivation::AxiomTag& tag) const;

 private:
  ModelConfig config_;
  ParamLayout layout_;
  std::vector<double> params_;
};

}  // namespace derivguide::model
