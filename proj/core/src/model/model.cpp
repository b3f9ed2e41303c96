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

#include <cmath>
#include <random>
#include <set>

namespace derivguide::model {

ParamLayout::ParamLayout(const ModelConfig& config) {
  const std::size_t n = config.n;
  if (n == 0) throw ModelError("embedding dimension must be positive");
  std::set<std::string> seen;
  for (const auto& name : config.revealed_axioms) {
    if (!seen.insert(name).second) throw ModelError("duplicate revealed axiom '" + name + "'");
  }
  init_ = add("init", n, config.m() + 2);
  if (config.use_sine) {
    sine_ = add("sine.weight", n, n + 1);
    add("sine.bias", n, 1);
  }
  for (Rule r : config.rules) {
    auto& slot = rule_[static_cast<int>(r)];
    if (slot) throw ModelError("rule listed twice: " + std::string(rule_name(r)));
    slot = add("deriv." + std::string(rule_name(r)) + ".weight", n, rule_arity(r) * n);
    add("deriv." + std::string(rule_name(r)) + ".bias", n, 1);
  }
  if (config.generic_blocks) {
    for (std::size_t arity = 1; arity <= 2; ++arity) {
      generic_[arity] = add("generic" + std::to_string(arity) + ".weight", n, arity * n);
      add("generic" + std::to_string(arity) + ".bias", n, 1);
    }
  }
  head_ = add("eval.w1", n, n);
  add("eval.b1", n, 1);
  add("eval.w2", 1, n);
  add("eval.b2", 1, 1);
}

std::size_t ParamLayout::add(std::string name, std::size_t rows, std::size_t cols) {
  blocks_.push_back(Block{std::move(name), total_, rows, cols});
  total_ += rows * cols;
  return blocks_.size() - 1;
}

const Block* ParamLayout::rule_weight(Rule r) const {
  const auto& slot = rule_[static_cast<int>(r)];
  return slot ? &blocks_[*slot] : nullptr;
}

const Block* ParamLayout::rule_bias(Rule r) const {
  const auto& slot = rule_[static_cast<int>(r)];
  return slot ? &blocks_[*slot + 1] : nullptr;
}

const Block* ParamLayout::generic_weight(std::size_t arity) const {
  if (arity < 1 || arity > 2 || !generic_[arity]) return nullptr;
  return &blocks_[*generic_[arity]];
}

const Block* ParamLayout::generic_bias(std::size_t arity) const {
  if (arity < 1 || arity > 2 || !generic_[arity]) return nullptr;
  return &blocks_[*generic_[arity] + 1];
}

const std::string& ParamLayout::block_name(std::size_t i) const {
  for (const auto& b : blocks_) {
    if (i >= b.offset && i < b.offset + b.size()) return b.name;
  }
  throw ModelError("parameter index " + std::to_string(i) + " out of range");
}

Model::Model(ModelConfig config, std::vector<double> params)
    : config_(std::move(config)), layout_(config_), params_(std::move(params)) {
  if (params_.size() != layout_.total()) {
    throw ModelError("parameter vector has " + std::to_string(params_.size()) +
                     " entries, layout needs " + std::to_string(layout_.total()));
  }
}

Model Model::initialize(ModelConfig config, std::uint64_t seed) {
  ParamLayout layout(config);
  std::vector<double> params(layout.total(), 0.0);
  std::mt19937_64 rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(config.n));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-scale, scale);
  for (const auto& b : layout.blocks()) {
    if (b.name == "init") {
      for (std::size_t k = 0; k < b.size(); ++k) params[b.offset + k] = normal(rng) * scale;
    } else if (b.name.ends_with(".weight") || b.name == "eval.w1" || b.name == "eval.w2") {
      // Drawn row by row; storage is column-major.
      for (std::size_t r = 0; r < b.rows; ++r) {
        for (std::size_t c = 0; c < b.cols; ++c) params[b.offset + c * b.rows + r] = uniform(rng);
      }
    }
  }
  return Model(std::move(config), std::move(params));
}

std::size_t Model::init_column(const derivation::AxiomTag& tag) const {
  switch (tag.kind) {
    case derivation::AxiomKind::named:
      if (tag.index >= config_.m()) {
        throw ModelError("axiom index " + std::to_string(tag.index) + " outside the " +
                         std::to_string(config_.m()) + " revealed axioms");
      }
      return tag.index;
    case derivation::AxiomKind::unknown: return config_.m();
    case derivation::AxiomKind::goal: return config_.m() + 1;
  }
  return config_.m();
}

}  // namespace derivguide::model
