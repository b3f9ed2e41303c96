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

#include <span>
#include <stdexcept>
#include <vector>

#include "derivguide/model/network.hpp"

namespace derivguide::training {

/// -(y log sigmoid(s) + (1 - y) log(1 - sigmoid(s))), computed from the logit.
double bce_with_logits(double score, double target);

/// Weighted BCE summed over the batch's examples. `swapout` marks nodes
/// that use the generic deriv block (empty for none).
double loss(const model::Model& model, const derivation::Batch& batch,
            std::span<const std::uint8_t> swapout = {});

class NonFiniteGradient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;  // same layout as the model's parameters
  std::vector<double> scores;    // per batch node
};

/// Loss and its exact gradient by reverse accumulation over the batch.
/// Throws NonFiniteGradient naming the first offending parameter block.
LossGradient backward(const model::Model& model, const derivation::Batch& batch,
                      std::span<const std::uint8_t> swapout = {});

}  // namespace derivguide::training
