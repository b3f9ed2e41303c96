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
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "derivguide/training/loss.hpp"

namespace derivguide::training {

struct TrainConfig {
  std::size_t epochs = 100;
  double alpha_max = 2.0e-4;
  std::size_t warmup_epochs = 40;
  double split = 0.9;       // training fraction, at batch granularity
  double swapout_p = 0.0;
  std::size_t workers = 1;  // train_parallel only
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when the configuration is inconsistent.
void validate(const TrainConfig& config);

/// t * alpha_max / warmup up to the warmup epoch, warmup * alpha_max / t after.
double lr_schedule(std::size_t epoch, const TrainConfig& config);

/// Per batch node: 1 if the node is derived and drew the generic block.
std::vector<std::uint8_t> apply_swapout(const derivation::Batch& batch, double p,
                                        std::mt19937_64& rng);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

/// Seeded shuffle of batch indices, then round(count * (1 - split))
/// validation batches (at least one when count >= 2). A single batch is
/// used for both roles.
Split split_batches(std::size_t count, double split, std::uint64_t seed);

struct Rates {
  double tpr = 1.0;
  double tnr = 1.0;
  bool has_positives = false;  // false: tpr reported as 1.0
  bool has_negatives = false;  // false: tnr reported as 1.0
};

/// Weighted TPR/TNR over the examples of `batches`; targets above 0.5 are
/// positives.
Rates rates(const model::Model& model, std::span<const derivation::Batch> batches,
            std::span<const std::size_t> which = {});

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;  // per unit example weight
  double val_loss = 0.0;    // per unit example weight
  double tpr = 1.0;
  double tnr = 1.0;
  double alpha = 0.0;
  double mean_drift = 0.0;
};

struct TrainResult {
  model::Model best;
  std::size_t best_epoch = 0;
  std::vector<EpochStats> stats;  // row 0 evaluates the initial parameters
  Split split;
};

class TrainingDiverged : public std::runtime_error {
 public:
  TrainingDiverged(std::size_t epoch, const std::string& what)
      : std::runtime_error(what), epoch(epoch) {}
  std::size_t epoch;
};

/// Plain SGD over shuffled training batches; returns the epoch-end snapshot
/// with the smallest validation loss.
TrainResult train_sequential(model::Model initial, std::span<const derivation::Batch> batches,
                             const TrainConfig& config);

/// Master-worker variant: `config.workers` threads compute gradients on
/// parameter snapshots, the master applies each result on arrival. With one
/// worker it performs exactly the sequential computation.
TrainResult train_parallel(model::Model initial, std::span<const derivation::Batch> batches,
                           const TrainConfig& config);

}  // namespace derivguide::training
