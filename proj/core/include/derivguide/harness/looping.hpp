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

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "derivguide/harness/benchmark.hpp"
#include "derivguide/training/trainer.hpp"

namespace derivguide::harness {

struct LoopConfig {
  std::size_t loops = 2;                        // guided loops after the baseline
  saturation::ProverOptions prover;             // baseline strategy and limits
  std::vector<saturation::Ratio> guided_ratios{{2, 1}};  // strategies tried per loop
  model::ModelConfig model;                     // revealed_axioms is filled per loop
  std::size_t m = 50;                           // revealed-axiom cap
  training::TrainConfig train;
  bool parallel_training = false;
  std::size_t target_nodes = 2000;              // batch size in nodes
  std::size_t threads = 1;                      // sweep threads
  std::function<void(const std::string&)> log;  // progress messages
};

struct LoopRow {
  std::size_t loop = 0;
  std::size_t collected = 0;    // derivations available for training
  std::size_t m = 0;
  std::size_t performance = 0;  // solved by the loop's best strategy
  double versus_baseline = 0.0; // percent change against loop 0
  std::optional<double> percent_collected;  // performance / collected
  std::size_t cumulative = 0;   // problems solved in any loop so far
  std::optional<double> best_val_loss;
};

struct LoopReport {
  std::vector<LoopRow> rows;
  std::vector<std::set<std::string>> cumulative;  // solved set after each loop
  std::optional<model::Model> last_model;
};

class LoopAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Training set of one loop: one derivation per solved problem, the earliest
/// one; a derivation found under guidance is merged with the problem's
/// failed baseline run, whose selected clauses become extra negatives.
struct CollectedDerivation {
  std::size_t loop = 0;
  derivation::DerivationDag dag;
};
std::vector<derivation::LabeledDerivation> assemble_training_set(
    const std::map<std::string, CollectedDerivation>& collected,
    const std::map<std::string, derivation::DerivationDag>& baseline_runs);

/// Loop 0 is the unguided baseline sweep; every further loop retrains on the
/// collected derivations and sweeps with each guided strategy. Throws
/// LoopAborted when a loop solves nothing.
LoopReport loop(std::span<const fol::Problem> problems, const LoopConfig& config);

}  // namespace derivguide::harness
