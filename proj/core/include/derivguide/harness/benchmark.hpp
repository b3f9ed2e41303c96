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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "derivguide/model/guidance.hpp"
#include "derivguide/saturation/prover.hpp"

namespace derivguide::harness {

struct RunRecord {
  std::string problem;
  saturation::Outcome outcome = saturation::Outcome::limit_reached;
  std::size_t selections = 0;
  double wall_seconds = 0.0;
  double model_eval_seconds = 0.0;
  std::string log_path;             // empty unless logs were written
  bool replayed = false;            // proof re-executed successfully
  std::optional<std::string> error; // quarantined problem
  derivation::DerivationDag dag;    // full run, proof-marked when solved

  bool solved() const { return outcome == saturation::Outcome::proof && replayed && !error; }
};

struct SweepConfig {
  saturation::ProverOptions prover;
  std::size_t threads = 1;
  std::optional<std::filesystem::path> log_dir;  // derivation logs of solved problems
};

/// Proves every problem; a problem that throws is quarantined with its
/// error and never aborts the sweep. Records are in input order.
std::vector<RunRecord> run_benchmark(std::span<const fol::Problem> problems, const SweepConfig& config);

struct Comparison {
  std::vector<std::string> gained;  // V+: solved here, not by the baseline
  std::vector<std::string> lost;    // V-: solved by the baseline, not here
};
Comparison compare(std::span<const RunRecord> baseline, std::span<const RunRecord> run);

struct SweepSummary {
  std::size_t problems = 0;
  std::size_t solved = 0;
  std::size_t errors = 0;
  double mean_eval_fraction = 0.0;  // mean over runs of model-eval / wall time
  std::optional<Comparison> versus_baseline;
};
SweepSummary summarize(std::span<const RunRecord> records,
                       std::span<const RunRecord> baseline = {});

/// Mean selections of the problems solved in both sweeps, as
/// (baseline, run); nullopt when none is common.
std::optional<std::pair<double, double>> mean_common_selections(std::span<const RunRecord> baseline,
                                                                std::span<const RunRecord> run);

/// The m axiom names occurring in the most derivations (ties by name).
std::vector<std::string> select_revealed_axioms(std::span<const derivation::DerivationDag> derivations,
                                                std::size_t m);

enum class AblationMode { none, mask_axioms, generic_rules, fix_sine };

struct Ablation {
  AblationMode mode = AblationMode::none;
  int level = 0;  // fix_sine only
};

/// Accepts "none", "mask_axioms", "generic_rules" and "fix_sine:<level>".
Ablation parse_ablation(std::string_view text);
std::string to_string(const Ablation& a);

/// Evaluation overrides realizing an ablation on `model`. Throws
/// ModelMismatch for generic_rules on a model without generic blocks; a
/// no-op ablation is reported through `note`.
model::EvalOverrides ablate(const model::Model& model, const Ablation& ablation,
                            std::string* note = nullptr);

}  // namespace derivguide::harness
