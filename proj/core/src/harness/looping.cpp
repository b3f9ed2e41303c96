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
#include "derivguide/harness/looping.hpp"

#include <map>
#include <memory>

namespace derivguide::harness {

using derivation::DerivationDag;
using derivation::LabeledDerivation;

std::vector<LabeledDerivation> assemble_training_set(
    const std::map<std::string, CollectedDerivation>& collected,
    const std::map<std::string, DerivationDag>& baseline_runs) {
  std::vector<LabeledDerivation> out;
  for (const auto& [name, c] : collected) {
    try {
      LabeledDerivation labeled;
      auto failed = baseline_runs.find(name);
      if (c.loop > 0 && failed != baseline_runs.end()) {
        labeled = derivation::augment_with_failed_run(c.dag, failed->second);
      } else {
        labeled = derivation::make_labeled(c.dag);
      }
      out.push_back(derivation::prune_to_examples(labeled));
    } catch (const derivation::LabelError&) {
      // A refutation among the inputs leaves nothing to learn from.
    }
  }
  return out;
}

LoopReport loop(std::span<const fol::Problem> problems, const LoopConfig& config) {
  auto log = [&](const std::string& message) {
    if (config.log) config.log(message);
  };
  LoopReport report;
  std::map<std::string, CollectedDerivation> collected;
  std::map<std::string, DerivationDag> baseline_runs;
  std::set<std::string> solved_so_far;

  SweepConfig sweep{config.prover, config.threads, std::nullopt};
  sweep.prover.selector.guidance = nullptr;
  auto baseline = run_benchmark(problems, sweep);
  for (auto& r : baseline) {
    if (r.solved()) {
      solved_so_far.insert(r.problem);
      collected.emplace(r.problem, CollectedDerivation{0, r.dag});
    } else if (!r.error) {
      baseline_runs.emplace(r.problem, std::move(r.dag));
    }
  }
  const std::size_t base_solved = solved_so_far.size();
  if (base_solved == 0) throw LoopAborted("loop 0 (baseline) solved no problem");
  report.rows.push_back(LoopRow{0, 0, 0, base_solved, 0.0, std::nullopt, base_solved, std::nullopt});
  report.cumulative.push_back(solved_so_far);
  log("loop 0: baseline solved " + std::to_string(base_solved) + "/" + std::to_string(problems.size()));

  for (std::size_t index = 1; index <= config.loops; ++index) {
    auto training_set = assemble_training_set(collected, baseline_runs);
    std::vector<DerivationDag> dags;
    for (const auto& l : training_set) dags.push_back(l.dag);
    model::ModelConfig mc = config.model;
    mc.revealed_axioms = select_revealed_axioms(dags, config.m);
    mc.generic_blocks = mc.generic_blocks || config.train.swapout_p > 0.0;
    derivation::AxiomResolver resolver(mc.revealed_axioms, static_cast<int>(mc.sine_cap));
    auto batches = derivation::build_batches(training_set, resolver, config.target_nodes);
    auto initial = model::Model::initialize(mc, config.train.seed + index);
    auto trained = config.parallel_training
                       ? training::train_parallel(std::move(initial), batches, config.train)
                       : training::train_sequential(std::move(initial), batches, config.train);
    const double best_val = trained.stats[trained.best_epoch].val_loss;
    log("loop " + std::to_string(index) + ": trained on " + std::to_string(training_set.size()) +
        " derivations in " + std::to_string(batches.size()) + " batches, best epoch " +
        std::to_string(trained.best_epoch) + ", validation loss " + std::to_string(best_val));
    auto model = std::make_shared<const model::Model>(std::move(trained.best));

    std::size_t best = 0;
    for (const auto& ratio : config.guided_ratios) {
      SweepConfig guided = sweep;
      guided.prover.selector.second_level = ratio;
      guided.prover.selector.guidance = model::make_guidance(model);
      auto records = run_benchmark(problems, guided);
      std::size_t solved = 0;
      for (auto& r : records) {
        if (!r.solved()) continue;
        ++solved;
        solved_so_far.insert(r.problem);
        collected.try_emplace(r.problem, CollectedDerivation{index, std::move(r.dag)});
      }
      log("loop " + std::to_string(index) + ": ratio " + saturation::to_string(ratio) + " solved " +
          std::to_string(solved));
      best = std::max(best, solved);
    }
    if (best == 0) throw LoopAborted("loop " + std::to_string(index) + " solved no problem");

    LoopRow row;
    row.loop = index;
    row.collected = training_set.size();
    row.m = mc.revealed_axioms.size();
    row.performance = best;
    row.versus_baseline = 100.0 * (static_cast<double>(best) - static_cast<double>(base_solved)) /
                          static_cast<double>(base_solved);
    if (row.collected > 0) {
      row.percent_collected = 100.0 * static_cast<double>(best) / static_cast<double>(row.collected);
    }
    row.cumulative = solved_so_far.size();
    row.best_val_loss = best_val;
    report.rows.push_back(row);
    report.cumulative.push_back(solved_so_far);
    report.last_model = *model;
  }
  return report;
}

}  // namespace derivguide::harness
