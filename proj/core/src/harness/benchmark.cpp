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
#include "derivguide/harness/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <thread>

namespace derivguide::harness {

namespace {

RunRecord prove_one(const fol::Problem& problem, const SweepConfig& config) {
  RunRecord record;
  record.problem = problem.name;
  try {
    auto result = saturation::saturate(problem, config.prover);
    record.outcome = result.outcome;
    record.selections = result.stats.selections;
    record.wall_seconds = result.stats.wall_seconds;
    record.model_eval_seconds = result.stats.model_eval_seconds;
    if (result.outcome == saturation::Outcome::proof) {
      std::string why;
      record.replayed = saturation::replay_proof(problem, result, &why);
      if (!record.replayed) record.error = "proof does not replay: " + why;
    }
    record.dag = std::move(result.dag);
    if (record.solved() && config.log_dir) {
      const auto path = *config.log_dir / (problem.name + ".dag");
      std::ofstream(path) << record.dag.to_log();
      record.log_path = path.string();
    }
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  return record;
}

}  // namespace

std::vector<RunRecord> run_benchmark(std::span<const fol::Problem> problems, const SweepConfig& config) {
  if (config.log_dir) std::filesystem::create_directories(*config.log_dir);
  std::vector<RunRecord> records(problems.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < problems.size(); k = next++) {
      records[k] = prove_one(problems[k], config);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, std::max<std::size_t>(problems.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

Comparison compare(std::span<const RunRecord> baseline, std::span<const RunRecord> run) {
  std::set<std::string> base, here;
  for (const auto& r : baseline) {
    if (r.solved()) base.insert(r.problem);
  }
  for (const auto& r : run) {
    if (r.solved()) here.insert(r.problem);
  }
  Comparison c;
  std::set_difference(here.begin(), here.end(), base.begin(), base.end(), std::back_inserter(c.gained));
  std::set_difference(base.begin(), base.end(), here.begin(), here.end(), std::back_inserter(c.lost));
  return c;
}

SweepSummary summarize(std::span<const RunRecord> records, std::span<const RunRecord> baseline) {
  SweepSummary s;
  s.problems = records.size();
  double fraction = 0;
  for (const auto& r : records) {
    if (r.solved()) ++s.solved;
    if (r.error) ++s.errors;
    if (r.wall_seconds > 0) fraction += std::clamp(r.model_eval_seconds / r.wall_seconds, 0.0, 1.0);
  }
  s.mean_eval_fraction = records.empty() ? 0.0 : fraction / static_cast<double>(records.size());
  if (!baseline.empty()) s.versus_baseline = compare(baseline, records);
  return s;
}

std::optional<std::pair<double, double>> mean_common_selections(std::span<const RunRecord> baseline,
                                                                std::span<const RunRecord> run) {
  std::map<std::string, std::size_t> base;
  for (const auto& r : baseline) {
    if (r.solved()) base.emplace(r.problem, r.selections);
  }
  double a = 0, b = 0;
  std::size_t common = 0;
  for (const auto& r : run) {
    auto it = base.find(r.problem);
    if (!r.solved() || it == base.end()) continue;
    a += static_cast<double>(it->second);
    b += static_cast<double>(r.selections);
    ++common;
  }
  if (common == 0) return std::nullopt;
  return std::make_pair(a / static_cast<double>(common), b / static_cast<double>(common));
}

std::vector<std::string> select_revealed_axioms(std::span<const derivation::DerivationDag> derivations,
                                                std::size_t m) {
  std::map<std::string, std::size_t> counts;
  for (const auto& dag : derivations) {
    std::set<std::string> names;
    for (const auto& node : dag.nodes()) {
      if (const auto* init = std::get_if<derivation::InitialNode>(&node)) {
        if (init->kind == derivation::AxiomKind::named) names.insert(init->name);
      }
    }
    for (const auto& n : names) ++counts[n];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  std::vector<std::string> out;
  for (std::size_t k = 0; k < std::min(m, ranked.size()); ++k) out.push_back(ranked[k].first);
  return out;
}

Ablation parse_ablation(std::string_view text) {
  if (text == "none") return {};
  if (text == "mask_axioms") return {AblationMode::mask_axioms, 0};
  if (text == "generic_rules") return {AblationMode::generic_rules, 0};
  constexpr std::string_view prefix = "fix_sine:";
  if (text.starts_with(prefix)) {
    const std::string level(text.substr(prefix.size()));
    std::size_t used = 0;
    int value = -1;
    try {
      value = std::stoi(level, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == level.size() && !level.empty() && value >= 0) return {AblationMode::fix_sine, value};
  }
  throw std::invalid_argument("unknown ablation '" + std::string(text) +
                              "' (expected none, mask_axioms, generic_rules or fix_sine:<level>)");
}

std::string to_string(const Ablation& a) {
  switch (a.mode) {
    case AblationMode::none: return "none";
    case AblationMode::mask_axioms: return "mask_axioms";
    case AblationMode::generic_rules: return "generic_rules";
    case AblationMode::fix_sine: return "fix_sine:" + std::to_string(a.level);
  }
  return "?";
}

model::EvalOverrides ablate(const model::Model& model, const Ablation& ablation, std::string* note) {
  model::EvalOverrides o;
  switch (ablation.mode) {
    case AblationMode::none: break;
    case AblationMode::mask_axioms: o.mask_axioms = true; break;
    case AblationMode::generic_rules: o.generic_rules = true; break;
    case AblationMode::fix_sine: o.fixed_sine_level = ablation.level; break;
  }
  auto warning = model::check_guidance(model, o, {Rule::resolution});
  if (note && warning) *note = *warning;
  return o;
}

}  // namespace derivguide::harness
