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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "derivguide/fol/problem.hpp"
#include "derivguide/harness/benchmark.hpp"
#include "derivguide/harness/corpus.hpp"
#include "derivguide/harness/ground_oracle.hpp"
#include "derivguide/harness/looping.hpp"
#include "derivguide/model/serialize.hpp"
#include "derivguide/sine/sine.hpp"
#include "derivguide/training/trainer.hpp"
#include "random_dag.hpp"

namespace dg = derivguide;
namespace fs = std::filesystem;

namespace {

// Tolerances and settings.
constexpr double kGradRelTol = 1e-4;
constexpr double kGradFloor = 1e-6;
constexpr double kGradStep = 1e-5;
constexpr double kGradAgreement = 0.99;
constexpr double kGradSeconds = 120.0;
constexpr double kMergeRelTol = 1e-9;
constexpr std::size_t kCraftedBudget = 10000;
constexpr double kCraftedWallCap = 3.0;
constexpr double kCraftedSeconds = 60.0;
constexpr double kParallelRelTol = 1e-6;
constexpr std::size_t kCorpusProblems = 200;
constexpr std::uint64_t kCorpusSeed = 1;
constexpr std::size_t kSweepBudget = 50;
constexpr std::size_t kEpochs = 30;
constexpr std::size_t kWarmup = 10;
constexpr double kAlphaMax = 0.05;
constexpr std::size_t kTargetNodes = 1000;
constexpr double kValLossTarget = 0.3;
constexpr double kSelectionDrop = 0.10;
constexpr double kSwapoutP = 0.1;
constexpr double kLearnSeconds = 900.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<fs::path> crafted_files() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(DERIVGUIDE_CRAFTED_DIR)) {
    if (e.path().extension() == ".p") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

const std::vector<std::string> kRevealed{"ax0", "ax1", "ax2", "ax3", "ax4"};

// 1. Reverse-mode gradients against central differences.
Verdict gradient_exactness() {
  auto t0 = Clock::now();
  dg::model::ModelConfig config;
  config.n = 8;
  config.revealed_axioms = kRevealed;
  dg::derivation::AxiomResolver resolver(kRevealed, 16);
  double worst = 1.0;
  std::size_t max_nodes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    dg::derivation::Batch batch;
    while (true) {
      dg::testing::RandomDagSpec spec;
      spec.initial = 7;
      spec.derived = 30;
      std::vector<dg::derivation::LabeledDerivation> one{
          dg::derivation::make_labeled(dg::testing::random_dag(rng, spec))};
      batch = dg::derivation::merge_batch(one, resolver);
      std::set<dg::Rule> rules;
      for (const auto& n : batch.nodes) {
        if (const auto* d = std::get_if<dg::derivation::NetDerived>(&n)) rules.insert(d->rule);
      }
      if (batch.size() <= 50 && rules.size() == 3) break;
    }
    max_nodes = std::max(max_nodes, batch.size());
    // Jittered so that no pre-activation sits exactly on a relu kink.
    auto model = dg::model::Model::initialize(config, seed);
    std::normal_distribution<double> noise(0.0, 0.1);
    for (double& p : model.mutable_params()) p += noise(rng);
    auto analytic = dg::training::backward(model, batch);
    std::size_t good = 0;
    const std::size_t total = model.params().size();
    for (std::size_t k = 0; k < total; ++k) {
      auto& p = model.mutable_params();
      const double saved = p[k];
      p[k] = saved + kGradStep;
      const double up = dg::training::loss(model, batch);
      p[k] = saved - kGradStep;
      const double down = dg::training::loss(model, batch);
      p[k] = saved;
      const double numeric = (up - down) / (2 * kGradStep);
      const double scale = std::max({std::abs(numeric), std::abs(analytic.gradient[k]), kGradFloor});
      if (std::abs(numeric - analytic.gradient[k]) / scale <= kGradRelTol) ++good;
    }
    worst = std::min(worst, static_cast<double>(good) / static_cast<double>(total));
  }
  const double seconds = since(t0);
  return {worst >= kGradAgreement && seconds < kGradSeconds,
          fmt("worst agreement %.4f over 20 DAGs (<= %zu nodes), %.1fs", worst, max_nodes, seconds)};
}

// 2. Merged loss equals the sum of member losses; merged labels follow the
// pairwise weighted-mean rule.
Verdict merge_semantics() {
  dg::derivation::AxiomResolver resolver(kRevealed, 16);
  dg::model::ModelConfig config;
  config.n = 8;
  config.revealed_axioms = kRevealed;
  double worst_rel = 0.0;
  std::size_t label_mismatches = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(5000 + seed);
    auto model = dg::model::Model::initialize(config, seed);
    std::vector<dg::derivation::LabeledDerivation> ds;
    const std::size_t count = 2 + rng() % 5;
    double sum = 0.0;
    std::map<std::string, std::pair<double, double>> oracle;
    for (std::size_t k = 0; k < count; ++k) {
      dg::testing::RandomDagSpec spec;
      spec.initial = 3 + rng() % 4;
      spec.derived = 5 + rng() % 15;
      ds.push_back(dg::derivation::make_labeled(dg::testing::random_dag(rng, spec)));
      std::vector<dg::derivation::LabeledDerivation> one{ds.back()};
      sum += dg::training::loss(model, dg::derivation::merge_batch(one, resolver));
      auto keys = dg::testing::structural_keys(ds.back().dag, resolver);
      for (const auto& e : ds.back().examples) {
        auto [it, fresh] = oracle.try_emplace(keys[e.node], e.target, e.weight);
        if (fresh) continue;
        auto& [l1, w1] = it->second;
        l1 = (l1 * w1 + e.target * e.weight) / (w1 + e.weight);
        w1 += e.weight;
      }
    }
    auto batch = dg::derivation::merge_batch(ds, resolver);
    const double merged = dg::training::loss(model, batch);
    worst_rel = std::max(worst_rel, std::abs(merged - sum) / std::abs(sum));
    auto keys = dg::testing::structural_keys(batch);
    std::size_t examples = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!batch.is_example[i]) continue;
      ++examples;
      auto it = oracle.find(keys[i]);
      if (it == oracle.end() || it->second.first != batch.target[i] || it->second.second != batch.weight[i]) {
        ++label_mismatches;
      }
    }
    if (examples != oracle.size()) ++label_mismatches;
  }
  return {worst_rel <= kMergeRelTol && label_mismatches == 0,
          fmt("worst relative loss gap %.2e, %zu label mismatches over 50 sets", worst_rel, label_mismatches)};
}

// 3. The crafted corpus against the ground oracle.
Verdict crafted_corpus() {
  auto t0 = Clock::now();
  std::size_t agree = 0, unsat = 0, replayed = 0, proofs = 0, files = 0;
  std::string wrong;
  for (const auto& file : crafted_files()) {
    ++files;
    auto p = dg::fol::load_problem(file);
    const bool oracle = dg::harness::ground_oracle(p).unsatisfiable;
    unsat += oracle ? 1 : 0;
    dg::saturation::ProverOptions options;
    options.limits.max_selections = kCraftedBudget;
    options.limits.wall_time_seconds = kCraftedWallCap;
    auto r = dg::saturation::saturate(p, options);
    const bool proof = r.outcome == dg::saturation::Outcome::proof;
    if (proof == oracle) {
      ++agree;
    } else {
      wrong += " " + p.name;
    }
    if (proof) {
      ++proofs;
      replayed += dg::saturation::replay_proof(p, r) ? 1 : 0;
    }
  }
  const double seconds = since(t0);
  return {files == 30 && unsat == 20 && agree == files && replayed == proofs && seconds < kCraftedSeconds,
          fmt("%zu/%zu agree with oracle (%zu unsat), %zu/%zu proofs replay, %.1fs%s", agree, files, unsat,
              replayed, proofs, seconds, wrong.empty() ? "" : (", wrong:" + wrong).c_str())};
}

class PredicateAdvisor : public dg::saturation::ClauseAdvisor {
 public:
  explicit PredicateAdvisor(std::optional<dg::fol::SymbolId> pred) : pred_(pred) {}
  bool is_positive(const dg::derivation::DerivationDag&, dg::derivation::NodeId,
                   const dg::fol::Clause& c) override {
    for (const auto& l : c.literals()) {
      if (pred_ && l.predicate == *pred_) return true;
    }
    return false;
  }

 private:
  std::optional<dg::fol::SymbolId> pred_;
};

// 4. Layered selection with a fixed-predicate stub model.
Verdict layered_selection() {
  using dg::saturation::PickSource;
  std::size_t runs = 0, picks = 0, violations = 0;
  for (const auto& file : crafted_files()) {
    auto p = dg::fol::load_problem(file);
    // The goal's first predicate marks positive clauses.
    std::optional<dg::fol::SymbolId> pred;
    for (const auto& ic : p.clauses) {
      if (ic.role == dg::fol::Role::negated_conjecture && !ic.clause.empty()) pred = ic.clause[0].predicate;
    }
    dg::saturation::ProverOptions options;
    options.limits.max_selections = 300;
    options.limits.wall_time_seconds = kCraftedWallCap;
    options.selector.guidance = [pred] { return std::make_unique<PredicateAdvisor>(pred); };
    auto r = dg::saturation::saturate(p, options);
    ++runs;
    std::size_t a_slots = 0;
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      const auto& e = r.trace[k];
      const bool b_slot = k % 3 == 2;
      if (b_slot != (e.source == PickSource::b)) ++violations;
      a_slots += b_slot ? 0 : 1;
      const double expected = 2.0 * static_cast<double>(k + 1) / 3.0;
      if (std::abs(static_cast<double>(a_slots) - expected) > 1.0) ++violations;
      ++picks;
    }
  }
  // Fallback semantics against an explicit model of the two views.
  std::mt19937_64 rng(4);
  dg::saturation::LayeredSelector selector({1, 1}, {2, 1}, true);
  std::set<dg::fol::ClauseId> a_view, b_view;
  dg::fol::ClauseId next = 0;
  std::size_t fallbacks = 0;
  std::size_t made = 0;
  for (std::size_t tick = 0; tick < 3000; ++tick) {
    for (std::size_t k = rng() % 3; k > 0; --k) {
      const bool positive = rng() % 4 == 0;
      selector.add(next, 1 + rng() % 6, positive);
      b_view.insert(next);
      if (positive) a_view.insert(next);
      ++next;
    }
    if (b_view.empty()) continue;
    const bool a_slot = made++ % 3 != 2;
    const bool a_empty = a_view.empty();
    auto pick = selector.select();
    if (pick.source == PickSource::fallback) ++fallbacks;
    const PickSource expected = !a_slot ? PickSource::b : (a_empty ? PickSource::fallback : PickSource::a);
    if (pick.source != expected) ++violations;
    if (pick.source == PickSource::a && !a_view.contains(pick.id)) ++violations;
    if (!b_view.contains(pick.id)) ++violations;
    a_view.erase(pick.id);
    b_view.erase(pick.id);
  }
  return {violations == 0 && fallbacks > 0,
          fmt("%zu picks over %zu prover runs and 3000 simulated ticks (%zu fallbacks), %zu violations",
              picks, runs, fallbacks, violations)};
}

// 5. Learning-rate schedule and single-worker parallel training.
Verdict schedule_and_update() {
  dg::training::TrainConfig defaults;
  const bool exact = dg::training::lr_schedule(20, defaults) == 1.0e-4 &&
                     dg::training::lr_schedule(40, defaults) == 2.0e-4 &&
                     dg::training::lr_schedule(80, defaults) == 1.0e-4;
  dg::derivation::AxiomResolver resolver(kRevealed, 16);
  std::mt19937_64 rng(55);
  std::vector<dg::derivation::Batch> batches;
  for (int b = 0; b < 8; ++b) {
    std::vector<dg::derivation::LabeledDerivation> ds;
    for (int k = 0; k < 3; ++k) ds.push_back(dg::derivation::make_labeled(dg::testing::random_dag(rng, {})));
    batches.push_back(dg::derivation::merge_batch(ds, resolver));
  }
  dg::model::ModelConfig config;
  config.n = 8;
  config.revealed_axioms = kRevealed;
  auto initial = dg::model::Model::initialize(config, 5);
  dg::training::TrainConfig tc;
  tc.epochs = 10;
  tc.warmup_epochs = 4;
  tc.alpha_max = 0.05;
  tc.seed = 5;
  tc.workers = 1;
  auto seq = dg::training::train_sequential(initial, batches, tc);
  auto par = dg::training::train_parallel(initial, batches, tc);
  double worst = 0.0;
  for (std::size_t k = 0; k < seq.stats.size(); ++k) {
    worst = std::max(worst, std::abs(par.stats[k].train_loss - seq.stats[k].train_loss) /
                                std::max(std::abs(seq.stats[k].train_loss), 1e-300));
  }
  return {exact && seq.stats.size() == par.stats.size() && worst <= kParallelRelTol,
          fmt("alpha(20,40,80) = %.6g, %.6g, %.6g; worst per-epoch train-loss gap %.2e over %zu epochs",
              dg::training::lr_schedule(20, defaults), dg::training::lr_schedule(40, defaults),
              dg::training::lr_schedule(80, defaults), worst, seq.stats.size() - 1)};
}

// Shared state of the synthetic-corpus criteria 6 to 8.
struct Synthetic {
  std::vector<dg::fol::Problem> problems;
  std::vector<dg::harness::RunRecord> baseline;
  std::vector<dg::derivation::LabeledDerivation> training_set;
  std::vector<std::string> revealed;
};

Synthetic& synthetic() {
  static Synthetic s = [] {
    Synthetic out;
    dg::harness::CorpusSpec spec;
    spec.problems = kCorpusProblems;
    out.problems = dg::harness::parse_corpus(dg::harness::gen_corpus(spec, kCorpusSeed));
    dg::harness::SweepConfig sweep;
    sweep.prover.limits.max_selections = kSweepBudget;
    sweep.threads = 4;
    out.baseline = dg::harness::run_benchmark(out.problems, sweep);
    std::map<std::string, dg::harness::CollectedDerivation> collected;
    for (const auto& r : out.baseline) {
      if (r.solved()) collected.emplace(r.problem, dg::harness::CollectedDerivation{0, r.dag});
    }
    out.training_set = dg::harness::assemble_training_set(collected, {});
    std::vector<dg::derivation::DerivationDag> dags;
    for (const auto& l : out.training_set) dags.push_back(l.dag);
    out.revealed = dg::harness::select_revealed_axioms(dags, 50);
    return out;
  }();
  return s;
}

dg::training::TrainResult train_model(double swapout_p) {
  auto& s = synthetic();
  dg::model::ModelConfig mc;
  mc.n = 32;
  mc.revealed_axioms = s.revealed;
  mc.generic_blocks = swapout_p > 0.0;
  dg::derivation::AxiomResolver resolver(mc.revealed_axioms, static_cast<int>(mc.sine_cap));
  auto batches = dg::derivation::build_batches(s.training_set, resolver, kTargetNodes);
  dg::training::TrainConfig tc;
  tc.epochs = kEpochs;
  tc.warmup_epochs = kWarmup;
  tc.alpha_max = kAlphaMax;
  tc.swapout_p = swapout_p;
  tc.seed = 1;
  return dg::training::train_sequential(dg::model::Model::initialize(mc, 1), batches, tc);
}

std::vector<dg::harness::RunRecord> guided_sweep(const dg::model::Model& model,
                                                 const dg::model::EvalOverrides& overrides = {}) {
  dg::harness::SweepConfig sweep;
  sweep.prover.limits.max_selections = kSweepBudget;
  sweep.threads = 4;
  sweep.prover.selector.guidance =
      dg::model::make_guidance(std::make_shared<const dg::model::Model>(model), overrides);
  return dg::harness::run_benchmark(synthetic().problems, sweep);
}

std::optional<dg::training::TrainResult> full_model;
std::optional<std::size_t> full_solved;

// 6. End-to-end learnability on the synthetic corpus.
Verdict learnability() {
  auto t0 = Clock::now();
  auto& s = synthetic();
  full_model = train_model(0.0);
  const auto& stats = full_model->stats;
  const double start = stats.front().val_loss;
  const double best = stats[full_model->best_epoch].val_loss;
  auto guided = guided_sweep(full_model->best);
  auto base = dg::harness::summarize(s.baseline);
  auto run = dg::harness::summarize(guided, s.baseline);
  full_solved = run.solved;
  auto means = dg::harness::mean_common_selections(s.baseline, guided);
  const double drop = means ? 1.0 - means->second / means->first : 0.0;
  const double seconds = since(t0);
  const bool pass = best < kValLossTarget && run.solved >= base.solved && run.versus_baseline->gained.size() >= 1 &&
                    means && drop >= kSelectionDrop && seconds < kLearnSeconds;
  return {pass, fmt("val loss %.3f -> %.3f (epoch %zu); solved %zu -> %zu (V+ %zu, V- %zu); mean selections "
                    "%.2f -> %.2f (-%.0f%%); eval-time fraction %.2f; %.0fs",
                    start, best, full_model->best_epoch, base.solved, run.solved,
                    run.versus_baseline->gained.size(), run.versus_baseline->lost.size(),
                    means ? means->first : 0.0, means ? means->second : 0.0, 100.0 * drop,
                    run.mean_eval_fraction, seconds)};
}

// 7. Ablation ordering.
Verdict ablation_ordering() {
  if (!full_model) return {false, "needs the model of criterion 6"};
  dg::model::EvalOverrides masked;
  masked.mask_axioms = true;
  auto masked_solved = dg::harness::summarize(guided_sweep(full_model->best, masked)).solved;
  auto swapout = train_model(kSwapoutP);
  dg::model::EvalOverrides generic;
  generic.generic_rules = true;
  auto generic_solved = dg::harness::summarize(guided_sweep(swapout.best, generic)).solved;
  auto swapout_solved = dg::harness::summarize(guided_sweep(swapout.best)).solved;
  return {masked_solved < *full_solved && generic_solved <= *full_solved,
          fmt("full %zu, mask_axioms %zu, swapout model %zu, its generic_rules %zu", *full_solved,
              masked_solved, swapout_solved, generic_solved)};
}

// 8. Looping.
Verdict looping() {
  auto& s = synthetic();
  dg::harness::LoopConfig config;
  config.loops = 1;
  config.prover.limits.max_selections = kSweepBudget;
  config.model.n = 32;
  config.m = 50;
  config.train.epochs = kEpochs;
  config.train.warmup_epochs = kWarmup;
  config.train.alpha_max = kAlphaMax;
  config.train.seed = 1;
  config.target_nodes = kTargetNodes;
  config.threads = 4;
  auto report = dg::harness::loop(s.problems, config);
  bool monotone = true;
  for (std::size_t k = 1; k < report.cumulative.size(); ++k) {
    monotone = monotone && std::includes(report.cumulative[k].begin(), report.cumulative[k].end(),
                                         report.cumulative[k - 1].begin(), report.cumulative[k - 1].end());
  }
  const auto& rows = report.rows;
  const bool columns = rows.size() == 2 && rows[1].collected > 0 && rows[1].m > 0 && rows[1].percent_collected;
  std::string table;
  for (const auto& r : rows) {
    table += fmt(" [loop %zu: collected %zu, m %zu, performance %zu, cumulative %zu]", r.loop, r.collected, r.m,
                 r.performance, r.cumulative);
  }
  return {monotone && columns && rows.back().performance >= rows.front().performance, table.substr(1)};
}

// 9. SInE levels.
Verdict sine_levels() {
  auto worked = dg::fol::parse_problem(
      "cnf(g, negated_conjecture, ~p(a)). cnf(ax1, axiom, p(X) | ~q(X)). cnf(ax2, axiom, r(b)).");
  const bool example = dg::sine::sine_levels(worked, 1.0).level == std::vector<int>{0, 1, dg::kSineUnreached};
  std::vector<dg::fol::Problem> problems;
  for (const auto& f : crafted_files()) problems.push_back(dg::fol::load_problem(f));
  for (auto& p : synthetic().problems) problems.push_back(p);
  std::size_t goal_violations = 0, monotone_violations = 0;
  for (const auto& p : problems) {
    std::vector<int> previous;
    for (double tolerance : {1.0, 1.5, 3.0}) {
      auto levels = dg::sine::sine_levels(p, tolerance).level;
      for (std::size_t c = 0; c < p.clauses.size(); ++c) {
        if (p.clauses[c].role == dg::fol::Role::negated_conjecture && levels[c] != 0) ++goal_violations;
        if (previous.empty() || previous[c] == dg::kSineUnreached) continue;
        if (levels[c] == dg::kSineUnreached || levels[c] > previous[c]) ++monotone_violations;
      }
      previous = levels;
    }
  }
  return {example && goal_violations == 0 && monotone_violations == 0,
          fmt("worked example %s; %zu problems, %zu conjecture-level and %zu monotonicity violations",
              example ? "matches" : "differs", problems.size(), goal_violations, monotone_violations)};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10. Byte-identical round trips.
Verdict serialization() {
  const auto dir = fs::temp_directory_path() / "derivguide_acceptance";
  fs::create_directories(dir);
  std::mt19937_64 rng(10);
  std::size_t identical = 0;
  for (int k = 0; k < 10; ++k) {
    dg::model::ModelConfig c;
    c.n = 1 + rng() % 16;
    for (std::size_t a = rng() % 8; a > 0; --a) c.revealed_axioms.push_back("axiom_" + std::to_string(rng() % 1000) + "_" + std::to_string(a));
    c.generic_blocks = rng() % 2;
    c.use_sine = rng() % 2;
    auto model = dg::model::Model::initialize(c, rng());
    dg::model::save_model(model, dir / "a.model");
    dg::model::save_model(dg::model::load_model(dir / "a.model"), dir / "b.model");
    const bool model_same = read_file(dir / "a.model") == read_file(dir / "b.model");

    auto dag = dg::testing::random_dag(rng, {}, "problem_" + std::to_string(k));
    std::ofstream(dir / "a.dag") << dag.to_log();
    std::ofstream(dir / "b.dag") << dg::derivation::DerivationDag::from_log(read_file(dir / "a.dag")).to_log();
    const bool dag_same = read_file(dir / "a.dag") == read_file(dir / "b.dag");
    identical += model_same && dag_same ? 1 : 0;
  }
  fs::remove_all(dir);
  return {identical == 10, fmt("%zu/10 model and derivation-log round trips byte-identical", identical)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"gradient exactness", gradient_exactness},
      {"merge semantics", merge_semantics},
      {"crafted corpus soundness and completeness", crafted_corpus},
      {"layered selection", layered_selection},
      {"schedule and update rule", schedule_and_update},
      {"learnability", learnability},
      {"ablation ordering", ablation_ordering},
      {"looping", looping},
      {"SInE levels", sine_levels},
      {"serialization", serialization},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("criterion %zu (%s): %s: %s\n", k + 1, criteria[k].first, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
