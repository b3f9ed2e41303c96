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
// Command-line front end: corpus generation, proving, sweeps, training,
// looping and ablations. Tabular output is CSV, records are JSON lines.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "derivguide/harness/corpus.hpp"
#include "derivguide/harness/looping.hpp"
#include "derivguide/model/serialize.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace derivguide;

namespace {

struct ProverFlags {
  std::string ratio = "2:1";
  std::string age_weight = "1:1";
  std::size_t max_selections = 10000;
  double time_limit = 0.0;
  double sine_tolerance = sine::kDefaultTolerance;
  bool no_factoring = false;
  bool no_subsumption_resolution = false;

  void add_to(CLI::App& app) {
    app.add_option("--ratio", ratio, "second-level ratio A:B for layered selection");
    app.add_option("--age-weight", age_weight, "age:weight ratio of the base selection");
    app.add_option("--max-selections", max_selections, "selection budget per problem");
    app.add_option("--time-limit", time_limit, "wall-clock limit per problem in seconds (0: none)");
    app.add_option("--sine-tolerance", sine_tolerance, "SInE trigger tolerance (>= 1)");
    app.add_flag("--no-factoring", no_factoring, "disable the factoring rule");
    app.add_flag("--no-subsumption-resolution", no_subsumption_resolution,
                 "disable subsumption resolution");
  }

  saturation::ProverOptions options() const {
    saturation::ProverOptions o;
    o.selector.second_level = saturation::parse_ratio(ratio);
    o.selector.age_weight = saturation::parse_ratio(age_weight);
    o.limits.max_selections = max_selections;
    o.limits.wall_time_seconds = time_limit;
    o.sine_tolerance = sine_tolerance;
    o.factoring = !no_factoring;
    o.subsumption_resolution = !no_subsumption_resolution;
    return o;
  }
};

struct ModelFlags {
  std::uint32_t n = 32;
  std::size_t m = 50;
  std::uint32_t sine_cap = 16;
  bool no_sine = false;

  void add_to(CLI::App& app) {
    app.add_option("--n", n, "embedding dimension");
    app.add_option("--m", m, "number of revealed axioms");
    app.add_option("--sine-cap", sine_cap, "SInE level cap of the embedder");
    app.add_flag("--no-sine", no_sine, "train without the SInE embedder");
  }

  model::ModelConfig config() const {
    model::ModelConfig c;
    c.n = n;
    c.sine_cap = sine_cap;
    c.use_sine = !no_sine;
    return c;
  }
};

struct TrainFlags {
  training::TrainConfig config;
  std::size_t target_nodes = 20000;

  void add_to(CLI::App& app) {
    app.add_option("--epochs", config.epochs, "training epochs");
    app.add_option("--alpha-max", config.alpha_max, "peak learning rate");
    app.add_option("--warmup", config.warmup_epochs, "epoch of the learning-rate peak");
    app.add_option("--split", config.split, "training fraction of the batches");
    app.add_option("--swapout", config.swapout_p, "swapout probability (enables generic blocks)");
    app.add_option("--workers", config.workers, "gradient workers (1: sequential)");
    app.add_option("--seed", config.seed, "random seed");
    app.add_option("--target-nodes", target_nodes, "approximate nodes per batch");
  }
};

void write_stats_csv(const std::vector<training::EpochStats>& stats, const fs::path& path) {
  std::ofstream out(path);
  out << "epoch,train_loss,val_loss,tpr,tnr,alpha,mean_drift\n";
  out.precision(10);
  for (const auto& s : stats) {
    out << s.epoch << ',' << s.train_loss << ',' << s.val_loss << ',' << s.tpr << ',' << s.tnr << ','
        << s.alpha << ',' << s.mean_drift << '\n';
  }
}

void write_records_csv(std::span<const harness::RunRecord> records, std::ostream& out) {
  out << "problem,outcome,solved,selections,wall_seconds,model_eval_seconds,log_path,error\n";
  for (const auto& r : records) {
    std::string error = r.error.value_or("");
    for (char& c : error) {
      if (c == ',' || c == '\n') c = ';';
    }
    out << r.problem << ',' << saturation::to_string(r.outcome) << ',' << (r.solved() ? 1 : 0) << ','
        << r.selections << ',' << r.wall_seconds << ',' << r.model_eval_seconds << ',' << r.log_path
        << ',' << error << '\n';
  }
}

// Reads the problem and solved columns of a sweep CSV.
std::vector<harness::RunRecord> read_records_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open baseline '" + path.string() + "'");
  std::vector<harness::RunRecord> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() < 4) continue;
    harness::RunRecord r;
    r.problem = cells[0];
    if (cells[2] == "1") {
      r.outcome = saturation::Outcome::proof;
      r.replayed = true;
    }
    r.selections = std::stoul(cells[3]);
    out.push_back(std::move(r));
  }
  return out;
}

json summary_json(const harness::SweepSummary& s) {
  json j{{"problems", s.problems},
         {"solved", s.solved},
         {"errors", s.errors},
         {"mean_eval_fraction", s.mean_eval_fraction}};
  if (s.versus_baseline) {
    j["v_plus"] = s.versus_baseline->gained.size();
    j["v_minus"] = s.versus_baseline->lost.size();
    j["gained"] = s.versus_baseline->gained;
    j["lost"] = s.versus_baseline->lost;
  }
  return j;
}

std::vector<derivation::DerivationDag> load_logs(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".dag") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<derivation::DerivationDag> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back(derivation::DerivationDag::from_log(ss.str()));
  }
  return out;
}

std::vector<fol::Problem> load_problems(const std::string& where) {
  if (fs::is_directory(where)) return harness::load_corpus(where);
  return {fol::load_problem(where)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"derivguide: saturation prover with clause selection guided by derivation history"};
  app.require_subcommand(1);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "generate a synthetic problem corpus");
  harness::CorpusSpec corpus_spec;
  std::uint64_t corpus_seed = 1;
  std::string corpus_out;
  gen->add_option("--out", corpus_out, "output directory")->required();
  gen->add_option("--problems", corpus_spec.problems, "number of problems");
  gen->add_option("--pool", corpus_spec.pool, "named axioms in the shared pool");
  gen->add_option("--useful-fraction", corpus_spec.useful_fraction, "share of chain axioms in the pool");
  gen->add_option("--min-depth", corpus_spec.min_depth, "shortest chain between fact and goal");
  gen->add_option("--max-depth", corpus_spec.max_depth, "longest chain between fact and goal");
  gen->add_option("--decoys", corpus_spec.decoy_fraction, "fraction of satisfiable problems");
  gen->add_option("--noise-facts", corpus_spec.noise_facts, "junk facts per problem");
  gen->add_option("--seed", corpus_seed, "random seed");

  // prove
  auto* prove = app.add_subcommand("prove", "run the prover on one problem");
  std::string prove_problem, model_path, trace_path, log_path, clauses_path, ablation_text = "none";
  ProverFlags prove_flags;
  prove->add_option("problem", prove_problem, "CNF problem file")->required();
  prove->add_option("--model", model_path, "model guiding layered selection");
  prove->add_option("--ablation", ablation_text, "none, mask_axioms, generic_rules or fix_sine:<l>");
  prove->add_option("--trace-selections", trace_path, "write one line per selection");
  prove->add_option("--log", log_path, "write the derivation log");
  prove->add_option("--dump-clauses", clauses_path, "write every clause as <id> TAB <clause>");
  prove_flags.add_to(*prove);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run the prover over a corpus");
  std::string sweep_dir, sweep_csv, baseline_csv, sweep_logs;
  std::size_t sweep_threads = 1;
  ProverFlags sweep_flags;
  sweep->add_option("corpus", sweep_dir, "directory of problem files or one file")->required();
  sweep->add_option("--model", model_path, "model guiding layered selection");
  sweep->add_option("--ablation", ablation_text, "none, mask_axioms, generic_rules or fix_sine:<l>");
  sweep->add_option("--baseline", baseline_csv, "sweep CSV to compare against (V+/V-)");
  sweep->add_option("--csv", sweep_csv, "per-problem records (default: stdout)");
  sweep->add_option("--log-dir", sweep_logs, "derivation logs of solved problems");
  sweep->add_option("--threads", sweep_threads, "parallel prover runs");
  sweep_flags.add_to(*sweep);

  // train
  auto* train = app.add_subcommand("train", "train a model on derivation logs");
  std::string train_logs, failed_logs, train_out, stats_csv;
  ModelFlags model_flags;
  TrainFlags train_flags;
  train->add_option("--logs", train_logs, "directory of derivation logs (*.dag)")->required();
  train->add_option("--failed-logs", failed_logs, "failed baseline runs merged as extra negatives");
  train->add_option("--out", train_out, "model file")->required();
  train->add_option("--stats", stats_csv, "per-epoch statistics CSV");
  model_flags.add_to(*train);
  train_flags.add_to(*train);

  // loop
  auto* loop = app.add_subcommand("loop", "looping: retrain on growing sets of solved problems");
  std::string loop_dir, loop_report, loop_model, loop_ratios = "2:1";
  std::size_t loop_count = 2, loop_threads = 1;
  ProverFlags loop_flags;
  ModelFlags loop_model_flags;
  TrainFlags loop_train_flags;
  loop_train_flags.target_nodes = 2000;
  loop->add_option("corpus", loop_dir, "directory of problem files")->required();
  loop->add_option("--loops", loop_count, "guided loops after the baseline");
  loop->add_option("--ratios", loop_ratios, "comma-separated second-level ratios tried per loop");
  loop->add_option("--report", loop_report, "loop table CSV (default: stdout)");
  loop->add_option("--model-out", loop_model, "save the last loop's model");
  loop->add_option("--threads", loop_threads, "parallel prover runs");
  loop_flags.add_to(*loop);
  loop_model_flags.add_to(*loop);
  loop_train_flags.add_to(*loop);

  // ablate
  auto* ablate = app.add_subcommand("ablate", "sweep a corpus under an evaluation-time ablation");
  std::string ablate_dir, ablate_mode;
  ProverFlags ablate_flags;
  ablate->add_option("corpus", ablate_dir, "directory of problem files")->required();
  ablate->add_option("--model", model_path, "trained model")->required();
  ablate->add_option("--mode", ablate_mode, "mask_axioms, generic_rules or fix_sine:<l>")->required();
  ablate->add_option("--baseline", baseline_csv, "sweep CSV to compare against (V+/V-)");
  ablate->add_option("--csv", sweep_csv, "per-problem records (default: stdout)");
  ablate->add_option("--threads", sweep_threads, "parallel prover runs");
  ablate_flags.add_to(*ablate);

  CLI11_PARSE(app, argc, argv);

  try {
    auto guidance_for = [&](saturation::ProverOptions& options, const std::string& ablation) {
      if (model_path.empty()) return;
      auto m = std::make_shared<const model::Model>(model::load_model(model_path));
      std::string note;
      auto overrides = harness::ablate(*m, harness::parse_ablation(ablation), &note);
      model::check_guidance(*m, overrides, saturation::active_rules(options));
      if (!note.empty()) std::cerr << "note: " << note << "\n";
      options.selector.guidance = model::make_guidance(m, overrides);
    };
    auto run_sweep = [&](const std::string& dir, ProverFlags& flags, const std::string& ablation) {
      auto problems = load_problems(dir);
      harness::SweepConfig config{flags.options(), sweep_threads, std::nullopt};
      if (!sweep_logs.empty()) config.log_dir = sweep_logs;
      guidance_for(config.prover, ablation);
      auto records = harness::run_benchmark(problems, config);
      if (sweep_csv.empty()) {
        write_records_csv(records, std::cout);
      } else {
        std::ofstream out(sweep_csv);
        write_records_csv(records, out);
      }
      std::vector<harness::RunRecord> baseline;
      if (!baseline_csv.empty()) baseline = read_records_csv(baseline_csv);
      std::cerr << summary_json(harness::summarize(records, baseline)).dump() << "\n";
    };

    if (*gen) {
      auto corpus = harness::gen_corpus(corpus_spec, corpus_seed);
      harness::write_corpus(corpus, corpus_out);
      std::size_t unsat = 0;
      for (const auto& p : corpus.problems) unsat += p.unsatisfiable ? 1 : 0;
      std::cout << json{{"problems", corpus.problems.size()}, {"unsatisfiable", unsat},
                        {"useful_axioms", corpus.useful_axioms.size()},
                        {"junk_axioms", corpus.junk_axioms.size()}, {"dir", corpus_out}}
                       .dump()
                << "\n";
    } else if (*prove) {
      auto problem = fol::load_problem(prove_problem);
      auto options = prove_flags.options();
      guidance_for(options, ablation_text);
      auto result = saturation::saturate(problem, options);
      json j{{"problem", problem.name},
             {"outcome", saturation::to_string(result.outcome)},
             {"selections", result.stats.selections},
             {"generated", result.stats.generated},
             {"retained", result.stats.retained},
             {"model_evaluations", result.stats.model_evaluations},
             {"model_eval_seconds", result.stats.model_eval_seconds},
             {"wall_seconds", result.stats.wall_seconds}};
      if (result.outcome == saturation::Outcome::proof) {
        j["proof_nodes"] = result.dag.proof()->size();
        j["replays"] = saturation::replay_proof(problem, result);
      }
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        for (const auto& e : result.trace) {
          out << e.tick << ", " << saturation::to_string(e.source) << ", " << e.clause << "\n";
        }
      }
      if (!log_path.empty()) std::ofstream(log_path) << result.dag.to_log();
      if (!clauses_path.empty()) {
        std::ofstream out(clauses_path);
        for (const auto& c : result.clauses) out << c.id() << '\t' << fol::to_string(c, problem.signature) << '\n';
      }
      std::cout << j.dump() << "\n";
    } else if (*sweep) {
      run_sweep(sweep_dir, sweep_flags, ablation_text);
    } else if (*ablate) {
      run_sweep(ablate_dir, ablate_flags, ablate_mode);
    } else if (*train) {
      auto dags = load_logs(train_logs);
      std::map<std::string, derivation::DerivationDag> failed;
      if (!failed_logs.empty()) {
        for (auto& d : load_logs(failed_logs)) failed.emplace(d.problem_name(), std::move(d));
      }
      std::vector<derivation::LabeledDerivation> labeled;
      for (auto& d : dags) {
        auto it = failed.find(d.problem_name());
        auto l = it == failed.end() ? derivation::make_labeled(std::move(d))
                                    : derivation::augment_with_failed_run(d, it->second);
        labeled.push_back(derivation::prune_to_examples(l));
      }
      std::vector<derivation::DerivationDag> plain;
      for (const auto& l : labeled) plain.push_back(l.dag);
      auto mc = model_flags.config();
      mc.revealed_axioms = harness::select_revealed_axioms(plain, model_flags.m);
      mc.generic_blocks = train_flags.config.swapout_p > 0.0;
      derivation::AxiomResolver resolver(mc.revealed_axioms, static_cast<int>(mc.sine_cap));
      auto batches = derivation::build_batches(labeled, resolver, train_flags.target_nodes);
      auto initial = model::Model::initialize(mc, train_flags.config.seed);
      auto result = train_flags.config.workers > 1
                        ? training::train_parallel(std::move(initial), batches, train_flags.config)
                        : training::train_sequential(std::move(initial), batches, train_flags.config);
      model::save_model(result.best, train_out);
      if (!stats_csv.empty()) write_stats_csv(result.stats, stats_csv);
      const auto& best = result.stats[result.best_epoch];
      std::cout << json{{"derivations", labeled.size()}, {"batches", batches.size()},
                        {"parameters", result.best.params().size()}, {"best_epoch", result.best_epoch},
                        {"val_loss", best.val_loss}, {"tpr", best.tpr}, {"tnr", best.tnr}}
                       .dump()
                << "\n";
    } else if (*loop) {
      auto problems = harness::load_corpus(loop_dir);
      harness::LoopConfig config;
      config.loops = loop_count;
      config.prover = loop_flags.options();
      config.guided_ratios.clear();
      std::stringstream ss(loop_ratios);
      for (std::string r; std::getline(ss, r, ',');) config.guided_ratios.push_back(saturation::parse_ratio(r));
      config.model = loop_model_flags.config();
      config.m = loop_model_flags.m;
      config.train = loop_train_flags.config;
      config.parallel_training = loop_train_flags.config.workers > 1;
      config.target_nodes = loop_train_flags.target_nodes;
      config.threads = loop_threads;
      config.log = [](const std::string& message) { std::cerr << message << "\n"; };
      auto report = harness::loop(problems, config);
      std::ostringstream table;
      table << "loop,collected,m,performance,v_percent,percent_collected,cumulative\n";
      for (const auto& row : report.rows) {
        table << row.loop << ',' << row.collected << ',' << row.m << ',' << row.performance << ','
              << row.versus_baseline << ','
              << (row.percent_collected ? std::to_string(*row.percent_collected) : "") << ','
              << row.cumulative << '\n';
      }
      if (loop_report.empty()) {
        std::cout << table.str();
      } else {
        std::ofstream(loop_report) << table.str();
      }
      if (!loop_model.empty() && report.last_model) model::save_model(*report.last_model, loop_model);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
