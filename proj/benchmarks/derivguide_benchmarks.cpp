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
#include <benchmark/benchmark.h>

#include <random>

#include "derivguide/harness/corpus.hpp"
#include "derivguide/saturation/prover.hpp"
#include "derivguide/training/loss.hpp"

namespace {

using namespace derivguide;

std::vector<derivation::NetNode> random_nodes(std::size_t count, std::uint32_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<derivation::NetNode> nodes;
  for (std::size_t i = 0; i < count; ++i) {
    if (i < 8 || rng() % 5 == 0) {
      derivation::AxiomTag tag{derivation::AxiomKind::named, static_cast<std::uint32_t>(rng() % m)};
      nodes.push_back(derivation::NetInitial{tag, static_cast<int>(rng() % 8)});
    } else {
      const Rule rule = kAllRules[rng() % 3];
      std::vector<std::uint32_t> premises;
      for (std::size_t k = 0; k < rule_arity(rule); ++k) premises.push_back(static_cast<std::uint32_t>(rng() % i));
      nodes.push_back(derivation::NetDerived{rule, std::move(premises)});
    }
  }
  return nodes;
}

model::Model bench_model(std::uint32_t n, std::uint32_t m) {
  model::ModelConfig config;
  config.n = n;
  for (std::uint32_t k = 0; k < m; ++k) config.revealed_axioms.push_back("ax" + std::to_string(k));
  return model::Model::initialize(config, 7);
}

void BM_ForwardDag(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto count = static_cast<std::size_t>(state.range(1));
  auto model = bench_model(n, 50);
  auto nodes = random_nodes(count, 50, 3);
  for (auto _ : state) benchmark::DoNotOptimize(model::forward_dag(model, nodes).scores.data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}
BENCHMARK(BM_ForwardDag)->Args({32, 1000})->Args({32, 20000})->Args({128, 1000});

void BM_Backward(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  auto model = bench_model(32, 50);
  derivation::Batch batch;
  batch.nodes = random_nodes(count, 50, 5);
  batch.target.assign(count, 0.0);
  batch.weight.assign(count, 1.0 / static_cast<double>(count));
  batch.is_example.assign(count, 1);
  for (std::size_t i = 0; i < count; i += 3) batch.target[i] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(training::backward(model, batch).loss);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}
BENCHMARK(BM_Backward)->Arg(1000)->Arg(20000);

void BM_Saturate(benchmark::State& state) {
  harness::CorpusSpec spec;
  spec.problems = 8;
  spec.decoy_fraction = 0.0;
  auto problems = harness::parse_corpus(harness::gen_corpus(spec, 11));
  saturation::ProverOptions options;
  options.limits.max_selections = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    for (const auto& p : problems) benchmark::DoNotOptimize(saturation::saturate(p, options).stats.selections);
  }
}
BENCHMARK(BM_Saturate)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
