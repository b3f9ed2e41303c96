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
#include "derivguide/harness/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "derivguide/harness/ground_oracle.hpp"

namespace derivguide::harness {

namespace {

std::string padded(std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, value);
  return buf;
}

struct PoolAxiom {
  std::string name;
  std::string clause;
  bool useful = false;
};

// Uniform draw in [lo, hi] that depends only on the generator's output, not
// on the standard library's distribution implementation.
std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

}  // namespace

Corpus gen_corpus(const CorpusSpec& spec, std::uint64_t seed) {
  if (spec.pool < 4) throw std::invalid_argument("pool needs at least 4 axioms");
  std::mt19937_64 rng(seed);
  const std::size_t chain = std::clamp<std::size_t>(
      static_cast<std::size_t>(static_cast<double>(spec.pool) * spec.useful_fraction + 0.5), 2,
      spec.pool - 2);
  const std::size_t junk = spec.pool - chain;
  const std::size_t junk_preds = std::max<std::size_t>(3, junk / 2);
  const std::size_t max_depth = std::clamp<std::size_t>(spec.max_depth, 1, chain);
  const std::size_t min_depth = std::clamp<std::size_t>(spec.min_depth, 1, max_depth);

  Corpus corpus;
  std::vector<PoolAxiom> pool;
  for (std::size_t k = 0; k < chain; ++k) {
    PoolAxiom a{"chain_" + padded(k, 2),
                "~p" + std::to_string(k) + "(X) | p" + std::to_string(k + 1) + "(X)", true};
    corpus.useful_axioms.push_back(a.name);
    pool.push_back(std::move(a));
  }
  for (std::size_t j = 0; j < junk; ++j) {
    PoolAxiom a;
    a.name = "junk_" + padded(j, 2);
    if (j % 2 == 0) {
      a.clause = "~p" + std::to_string(draw(rng, 0, chain)) + "(X) | q" +
                 std::to_string(draw(rng, 0, junk_preds - 1)) + "(X)";
    } else {
      const std::size_t from = draw(rng, 0, junk_preds - 1);
      std::size_t to = draw(rng, 0, junk_preds - 2);
      if (to >= from) ++to;
      a.clause = "~q" + std::to_string(from) + "(X) | q" + std::to_string(to) + "(X)";
    }
    corpus.junk_axioms.push_back(a.name);
    pool.push_back(std::move(a));
  }

  const int width = spec.problems >= 1000 ? 4 : 3;
  for (std::size_t i = 0; i < spec.problems; ++i) {
    GeneratedProblem gp;
    gp.name = "prob_" + padded(i, width);
    const bool decoy = coin(rng, spec.decoy_fraction);
    const std::size_t span = draw(rng, std::max<std::size_t>(min_depth, decoy ? 2 : 1), max_depth);
    const std::size_t start = draw(rng, 0, chain - span);
    const std::size_t goal = start + span;
    // A decoy drops one link, which leaves the goal unreachable.
    const std::size_t missing = decoy ? draw(rng, start, goal - 1) : chain;
    gp.unsatisfiable = !decoy;
    gp.depth = decoy ? 0 : span;

    std::ostringstream out;
    out << "% synthetic problem " << gp.name << (decoy ? " (satisfiable)" : "")
        << ", depth " << gp.depth << "\n";
    for (std::size_t k = start; k < goal; ++k) {
      if (k == missing) continue;
      out << "cnf(" << pool[k].name << ", axiom, " << pool[k].clause << ").\n";
    }
    for (std::size_t j = chain; j < pool.size(); ++j) {
      if (!coin(rng, spec.junk_keep)) continue;
      out << "cnf(" << pool[j].name << ", axiom, " << pool[j].clause << ").\n";
    }
    for (std::size_t k = 0; k < spec.noise_facts; ++k) {
      out << "cnf(" << gp.name << "_noise_" << k << ", axiom, q" << draw(rng, 0, junk_preds - 1)
          << "(d" << draw(rng, 0, std::max<std::size_t>(spec.noise_constants, 1) - 1) << ")).\n";
    }
    out << "cnf(" << gp.name << "_fact, axiom, p" << start << "(c)).\n";
    out << "cnf(" << gp.name << "_goal, negated_conjecture, ~p" << goal << "(c)).\n";
    gp.text = out.str();

    const auto verdict = ground_oracle(fol::parse_problem(gp.text, gp.name));
    if (verdict.unsatisfiable != gp.unsatisfiable) {
      throw OracleError("generated problem " + gp.name + " is " +
                        (verdict.unsatisfiable ? "unsatisfiable" : "satisfiable") +
                        " against its design");
    }
    corpus.problems.push_back(std::move(gp));
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream index(dir / "index.csv");
  index << "name,status,depth\n";
  for (const auto& p : corpus.problems) {
    std::ofstream(dir / (p.name + ".p")) << p.text;
    index << p.name << ',' << (p.unsatisfiable ? "unsat" : "sat") << ',' << p.depth << '\n';
  }
  if (!index) throw std::runtime_error("failed writing corpus index in " + dir.string());
}

std::vector<fol::Problem> parse_corpus(const Corpus& corpus) {
  std::vector<fol::Problem> out;
  out.reserve(corpus.problems.size());
  for (const auto& p : corpus.problems) out.push_back(fol::parse_problem(p.text, p.name));
  return out;
}

std::vector<fol::Problem> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".p") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<fol::Problem> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(fol::load_problem(f));
  return out;
}

}  // namespace derivguide::harness
