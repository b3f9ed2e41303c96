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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "derivguide/fol/problem.hpp"
#include "derivguide/harness/ground_oracle.hpp"
#include "derivguide/saturation/inference.hpp"
#include "derivguide/saturation/prover.hpp"

namespace derivguide::saturation {
namespace {

using fol::Clause;
using fol::Literal;
using fol::Problem;
using fol::Term;

// Clauses of a small problem, with ids equal to their position.
struct Clauses {
  Problem problem;
  const Clause& operator[](std::size_t k) const { return problem.clauses.at(k).clause; }
};

Clauses clauses(const std::string& text) { return {fol::parse_problem(text)}; }

// Parses `expected` against the same signature by appending it to `text`.
Clause expected_clause(const std::string& text, const std::string& expected) {
  Problem p = fol::parse_problem(text + "cnf(expected, axiom, " + expected + ").");
  return p.clauses.back().clause;
}

TEST(Resolve, UnitToEmpty) {
  auto c = clauses("cnf(a, axiom, p(X)). cnf(b, axiom, ~p(a)).");
  auto inf = resolve(c[0], 0, c[1], 0);
  ASSERT_TRUE(inf);
  EXPECT_TRUE(inf->conclusion.empty());
  EXPECT_EQ(inf->rule, Rule::resolution);
  EXPECT_EQ(inf->premises, (std::vector<fol::ClauseId>{0, 1}));
}

TEST(Resolve, KeepsRemainingLiterals) {
  const std::string text = "cnf(a, axiom, p(X) | q(X)). cnf(b, axiom, ~p(a)).";
  auto c = clauses(text);
  auto inf = resolve(c[0], 0, c[1], 0);
  ASSERT_TRUE(inf);
  EXPECT_TRUE(fol::is_variant(inf->conclusion, expected_clause(text, "q(a)")));
}

TEST(Resolve, ClashIsNone) {
  auto c = clauses("cnf(a, axiom, p(f(X))). cnf(b, axiom, ~p(g(Y))).");
  EXPECT_FALSE(resolve(c[0], 0, c[1], 0));
}

TEST(Resolve, RenamesApart) {
  const std::string text = "cnf(a, axiom, p(X) | q(X)). cnf(b, axiom, ~p(f(X)) | r(X)).";
  auto c = clauses(text);
  auto inf = resolve(c[0], 0, c[1], 0);
  ASSERT_TRUE(inf);
  EXPECT_TRUE(fol::is_variant(inf->conclusion, expected_clause(text, "q(f(Y)) | r(Y)")));
}

TEST(Factor, MergesUnifiableLiterals) {
  const std::string text = "cnf(a, axiom, p(X) | p(a)).";
  auto c = clauses(text);
  auto inf = factor(c[0], 0, 1);
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->rule, Rule::factoring);
  EXPECT_EQ(inf->premises.size(), 1u);
  EXPECT_TRUE(fol::is_variant(inf->conclusion, expected_clause(text, "p(a)")));
}

TEST(Factor, PolarityMismatchIsNone) {
  auto c = clauses("cnf(a, axiom, p(X) | ~p(a)).");
  EXPECT_FALSE(factor(c[0], 0, 1));
}

TEST(Factor, NestedTerms) {
  const std::string text = "cnf(a, axiom, p(f(X)) | p(f(a))).";
  auto c = clauses(text);
  auto inf = factor(c[0], 0, 1);
  ASSERT_TRUE(inf);
  EXPECT_TRUE(fol::is_variant(inf->conclusion, expected_clause(text, "p(f(a))")));
}

TEST(Subsumes, Examples) {
  auto c = clauses(
      "cnf(g1, axiom, p(X)). cnf(s1, axiom, p(a) | q(b)). cnf(g2, axiom, p(a)). cnf(s2, axiom, p(X))."
      "cnf(g3, axiom, p(X) | p(Y)). cnf(s3, axiom, p(a)).");
  EXPECT_TRUE(subsumes(c[0], c[1]));
  EXPECT_FALSE(subsumes(c[2], c[3]));
  EXPECT_TRUE(subsumes(c[4], c[5]));
  // Deletion never lets a longer clause remove a shorter one.
  EXPECT_FALSE(subsumes_for_deletion(c[4], c[5]));
  EXPECT_TRUE(subsumes_for_deletion(c[0], c[1]));
}

TEST(SubsumptionResolution, RemovesMatchedLiteral) {
  const std::string text = "cnf(g, axiom, p(X)). cnf(s, axiom, ~p(a) | q(b)).";
  auto c = clauses(text);
  auto inf = subsumption_resolve(c[0], c[1]);
  ASSERT_TRUE(inf);
  EXPECT_EQ(inf->rule, Rule::subsumption_resolution);
  EXPECT_EQ(inf->premises, (std::vector<fol::ClauseId>{1, 0}));
  EXPECT_TRUE(fol::is_variant(inf->conclusion, expected_clause(text, "q(b)")));
}

// Function-free clauses over p/1, q/2 and constants 0..2; variables of the
// specific clause start at 10 so they stay rigid under the brute force.
constexpr fol::SymbolId kP = 100;
constexpr fol::SymbolId kQ = 101;

Term random_arg(std::mt19937_64& rng, fol::VarId var_base) {
  if (rng() % 2) return Term::apply(static_cast<fol::SymbolId>(rng() % 3));
  return Term::variable(var_base + static_cast<fol::VarId>(rng() % 3));
}

Clause random_clause(std::mt19937_64& rng, fol::VarId var_base, std::size_t max_size) {
  std::vector<Literal> lits;
  const std::size_t size = 1 + rng() % max_size;
  for (std::size_t k = 0; k < size; ++k) {
    Literal l;
    l.positive = rng() % 4 != 0;
    l.predicate = rng() % 2 ? kP : kQ;
    l.args.push_back(random_arg(rng, var_base));
    if (l.predicate == kQ) l.args.push_back(random_arg(rng, var_base));
    lits.push_back(std::move(l));
  }
  return Clause(std::move(lits));
}

bool brute_subsumes(const Clause& general, const Clause& specific) {
  std::vector<Term> images;
  for (fol::SymbolId k = 0; k < 3; ++k) images.push_back(Term::apply(k));
  for (fol::VarId v = 10; v < 13; ++v) images.push_back(Term::variable(v));
  const std::size_t k = images.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        fol::Substitution s;
        s.bind(0, images[i]);
        s.bind(1, images[j]);
        s.bind(2, images[l]);
        bool all = true;
        for (const auto& lit : general.literals()) {
          const Literal mapped = s.apply(lit);
          bool found = false;
          for (const auto& t : specific.literals()) found = found || t == mapped;
          all = all && found;
        }
        if (all) return true;
      }
    }
  }
  return false;
}

TEST(SubsumesProperty, MatchesBruteForce) {
  std::mt19937_64 rng(7);
  std::size_t positives = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    Clause general = random_clause(rng, 0, 3);
    Clause specific = random_clause(rng, 10, 4);
    const bool expected = brute_subsumes(general, specific);
    positives += expected ? 1 : 0;
    ASSERT_EQ(subsumes(general, specific), expected) << "trial " << trial;
  }
  EXPECT_GT(positives, 20u);
}

TEST(ClauseQueue, AlternatesAgeAndWeight) {
  ClauseQueue q(Ratio{1, 1});
  q.add(0, 9);
  q.add(1, 3);
  q.add(2, 1);
  q.add(3, 1);
  EXPECT_EQ(q.pop(), 0u);  // oldest
  EXPECT_EQ(q.pop(), 2u);  // lightest, lowest id on ties
  EXPECT_EQ(q.pop(), 1u);
  EXPECT_EQ(q.pop(), 3u);
  EXPECT_TRUE(q.empty());
}

TEST(Ratio, Parse) {
  EXPECT_EQ(parse_ratio("2:1"), (Ratio{2, 1}));
  EXPECT_THROW(parse_ratio("0:0"), std::invalid_argument);
  EXPECT_THROW(parse_ratio("2"), std::invalid_argument);
  EXPECT_THROW(parse_ratio("a:b"), std::invalid_argument);
}

std::string sources(LayeredSelector& s, std::size_t picks) {
  std::string out;
  for (std::size_t k = 0; k < picks; ++k) {
    switch (s.select().source) {
      case PickSource::a: out += 'A'; break;
      case PickSource::b: out += 'B'; break;
      case PickSource::fallback: out += 'F'; break;
    }
  }
  return out;
}

TEST(LayeredSelector, TwoToOne) {
  LayeredSelector s(Ratio{1, 1}, Ratio{2, 1}, true);
  for (fol::ClauseId id = 0; id < 40; ++id) s.add(id, 1 + id % 5, id % 2 == 0);
  EXPECT_EQ(sources(s, 9), "AABAABAAB");
}

TEST(LayeredSelector, EmptyAFallsBack) {
  LayeredSelector s(Ratio{1, 1}, Ratio{2, 1}, true);
  for (fol::ClauseId id = 0; id < 9; ++id) s.add(id, 1, false);
  EXPECT_EQ(sources(s, 9), "FFBFFBFFB");
}

TEST(LayeredSelector, DegenerateRatio) {
  LayeredSelector s(Ratio{1, 1}, Ratio{1, 0}, true);
  for (fol::ClauseId id = 0; id < 6; ++id) s.add(id, 1, true);
  EXPECT_EQ(sources(s, 6), "AAAAAA");
}

TEST(LayeredSelector, UnlayeredUsesB) {
  LayeredSelector s(Ratio{1, 1}, Ratio{2, 1}, false);
  for (fol::ClauseId id = 0; id < 5; ++id) s.add(id, 1, true);
  EXPECT_EQ(sources(s, 5), "BBBBB");
}

TEST(LayeredSelector, PickedClauseLeavesBothViews) {
  LayeredSelector s(Ratio{1, 1}, Ratio{2, 1}, true);
  for (fol::ClauseId id = 0; id < 30; ++id) s.add(id, 1 + (id * 7) % 4, id % 3 != 0);
  std::set<fol::ClauseId> seen;
  while (!s.empty()) ASSERT_TRUE(seen.insert(s.select().id).second);
  EXPECT_EQ(seen.size(), 30u);
}

// Classifies clauses by whether they contain a given predicate.
class PredicateAdvisor : public ClauseAdvisor {
 public:
  explicit PredicateAdvisor(fol::SymbolId pred) : pred_(pred) {}
  bool is_positive(const derivation::DerivationDag&, derivation::NodeId, const Clause& c) override {
    for (const auto& l : c.literals()) {
      if (l.predicate == pred_) return true;
    }
    return false;
  }

 private:
  fol::SymbolId pred_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> crafted_files() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(DERIVGUIDE_CRAFTED_DIR)) {
    if (e.path().extension() == ".p") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

TEST(Saturate, UnitConflict) {
  auto p = fol::parse_problem("cnf(a, axiom, p(a)). cnf(g, negated_conjecture, ~p(a)).");
  auto r = saturate(p, ProverOptions{});
  EXPECT_EQ(r.outcome, Outcome::proof);
  EXPECT_LE(r.stats.selections, 2u);
  EXPECT_TRUE(replay_proof(p, r));
}

TEST(Saturate, DisjointUnitsSaturate) {
  auto p = fol::parse_problem("cnf(a, axiom, p(a)). cnf(b, axiom, q(b)).");
  auto r = saturate(p, ProverOptions{});
  EXPECT_EQ(r.outcome, Outcome::saturated);
  EXPECT_EQ(r.dag.selected().size(), 2u);
}

TEST(Saturate, SelectionLimit) {
  auto p = fol::load_problem(std::filesystem::path(DERIVGUIDE_CRAFTED_DIR) / "s03_broken_transitivity.p");
  ProverOptions options;
  options.limits.max_selections = 25;
  auto r = saturate(p, options);
  EXPECT_EQ(r.outcome, Outcome::limit_reached);
  EXPECT_EQ(r.stats.selections, 25u);
  EXPECT_EQ(r.dag.selected().size(), 25u);
}

TEST(Saturate, TransitivityDepthSixAgainstOracle) {
  auto p = fol::load_problem(std::filesystem::path(DERIVGUIDE_CRAFTED_DIR) / "u03_transitivity_depth6.p");
  ASSERT_TRUE(harness::ground_oracle(p).unsatisfiable);
  auto r = saturate(p, ProverOptions{});
  ASSERT_EQ(r.outcome, Outcome::proof);
  std::string why;
  ASSERT_TRUE(replay_proof(p, r, &why)) << why;
  const auto& proof = *r.dag.proof();
  // Every input the oracle finds indispensable occurs in the proof, and the
  // proof needs at least one binary step per additional input clause.
  const auto necessary = harness::necessary_clauses(p);
  EXPECT_EQ(necessary.size(), 9u);
  std::size_t initial = 0;
  for (auto id : proof) initial += r.dag.is_initial(id) ? 1 : 0;
  for (auto k : necessary) EXPECT_TRUE(proof.contains(static_cast<derivation::NodeId>(k))) << k;
  EXPECT_GE(proof.size() - initial, initial - 1);
  EXPECT_TRUE(r.clauses[*r.refutation].empty());
}

TEST(Saturate, CraftedCorpusMatchesOracle) {
  auto files = crafted_files();
  ASSERT_EQ(files.size(), 30u);
  std::size_t unsat = 0;
  for (const auto& file : files) {
    const std::string text = read_file(file);
    auto p = fol::parse_problem(text, file.stem().string());
    const bool declared_unsat = text.find("% status: unsat") != std::string::npos;
    const bool oracle_unsat = harness::ground_oracle(p).unsatisfiable;
    ASSERT_EQ(declared_unsat, oracle_unsat) << p.name;
    unsat += oracle_unsat ? 1 : 0;
    ProverOptions options;
    options.limits.wall_time_seconds = 2.0;
    auto r = saturate(p, options);
    EXPECT_EQ(r.outcome == Outcome::proof, oracle_unsat) << p.name << " " << to_string(r.outcome);
    if (r.outcome == Outcome::proof) {
      std::string why;
      EXPECT_TRUE(replay_proof(p, r, &why)) << p.name << ": " << why;
    }
  }
  EXPECT_EQ(unsat, 20u);
}

TEST(Saturate, LayeredTraceWithStubModel) {
  auto p = fol::load_problem(std::filesystem::path(DERIVGUIDE_CRAFTED_DIR) / "u10_ancestor.p");
  const auto pred = p.signature.find("anc", fol::SymbolKind::predicate);
  ASSERT_TRUE(pred);
  ProverOptions options;
  options.selector.guidance = [&] { return std::make_unique<PredicateAdvisor>(*pred); };
  auto r = saturate(p, options);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_GT(r.stats.model_evaluations, 0u);
  long a_slots = 0;
  long b_slots = 0;
  for (const auto& e : r.trace) {
    const bool b_slot = e.tick % 3 == 2;
    if (b_slot) {
      EXPECT_EQ(e.source, PickSource::b) << e.tick;
      ++b_slots;
    } else {
      EXPECT_NE(e.source, PickSource::b) << e.tick;
      ++a_slots;
    }
    EXPECT_LE(std::abs(a_slots - 2 * b_slots), 2) << e.tick;
  }
}

TEST(Saturate, EvalTimeWithinWallTime) {
  auto p = fol::load_problem(std::filesystem::path(DERIVGUIDE_CRAFTED_DIR) / "u05_pigeonhole_3_2.p");
  ProverOptions options;
  options.selector.guidance = [] { return std::make_unique<PredicateAdvisor>(0); };
  auto r = saturate(p, options);
  EXPECT_GE(r.stats.model_eval_seconds, 0.0);
  EXPECT_LE(r.stats.model_eval_seconds, r.stats.wall_seconds);
}

TEST(Saturate, ActiveRules) {
  ProverOptions options;
  EXPECT_EQ(active_rules(options).size(), 3u);
  options.factoring = false;
  options.subsumption_resolution = false;
  EXPECT_EQ(active_rules(options), std::vector<Rule>{Rule::resolution});
}

}  // namespace
}  // namespace derivguide::saturation
