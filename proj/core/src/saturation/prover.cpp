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

#include "derivguide/saturation/prover.hpp"

#include <chrono>
#include <unordered_map>

#include "derivguide/saturation/inference.hpp"

namespace derivguide::saturation {

using derivation::DerivationDag;
using derivation::NodeId;
using fol::Clause;
using fol::ClauseId;

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::proof: return "proof";
    case Outcome::saturated: return "saturated";
    case Outcome::limit_reached: return "limit_reached";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t literal_bit(const fol::Literal& l) {
  return std::uint64_t{1} << ((l.predicate * 2 + (l.positive ? 1 : 0)) % 64);
}

std::uint64_t predicate_bit(const fol::Literal& l) {
  return std::uint64_t{1} << (l.predicate % 64);
}

struct Masks {
  std::uint64_t literals = 0;
  std::uint64_t predicates = 0;
};

Masks masks_of(const Clause& c) {
  Masks m;
  for (const auto& l : c.literals()) {
    m.literals |= literal_bit(l);
    m.predicates |= predicate_bit(l);
  }
  return m;
}

class Saturator {
 public:
  Saturator(const fol::Problem& problem, const ProverOptions& options)
      : problem_(problem),
        options_(options),
        selector_(options.selector.age_weight, options.selector.second_level,
                  static_cast<bool>(options.selector.guidance)) {
    result_.dag.set_problem_name(problem.name);
    if (options.selector.guidance) advisor_ = options.selector.guidance();
  }

  ProverResult run() {
    start_ = Clock::now();
    if (!add_inputs()) {
      while (true) {
        if (auto stop = limit_hit()) {
          result_.outcome = *stop;
          break;
        }
        if (selector_.empty()) {
          result_.outcome = Outcome::saturated;
          break;
        }
        if (activate_next()) break;
      }
    }
    result_.stats.wall_seconds = seconds_since(start_);
    return std::move(result_);
  }

 private:
  // Returns true when the empty clause was found.
  bool add_inputs() {
    const auto levels = sine::sine_levels(problem_, options_.sine_tolerance);
    for (std::size_t k = 0; k < problem_.clauses.size(); ++k) {
      const auto& ic = problem_.clauses[k];
      derivation::InitialNode node;
      if (ic.role == fol::Role::negated_conjecture) {
        node.kind = derivation::AxiomKind::goal;
        node.sine_level = 0;
      } else {
        node.kind = derivation::AxiomKind::named;
        node.name = ic.name;
        node.sine_level = levels.level[k];
      }
      NodeId id = result_.dag.add_initial(std::move(node));
      Clause c = ic.clause;
      c.set_id(id);
      result_.clauses.push_back(c);
    }
    for (NodeId id = 0; id < result_.clauses.size(); ++id) {
      const Clause& c = result_.clauses[id];
      if (c.empty()) return found_refutation(id);
      if (c.is_tautology()) continue;
      retain(id);
    }
    return false;
  }

  std::optional<Outcome> limit_hit() const {
    const auto& limits = options_.limits;
    if (result_.stats.selections >= limits.max_selections) return Outcome::limit_reached;
    if (limits.max_clauses > 0 && result_.clauses.size() >= limits.max_clauses) {
      return Outcome::limit_reached;
    }
    if (limits.wall_time_seconds > 0 && seconds_since(start_) >= limits.wall_time_seconds) {
      return Outcome::limit_reached;
    }
    return std::nullopt;
  }

  void retain(NodeId id) {
    const Clause& c = result_.clauses[id];
    bool positive = false;
    if (advisor_) {
      auto t0 = Clock::now();
      positive = advisor_->is_positive(result_.dag, id, c);
      result_.stats.model_eval_seconds += seconds_since(t0);
      ++result_.stats.model_evaluations;
    }
    selector_.add(id, c.weight(), positive);
    retained_.push_back(id);
    masks_.emplace(id, masks_of(c));
    ++result_.stats.retained;
  }

  // Returns true when the empty clause was found.
  bool activate_next() {
    auto pick = selector_.select();
    result_.trace.push_back(SelectionEvent{result_.stats.selections, pick.source, pick.id});
    ++result_.stats.selections;
    result_.dag.mark_selected(pick.id);

    const ClauseId given_id = pick.id;
    processed_.push_back(given_id);
    {
      const Clause& given = result_.clauses[given_id];
      for (std::size_t i = 0; i < given.size(); ++i) {
        partners_[key(given[i].predicate, given[i].positive)].emplace_back(given_id, i);
      }
    }

    std::vector<Inference> fresh;
    const Clause given = result_.clauses[given_id];
    for (std::size_t j = 0; j < given.size(); ++j) {
      auto it = partners_.find(key(given[j].predicate, !given[j].positive));
      if (it == partners_.end()) continue;
      for (const auto& [partner, i] : it->second) {
        if (auto inf = resolve(result_.clauses[partner], i, given, j)) {
          fresh.push_back(std::move(*inf));
        }
      }
    }
    if (options_.factoring) {
      for (std::size_t i = 0; i < given.size(); ++i) {
        for (std::size_t j = i + 1; j < given.size(); ++j) {
          if (given[i].predicate != given[j].predicate || given[i].positive != given[j].positive) {
            continue;
          }
          if (auto inf = factor(given, i, j)) fresh.push_back(std::move(*inf));
        }
      }
    }
    for (auto& inf : fresh) {
      ++result_.stats.generated;
      if (process_new(std::move(inf))) return true;
    }
    return false;
  }

  // Returns true when the empty clause was found.
  bool process_new(Inference inf) {
    if (inf.conclusion.is_tautology()) return false;
    if (forward_subsumed(inf.conclusion)) return false;
    NodeId id = record(std::move(inf));
    if (result_.clauses[id].empty()) return found_refutation(id);
    if (options_.subsumption_resolution) {
      while (auto simplified = simplify(id)) {
        id = record(std::move(*simplified));
        if (result_.clauses[id].empty()) return found_refutation(id);
        if (forward_subsumed(result_.clauses[id])) return false;
      }
    }
    retain(id);
    return false;
  }

  NodeId record(Inference inf) {
    std::vector<NodeId> premises(inf.premises.begin(), inf.premises.end());
    NodeId id = result_.dag.add_derived(inf.rule, std::move(premises));
    inf.conclusion.set_id(id);
    inf.conclusion.set_origin(fol::Origin::derived);
    result_.clauses.push_back(std::move(inf.conclusion));
    return id;
  }

  bool forward_subsumed(const Clause& c) const {
    const Masks m = masks_of(c);
    for (ClauseId other : retained_) {
      const Masks& om = masks_.at(other);
      if ((om.literals & ~m.literals) != 0) continue;
      if (subsumes_for_deletion(result_.clauses[other], c)) return true;
    }
    return false;
  }

  std::optional<Inference> simplify(NodeId id) const {
    const Clause& c = result_.clauses[id];
    const Masks m = masks_of(c);
    for (ClauseId other : retained_) {
      const Masks& om = masks_.at(other);
      if ((om.predicates & ~m.predicates) != 0) continue;
      if (auto inf = subsumption_resolve(result_.clauses[other], c)) return inf;
    }
    return std::nullopt;
  }

  bool found_refutation(NodeId id) {
    result_.outcome = Outcome::proof;
    result_.refutation = id;
    result_.dag.set_proof(derivation::extract_proof(result_.dag, id));
    return true;
  }

  static std::uint64_t key(fol::SymbolId pred, bool positive) {
    return (static_cast<std::uint64_t>(pred) << 1) | (positive ? 1u : 0u);
  }

  const fol::Problem& problem_;
  const ProverOptions& options_;
  LayeredSelector selector_;
  std::unique_ptr<ClauseAdvisor> advisor_;
  ProverResult result_;
  Clock::time_point start_;
  std::vector<ClauseId> processed_;
  std::vector<ClauseId> retained_;
  std::unordered_map<ClauseId, Masks> masks_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<ClauseId, std::size_t>>> partners_;
};

}  // namespace

std::vector<Rule> active_rules(const ProverOptions& options) {
  std::vector<Rule> rules{Rule::resolution};
  if (options.factoring) rules.push_back(Rule::factoring);
  if (options.subsumption_resolution) rules.push_back(Rule::subsumption_resolution);
  return rules;
}

ProverResult saturate(const fol::Problem& problem, const ProverOptions& options) {
  return Saturator(problem, options).run();
}

namespace {

bool reproduces(const derivation::DerivedNode& node, const std::vector<Clause>& clauses,
                const Clause& recorded) {
  auto matches = [&](const std::optional<Inference>& inf) {
    return inf && fol::is_variant(inf->conclusion, recorded);
  };
  switch (node.rule) {
    case Rule::resolution: {
      const Clause& left = clauses[node.premises[0]];
      const Clause& right = clauses[node.premises[1]];
      for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
          if (matches(resolve(left, i, right, j))) return true;
        }
      }
      return false;
    }
    case Rule::factoring: {
      const Clause& c = clauses[node.premises[0]];
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          if (matches(factor(c, i, j))) return true;
        }
      }
      return false;
    }
    case Rule::subsumption_resolution:
      return matches(subsumption_resolve(clauses[node.premises[1]], clauses[node.premises[0]]));
  }
  return false;
}

}  // namespace

bool replay_proof(const fol::Problem& problem, const ProverResult& result, std::string* why) {
  auto fail = [why](std::string message) {
    if (why) *why = std::move(message);
    return false;
  };
  if (result.outcome != Outcome::proof || !result.refutation || !result.dag.proof()) {
    return fail("result carries no proof");
  }
  if (result.clauses.size() != result.dag.size()) return fail("clause table and DAG disagree");
  if (!result.clauses[*result.refutation].empty()) return fail("refutation node is not empty");
  for (NodeId id : *result.dag.proof()) {
    const Clause& recorded = result.clauses[id];
    if (const auto* d = std::get_if<derivation::DerivedNode>(&result.dag[id])) {
      if (!reproduces(*d, result.clauses, recorded)) {
        return fail("node " + std::to_string(id) + " (" + std::string(rule_name(d->rule)) +
                    ") does not replay");
      }
    } else {
      if (id >= problem.clauses.size()) return fail("initial node " + std::to_string(id) + " is not an input");
      if (!(problem.clauses[id].clause.literals() == recorded.literals())) {
        return fail("initial node " + std::to_string(id) + " differs from its input clause");
      }
    }
  }
  return true;
}

}  // namespace derivguide::saturation
