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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "derivguide/derivation/dag.hpp"

namespace derivguide::derivation {

// ---------------------------------------------------------------------------
// Training labels.

struct TrainExample {
  NodeId node = 0;
  double target = 0.0;
  double weight = 0.0;
};

class LabelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Selected clauses in the proof become positives (target 1), the remaining
/// selected clauses negatives (target 0). With P positives and N negatives a
/// positive weighs 1/(2P) and a negative 1/(2N), so the derivation totals 1
/// and both classes weigh the same; a missing class leaves the other at 1/P
/// (resp. 1/N). Throws LabelError without a proof or without positives.
std::vector<TrainExample> label_dag(const DerivationDag& dag);

/// A derivation together with its weighted examples.
struct LabeledDerivation {
  DerivationDag dag;
  std::vector<TrainExample> examples;
};

LabeledDerivation make_labeled(DerivationDag dag);

/// Appends the failed run's nodes to the successful run's derivation; the
/// proof stays the successful one, so every clause the failed run selected
/// becomes an additional negative.
LabeledDerivation augment_with_failed_run(const DerivationDag& solved, const DerivationDag& failed);

/// Drops the nodes that are not ancestors of an example; they never reach
/// the loss. Node ids are renumbered densely, order preserved.
LabeledDerivation prune_to_examples(const LabeledDerivation& labeled);

// ---------------------------------------------------------------------------
// Network-level view of derivation nodes.

struct AxiomTag {
  AxiomKind kind = AxiomKind::unknown;
  std::uint32_t index = 0;  // revealed-axiom index, AxiomKind::named only

  friend bool operator==(const AxiomTag&, const AxiomTag&) = default;
};

struct NetInitial {
  AxiomTag tag;
  int level = 0;  // already clamped into [0, sine_cap]

  friend bool operator==(const NetInitial&, const NetInitial&) = default;
};

struct NetDerived {
  Rule rule = Rule::resolution;
  std::vector<std::uint32_t> premises;

  friend bool operator==(const NetDerived&, const NetDerived&) = default;
};

using NetNode = std::variant<NetInitial, NetDerived>;

/// Evaluation-time overrides of the information presented for initial nodes.
struct InitialOverrides {
  bool mask_axioms = false;            // every non-goal axiom becomes unknown
  std::optional<int> fixed_level;      // every initial node gets this level
};

/// Maps axiom names to revealed-axiom indices and clamps SInE levels;
/// unrevealed names map to the unknown tag.
class AxiomResolver {
 public:
  AxiomResolver(std::span<const std::string> revealed, int sine_cap, InitialOverrides overrides = {});

  NetInitial resolve(const InitialNode& node) const;
  int sine_cap() const { return sine_cap_; }
  std::size_t revealed_count() const { return index_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> index_;
  int sine_cap_;
  InitialOverrides overrides_;
};

/// Network nodes of a derivation, one per DAG node, without collapsing.
std::vector<NetNode> resolve_dag(const DerivationDag& dag, const AxiomResolver& resolver);

/// Structural key of a node whose premises are given by collapsed ids:
/// initial nodes by (tag, level), derived nodes by (rule, premise ids).
/// Equal keys mean equal network values.
using CollapseKey = std::vector<std::int64_t>;
CollapseKey collapse_key(const NetNode& node);

/// Hash-consing table of network nodes.
class Collapser {
 public:
  /// Returns the collapsed id of `node`; premises must already be collapsed ids.
  std::uint32_t add(NetNode node);
  std::optional<std::uint32_t> find(const NetNode& node) const;
  const std::vector<NetNode>& nodes() const { return nodes_; }
  std::vector<NetNode> release() { return std::move(nodes_); }

 private:
  struct KeyHash {
    std::size_t operator()(const CollapseKey& k) const noexcept;
  };
  std::unordered_map<CollapseKey, std::uint32_t, KeyHash> ids_;
  std::vector<NetNode> nodes_;
};

// ---------------------------------------------------------------------------
// Batches.

/// Several derivations merged into one collapsed DAG with per-node targets
/// and weights. Nodes are in topological order.
struct Batch {
  std::vector<NetNode> nodes;
  std::vector<double> target;
  std::vector<double> weight;
  std::vector<std::uint8_t> is_example;
  std::vector<std::string> members;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
};

/// Collapses the union of `derivations`. Examples meeting in one node merge
/// pairwise as label (l1*w1 + l2*w2)/(w1 + w2) with weight w1 + w2.
Batch merge_batch(std::span<const LabeledDerivation> derivations, const AxiomResolver& resolver);

/// Greedy packing of item sizes, largest first: each item goes to the first
/// open group whose total stays strictly below `target`, else opens a group.
std::vector<std::vector<std::size_t>> pack_batches(std::span<const std::size_t> sizes,
                                                   std::size_t target);

std::vector<Batch> build_batches(std::span<const LabeledDerivation> derivations,
                                 const AxiomResolver& resolver, std::size_t target_nodes = 20000);

}  // namespace derivguide::derivation
