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

#include "derivguide/derivation/batch.hpp"

#include <algorithm>
#include <numeric>

namespace derivguide::derivation {

std::vector<TrainExample> label_dag(const DerivationDag& dag) {
  if (!dag.proof()) throw LabelError("derivation of '" + dag.problem_name() + "' has no proof");
  const auto& proof = *dag.proof();
  std::size_t positives = 0;
  std::size_t negatives = 0;
  for (NodeId id : dag.selected()) {
    if (proof.contains(id)) {
      ++positives;
    } else {
      ++negatives;
    }
  }
  if (positives == 0) {
    throw LabelError("derivation of '" + dag.problem_name() + "' has no selected proof clause");
  }
  const double pos_weight = negatives == 0 ? 1.0 / positives : 0.5 / positives;
  const double neg_weight = negatives == 0 ? 0.0 : 0.5 / negatives;
  std::vector<TrainExample> examples;
  examples.reserve(dag.selected().size());
  for (NodeId id : dag.selected()) {
    bool positive = proof.contains(id);
    examples.push_back(TrainExample{id, positive ? 1.0 : 0.0, positive ? pos_weight : neg_weight});
  }
  return examples;
}

LabeledDerivation make_labeled(DerivationDag dag) {
  auto examples = label_dag(dag);
  return LabeledDerivation{std::move(dag), std::move(examples)};
}

LabeledDerivation augment_with_failed_run(const DerivationDag& solved,
                                          const DerivationDag& failed) {
  DerivationDag combined = solved;
  const auto offset = static_cast<NodeId>(solved.size());
  for (const auto& label : failed.nodes()) {
    if (const auto* i = std::get_if<InitialNode>(&label)) {
      combined.add_initial(*i);
    } else {
      auto d = std::get<DerivedNode>(label);
      for (auto& p : d.premises) p += offset;
      combined.add_derived(d.rule, std::move(d.premises));
    }
  }
  for (NodeId id : failed.selected()) combined.mark_selected(id + offset);
  return make_labeled(std::move(combined));
}

LabeledDerivation prune_to_examples(const LabeledDerivation& labeled) {
  const auto& dag = labeled.dag;
  std::vector<bool> keep(dag.size(), false);
  for (const auto& e : labeled.examples) keep.at(e.node) = true;
  for (NodeId id = static_cast<NodeId>(dag.size()); id-- > 0;) {
    if (!keep[id]) continue;
    if (const auto* d = std::get_if<DerivedNode>(&dag[id])) {
      for (NodeId p : d->premises) keep[p] = true;
    }
  }
  if (dag.proof()) {
    for (NodeId id : *dag.proof()) keep[id] = true;
  }
  constexpr NodeId kDropped = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(dag.size(), kDropped);
  DerivationDag out(dag.problem_name());
  for (NodeId id = 0; id < dag.size(); ++id) {
    if (!keep[id]) continue;
    if (const auto* i = std::get_if<InitialNode>(&dag[id])) {
      remap[id] = out.add_initial(*i);
    } else {
      auto d = std::get<DerivedNode>(dag[id]);
      for (auto& p : d.premises) p = remap[p];
      remap[id] = out.add_derived(d.rule, std::move(d.premises));
    }
  }
  for (NodeId id : dag.selected()) {
    if (remap[id] != kDropped) out.mark_selected(remap[id]);
  }
  if (dag.proof()) {
    std::set<NodeId> proof;
    for (NodeId id : *dag.proof()) proof.insert(remap[id]);
    out.set_proof(std::move(proof));
  }
  std::vector<TrainExample> examples = labeled.examples;
  for (auto& e : examples) e.node = remap[e.node];
  return LabeledDerivation{std::move(out), std::move(examples)};
}

AxiomResolver::AxiomResolver(std::span<const std::string> revealed, int sine_cap,
                             InitialOverrides overrides)
    : sine_cap_(sine_cap), overrides_(overrides) {
  for (std::size_t i = 0; i < revealed.size(); ++i) {
    index_.emplace(revealed[i], static_cast<std::uint32_t>(i));
  }
}

NetInitial AxiomResolver::resolve(const InitialNode& node) const {
  NetInitial out;
  switch (node.kind) {
    case AxiomKind::goal:
      out.tag = AxiomTag{AxiomKind::goal, 0};
      break;
    case AxiomKind::unknown:
      out.tag = AxiomTag{AxiomKind::unknown, 0};
      break;
    case AxiomKind::named: {
      auto it = index_.find(node.name);
      if (overrides_.mask_axioms || it == index_.end()) {
        out.tag = AxiomTag{AxiomKind::unknown, 0};
      } else {
        out.tag = AxiomTag{AxiomKind::named, it->second};
      }
      break;
    }
  }
  int level = overrides_.fixed_level.value_or(node.sine_level);
  out.level = (level < 0 || level > sine_cap_) ? sine_cap_ : level;
  return out;
}

std::vector<NetNode> resolve_dag(const DerivationDag& dag, const AxiomResolver& resolver) {
  std::vector<NetNode> out;
  out.reserve(dag.size());
  for (const auto& label : dag.nodes()) {
    if (const auto* i = std::get_if<InitialNode>(&label)) {
      out.emplace_back(resolver.resolve(*i));
    } else {
      const auto& d = std::get<DerivedNode>(label);
      out.emplace_back(NetDerived{d.rule, {d.premises.begin(), d.premises.end()}});
    }
  }
  return out;
}

CollapseKey collapse_key(const NetNode& node) {
  if (const auto* i = std::get_if<NetInitial>(&node)) {
    return {-1, static_cast<std::int64_t>(i->tag.kind),
            i->tag.kind == AxiomKind::named ? static_cast<std::int64_t>(i->tag.index) : 0,
            i->level};
  }
  const auto& d = std::get<NetDerived>(node);
  CollapseKey key;
  key.reserve(d.premises.size() + 1);
  key.push_back(static_cast<std::int64_t>(d.rule));
  for (auto p : d.premises) key.push_back(p);
  return key;
}

std::size_t Collapser::KeyHash::operator()(const CollapseKey& k) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : k) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::uint32_t Collapser::add(NetNode node) {
  auto [it, inserted] = ids_.try_emplace(collapse_key(node), static_cast<std::uint32_t>(nodes_.size()));
  if (inserted) nodes_.push_back(std::move(node));
  return it->second;
}

std::optional<std::uint32_t> Collapser::find(const NetNode& node) const {
  auto it = ids_.find(collapse_key(node));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

double Batch::total_weight() const {
  double total = 0.0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    if (is_example[i]) total += weight[i];
  }
  return total;
}

Batch merge_batch(std::span<const LabeledDerivation> derivations, const AxiomResolver& resolver) {
  Collapser collapser;
  Batch batch;
  auto grow = [&batch](std::size_t n) {
    batch.target.resize(n, 0.0);
    batch.weight.resize(n, 0.0);
    batch.is_example.resize(n, 0);
  };
  for (const auto& labeled : derivations) {
    const auto& dag = labeled.dag;
    std::vector<std::uint32_t> to_batch(dag.size());
    for (NodeId id = 0; id < dag.size(); ++id) {
      if (const auto* i = std::get_if<InitialNode>(&dag[id])) {
        to_batch[id] = collapser.add(resolver.resolve(*i));
      } else {
        const auto& d = std::get<DerivedNode>(dag[id]);
        NetDerived nd{d.rule, {}};
        nd.premises.reserve(d.premises.size());
        for (NodeId p : d.premises) nd.premises.push_back(to_batch[p]);
        to_batch[id] = collapser.add(std::move(nd));
      }
    }
    grow(collapser.nodes().size());
    for (const auto& e : labeled.examples) {
      std::uint32_t b = to_batch.at(e.node);
      if (!batch.is_example[b]) {
        batch.is_example[b] = 1;
        batch.target[b] = e.target;
        batch.weight[b] = e.weight;
      } else {
        const double w1 = batch.weight[b];
        const double w2 = e.weight;
        if (w1 + w2 > 0.0) {
          batch.target[b] = (batch.target[b] * w1 + e.target * w2) / (w1 + w2);
        }
        batch.weight[b] = w1 + w2;
      }
    }
    batch.members.push_back(dag.problem_name());
  }
  batch.nodes = collapser.release();
  return batch;
}

std::vector<std::vector<std::size_t>> pack_batches(std::span<const std::size_t> sizes,
                                                   std::size_t target) {
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> totals;
  for (std::size_t item : order) {
    bool placed = false;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (totals[g] + sizes[item] < target) {
        groups[g].push_back(item);
        totals[g] += sizes[item];
        placed = true;
        break;
      }
    }
    if (!placed) {
      groups.push_back({item});
      totals.push_back(sizes[item]);
    }
  }
  return groups;
}

std::vector<Batch> build_batches(std::span<const LabeledDerivation> derivations,
                                 const AxiomResolver& resolver, std::size_t target_nodes) {
  std::vector<std::size_t> sizes;
  sizes.reserve(derivations.size());
  for (const auto& d : derivations) sizes.push_back(d.dag.size());
  std::vector<Batch> batches;
  for (const auto& group : pack_batches(sizes, target_nodes)) {
    std::vector<LabeledDerivation> members;
    members.reserve(group.size());
    for (std::size_t i : group) members.push_back(derivations[i]);
    batches.push_back(merge_batch(members, resolver));
  }
  return batches;
}

}  // namespace derivguide::derivation
