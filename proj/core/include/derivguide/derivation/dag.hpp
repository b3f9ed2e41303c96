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
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace derivguide {

/// Inference rules recorded in derivations.
enum class Rule : std::uint8_t { resolution, factoring, subsumption_resolution };

inline constexpr Rule kAllRules[] = {Rule::resolution, Rule::factoring,
                                     Rule::subsumption_resolution};

constexpr std::size_t rule_arity(Rule r) {
  switch (r) {
    case Rule::resolution: return 2;
    case Rule::factoring: return 1;
    case Rule::subsumption_resolution: return 2;
  }
  return 0;
}

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

/// SInE level of an axiom that the trigger relation never reaches.
inline constexpr int kSineUnreached = -1;

}  // namespace derivguide

namespace derivguide::derivation {

using NodeId = std::uint32_t;

enum class AxiomKind : std::uint8_t { named, unknown, goal };

struct InitialNode {
  AxiomKind kind = AxiomKind::named;
  std::string name;  // set only for AxiomKind::named
  int sine_level = 0;

  friend bool operator==(const InitialNode&, const InitialNode&) = default;
};

struct DerivedNode {
  Rule rule = Rule::resolution;
  std::vector<NodeId> premises;

  friend bool operator==(const DerivedNode&, const DerivedNode&) = default;
};

using NodeLabel = std::variant<InitialNode, DerivedNode>;

class DagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Derivation DAG of one prover run. Node ids are dense and every premise id
/// is smaller than the id of its consumer, so id order is a topological order.
class DerivationDag {
 public:
  explicit DerivationDag(std::string problem_name = {}) : problem_name_(std::move(problem_name)) {}

  NodeId add_initial(InitialNode node);
  /// Throws DagError when a premise does not precede the new node or the
  /// premise count does not match the rule arity.
  NodeId add_derived(Rule rule, std::vector<NodeId> premises);

  void mark_selected(NodeId id);
  /// Throws DagError unless `proof` is closed under premises.
  void set_proof(std::set<NodeId> proof);

  const std::string& problem_name() const { return problem_name_; }
  void set_problem_name(std::string name) { problem_name_ = std::move(name); }
  std::size_t size() const { return nodes_.size(); }
  const NodeLabel& operator[](NodeId id) const { return nodes_.at(id); }
  const std::vector<NodeLabel>& nodes() const { return nodes_; }
  const std::set<NodeId>& selected() const { return selected_; }
  const std::optional<std::set<NodeId>>& proof() const { return proof_; }

  bool is_initial(NodeId id) const { return std::holds_alternative<InitialNode>(nodes_.at(id)); }

  /// Line-oriented text form; see README for the grammar.
  std::string to_log() const;
  static DerivationDag from_log(std::string_view text);

  friend bool operator==(const DerivationDag&, const DerivationDag&) = default;

 private:
  std::string problem_name_;
  std::vector<NodeLabel> nodes_;
  std::set<NodeId> selected_;
  std::optional<std::set<NodeId>> proof_;
};

/// Ancestor closure of `empty_clause`, inclusive.
std::set<NodeId> extract_proof(const DerivationDag& dag, NodeId empty_clause);

}  // namespace derivguide::derivation
