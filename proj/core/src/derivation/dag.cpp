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

#include "derivguide/derivation/dag.hpp"

#include <charconv>
#include <sstream>

namespace derivguide {

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::resolution: return "resolution";
    case Rule::factoring: return "factoring";
    case Rule::subsumption_resolution: return "subsumption_resolution";
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (Rule r : kAllRules) {
    if (rule_name(r) == name) return r;
  }
  return std::nullopt;
}

}  // namespace derivguide

namespace derivguide::derivation {

NodeId DerivationDag::add_initial(InitialNode node) {
  if (node.kind != AxiomKind::named) node.name.clear();
  if (node.kind == AxiomKind::named && node.name.empty()) {
    throw DagError("named initial node without a name");
  }
  nodes_.emplace_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId DerivationDag::add_derived(Rule rule, std::vector<NodeId> premises) {
  auto id = static_cast<NodeId>(nodes_.size());
  if (premises.size() != rule_arity(rule)) {
    throw DagError(std::string(rule_name(rule)) + " node with " + std::to_string(premises.size()) +
                   " premises");
  }
  for (NodeId p : premises) {
    if (p >= id) throw DagError("premise " + std::to_string(p) + " does not precede node");
  }
  nodes_.emplace_back(DerivedNode{rule, std::move(premises)});
  return id;
}

void DerivationDag::mark_selected(NodeId id) {
  if (id >= nodes_.size()) throw DagError("selected node " + std::to_string(id) + " absent");
  selected_.insert(id);
}

void DerivationDag::set_proof(std::set<NodeId> proof) {
  for (NodeId id : proof) {
    if (id >= nodes_.size()) throw DagError("proof node " + std::to_string(id) + " absent");
    if (const auto* d = std::get_if<DerivedNode>(&nodes_[id])) {
      for (NodeId p : d->premises) {
        if (!proof.contains(p)) throw DagError("proof is not closed under premises");
      }
    }
  }
  proof_ = std::move(proof);
}

std::string DerivationDag::to_log() const {
  std::ostringstream out;
  out << "problem " << problem_name_ << '\n';
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (const auto* i = std::get_if<InitialNode>(&nodes_[id])) {
      out << "i " << id << ' ';
      switch (i->kind) {
        case AxiomKind::named: out << i->name; break;
        case AxiomKind::unknown: out << "$unknown"; break;
        case AxiomKind::goal: out << "$goal"; break;
      }
      out << ' ' << i->sine_level << '\n';
    } else {
      const auto& d = std::get<DerivedNode>(nodes_[id]);
      out << "d " << id << ' ' << rule_name(d.rule);
      for (NodeId p : d.premises) out << ' ' << p;
      out << '\n';
    }
  }
  for (NodeId id : selected_) out << "s " << id << '\n';
  if (proof_) {
    for (NodeId id : *proof_) out << "p " << id << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

template <typename Int>
Int parse_int(std::string_view word, std::size_t line_no) {
  Int value{};
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw DagError("line " + std::to_string(line_no) + ": bad integer '" + std::string(word) + "'");
  }
  return value;
}

}  // namespace

DerivationDag DerivationDag::from_log(std::string_view text) {
  DerivationDag dag;
  std::set<NodeId> proof;
  bool has_proof = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto fail = [line_no](const std::string& what) -> DagError {
      return DagError("line " + std::to_string(line_no) + ": " + what);
    };
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line.substr(0, 8) != "problem ") throw fail("missing 'problem' header");
      dag.problem_name_ = std::string(line.substr(8));
      continue;
    }
    auto words = split_words(line);
    if (words.empty()) continue;
    std::string_view tag = words[0];
    if (tag == "i" || tag == "d") {
      if (words.size() < 3) throw fail("truncated node line");
      auto id = parse_int<NodeId>(words[1], line_no);
      if (id != dag.nodes_.size()) throw fail("node ids must be dense and ascending");
      try {
        if (tag == "i") {
          if (words.size() != 4) throw fail("initial node needs tag and level");
          InitialNode node;
          if (words[2] == "$unknown") {
            node.kind = AxiomKind::unknown;
          } else if (words[2] == "$goal") {
            node.kind = AxiomKind::goal;
          } else {
            node.kind = AxiomKind::named;
            node.name = std::string(words[2]);
          }
          node.sine_level = parse_int<int>(words[3], line_no);
          dag.add_initial(std::move(node));
        } else {
          auto rule = rule_from_name(words[2]);
          if (!rule) throw fail("unknown rule '" + std::string(words[2]) + "'");
          std::vector<NodeId> premises;
          for (std::size_t k = 3; k < words.size(); ++k) {
            premises.push_back(parse_int<NodeId>(words[k], line_no));
          }
          dag.add_derived(*rule, std::move(premises));
        }
      } catch (const DagError& e) {
        throw fail(e.what());
      }
    } else if (tag == "s" || tag == "p") {
      if (words.size() != 2) throw fail("expected one id");
      auto id = parse_int<NodeId>(words[1], line_no);
      if (id >= dag.nodes_.size()) throw fail("reference to absent node");
      if (tag == "s") {
        dag.selected_.insert(id);
      } else {
        has_proof = true;
        proof.insert(id);
      }
    } else {
      throw fail("unknown line tag '" + std::string(tag) + "'");
    }
  }
  if (line_no == 0) throw DagError("empty derivation log");
  if (has_proof) dag.set_proof(std::move(proof));
  return dag;
}

std::set<NodeId> extract_proof(const DerivationDag& dag, NodeId empty_clause) {
  if (empty_clause >= dag.size()) {
    throw DagError("node " + std::to_string(empty_clause) + " absent from derivation");
  }
  std::set<NodeId> closure;
  std::vector<NodeId> stack{empty_clause};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (!closure.insert(id).second) continue;
    if (const auto* d = std::get_if<DerivedNode>(&dag[id])) {
      for (NodeId p : d->premises) stack.push_back(p);
    }
  }
  return closure;
}

}  // namespace derivguide::derivation
