//
// Copyright 2026 The lexasp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef LEXASP_EXPLAINER_HPP
#define LEXASP_EXPLAINER_HPP

#include <lexasp/solver.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lexasp {

enum class NodeKind { Fact, Derived };

struct DagNode {
    Atom atom;
    NodeKind kind = NodeKind::Fact;
    // Selected by a choice rule whose bounds leave a choice.
    bool assumed = false;

    friend bool operator==(const DagNode&, const DagNode&) = default;
};

// The chosen support of one derived node.
struct DagEdge {
    std::size_t from = 0;
    std::string rule_id;
    std::vector<std::size_t> to;  // positive body atoms
    std::vector<Atom> absent;     // negated body atoms, all false in the model

    friend bool operator==(const DagEdge&, const DagEdge&) = default;
};

// Nodes are the model atoms in model order; every derived node has exactly
// one edge.
struct ExplanationDag {
    std::vector<DagNode> nodes;
    std::vector<DagEdge> edges;

    std::optional<std::size_t> find(const Atom& atom) const;
    friend bool operator==(const ExplanationDag&, const ExplanationDag&) = default;
};

// Support of each model atom, indexed like the model. Facts and absent
// atoms have no support.
struct Supports {
    std::vector<std::optional<std::size_t>> rule;  // by AtomId
    std::vector<char> fact;                        // by AtomId
    std::vector<char> assumed;                     // by AtomId
};

// Chooses one support per atom in least-fixpoint order: the first rule, in
// program order, whose body holds and whose positive body is already
// explained. Throws Error if `model` is not stable.
Supports compute_supports(const GroundProgram& program, const Model& model);

ExplanationDag support_dag(const GroundProgram& program, const Model& model);

// The part of `dag` reachable from node `root`, renumbered in node order.
ExplanationDag reachable_from(const ExplanationDag& dag, std::size_t root);

struct TreeNode {
    std::string label;
    std::vector<TreeNode> children;

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct JustificationTree {
    TreeNode root;

    // One line per node: "|  " repeated depth-1 times, then "|__", then the label.
    std::string render() const;
    std::string to_json() const;
};

// Throws Error if `query` is not in the model.
JustificationTree justification_tree(const GroundProgram& program, const Model& model, const Atom& query);

// Substitutes `{Var}` from the binding and `{N}` from the N-th argument of
// `atom`. Unknown placeholders are kept verbatim.
std::string fill_template(const std::string& text, const Binding& binding, const Atom& atom);

enum class DagFormat { Dot, Json };

struct DotOptions {
    // Draw negated body literals as dashed edges to pseudo-nodes.
    bool show_negative = false;
};

std::string export_dag(const ExplanationDag& dag, DagFormat format, const DotOptions& options = {});

// Inverse of export_dag(..., DagFormat::Json). Throws Error on malformed input.
ExplanationDag parse_dag_json(const std::string& text);

} // namespace lexasp

#endif
