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

#include <lexasp/error.hpp>
#include <lexasp/explainer.hpp>
#include <lexasp/parser.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lexasp {

using nlohmann::json;

std::optional<std::size_t> ExplanationDag::find(const Atom& atom) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].atom == atom) return i;
    return std::nullopt;
}

Supports compute_supports(const GroundProgram& program, const Model& model) {
    if (!is_stable(program, model)) throw Error("model is not stable for the program");
    const auto n = program.size();
    std::vector<char> in(n, 0);
    for (AtomId a : model) in[a] = 1;

    Supports s;
    s.rule.assign(n, std::nullopt);
    s.fact.assign(n, 0);
    s.assumed.assign(n, 0);
    std::vector<char> explained(n, 0);
    const auto& rules = program.rules();
    for (const auto& r : rules)
        if (r.is_fact() && in[r.head]) {
            s.fact[r.head] = 1;
            explained[r.head] = 1;
        }

    auto ready = [&](const GroundRule& r) {
        for (AtomId a : r.positive)
            if (!explained[a]) return false;
        for (AtomId a : r.negative)
            if (in[a]) return false;
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            const auto& r = rules[i];
            if (r.kind == RuleKind::Normal) {
                if (!in[r.head] || explained[r.head] || !ready(r)) continue;
                s.rule[r.head] = i;
                explained[r.head] = 1;
                changed = true;
            } else if (r.kind == RuleKind::Choice) {
                bool pending = std::any_of(r.elements.begin(), r.elements.end(),
                                           [&](AtomId e) { return in[e] && !explained[e]; });
                if (!pending || !ready(r)) continue;
                // A choice whose bounds force every element is not an assumption.
                bool forced = r.lower >= static_cast<int>(r.elements.size());
                for (AtomId e : r.elements)
                    if (in[e] && !explained[e]) {
                        s.rule[e] = i;
                        s.assumed[e] = !forced;
                        explained[e] = 1;
                    }
                changed = true;
            }
        }
    }
    for (AtomId a : model)
        if (!explained[a]) throw Error("atom " + program.atom(a).to_string() + " has no support");
    return s;
}

ExplanationDag support_dag(const GroundProgram& program, const Model& model) {
    auto s = compute_supports(program, model);
    ExplanationDag dag;
    std::vector<std::size_t> node_of(program.size(), 0);
    for (AtomId a : model) {
        node_of[a] = dag.nodes.size();
        dag.nodes.push_back({program.atom(a), s.fact[a] ? NodeKind::Fact : NodeKind::Derived, s.assumed[a] != 0});
    }
    for (AtomId a : model) {
        if (s.fact[a]) continue;
        const auto& r = program.rules()[*s.rule[a]];
        DagEdge e;
        e.from = node_of[a];
        e.rule_id = r.id();
        for (AtomId b : r.positive) e.to.push_back(node_of[b]);
        for (AtomId b : r.negative) e.absent.push_back(program.atom(b));
        dag.edges.push_back(std::move(e));
    }
    return dag;
}

ExplanationDag reachable_from(const ExplanationDag& dag, std::size_t root) {
    std::vector<const DagEdge*> edge_of(dag.nodes.size(), nullptr);
    for (const auto& e : dag.edges) edge_of[e.from] = &e;
    std::vector<char> seen(dag.nodes.size(), 0);
    std::vector<std::size_t> stack{root};
    seen.at(root) = 1;
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        if (!edge_of[n]) continue;
        for (auto t : edge_of[n]->to)
            if (!seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
    }
    // Keep the original node order.
    std::vector<std::size_t> index(dag.nodes.size(), 0);
    ExplanationDag out;
    for (std::size_t i = 0; i < dag.nodes.size(); ++i)
        if (seen[i]) {
            index[i] = out.nodes.size();
            out.nodes.push_back(dag.nodes[i]);
        }
    for (const auto& e : dag.edges) {
        if (!seen[e.from]) continue;
        DagEdge c = e;
        c.from = index[e.from];
        for (auto& t : c.to) t = index[t];
        out.edges.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Justification trees
// ---------------------------------------------------------------------------

std::string fill_template(const std::string& text, const Binding& binding, const Atom& atom) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '{') {
            out += text[i++];
            continue;
        }
        auto close = text.find('}', i);
        if (close == std::string::npos) {
            out += text.substr(i);
            break;
        }
        std::string key = text.substr(i + 1, close - i - 1);
        std::optional<std::string> value;
        if (!key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); })) {
            std::size_t k = std::stoul(key);
            if (k >= 1 && k <= atom.args.size()) value = atom.args[k - 1].to_label();
        } else {
            for (const auto& [name, term] : binding)
                if (name == key) {
                    value = term.to_label();
                    break;
                }
        }
        out += value ? *value : text.substr(i, close - i + 1);
        i = close + 1;
    }
    return out;
}

namespace {

class TreeBuilder {
public:
    TreeBuilder(const GroundProgram& program, const Model& model)
        : program_(program), supports_(compute_supports(program, model)) {}

    std::optional<std::string> label(AtomId a) const {
        const Atom& atom = program_.atom(a);
        if (supports_.fact[a]) {
            // The fact's own rule carries the annotation.
            for (const auto& r : program_.rules())
                if (r.is_fact() && r.head == a && r.info && r.info->annotation)
                    return fill_template(*r.info->annotation, r.binding, atom);
            return std::nullopt;
        }
        const auto& r = program_.rules()[*supports_.rule[a]];
        if (supports_.assumed[a]) {
            Binding b = r.binding;
            auto it = std::find(r.elements.begin(), r.elements.end(), a);
            if (it != r.elements.end()) {
                const auto& local = r.element_bindings[it - r.elements.begin()];
                b.insert(b.end(), local.begin(), local.end());
            }
            if (r.info && r.info->annotation) return fill_template(*r.info->annotation, b, atom);
            return "assumed: " + atom.to_string() + " (chosen by " + r.id() + ")";
        }
        if (r.info && r.info->annotation) return fill_template(*r.info->annotation, r.binding, atom);
        return std::nullopt;
    }

    // Positive body of the support: derived atoms first, then facts, each
    // group in body order.
    std::vector<AtomId> body(AtomId a) const {
        if (supports_.fact[a]) return {};
        const auto& r = program_.rules()[*supports_.rule[a]];
        std::vector<AtomId> out;
        for (AtomId b : r.positive)
            if (!supports_.fact[b]) out.push_back(b);
        for (AtomId b : r.positive)
            if (supports_.fact[b]) out.push_back(b);
        return out;
    }

    std::vector<TreeNode> collect(AtomId a) const {
        if (auto l = label(a)) return {TreeNode{*l, children(a)}};
        return children(a);
    }

    std::vector<TreeNode> children(AtomId a) const {
        std::vector<TreeNode> out;
        for (AtomId b : body(a)) {
            auto sub = collect(b);
            out.insert(out.end(), std::make_move_iterator(sub.begin()), std::make_move_iterator(sub.end()));
        }
        return out;
    }

    TreeNode bare(AtomId a) const {
        TreeNode node{program_.atom(a).to_string(), {}};
        for (AtomId b : body(a)) node.children.push_back(bare(b));
        return node;
    }

private:
    const GroundProgram& program_;
    Supports supports_;
};

void render_node(const TreeNode& node, std::size_t depth, std::string& out) {
    for (std::size_t i = 1; i < depth; ++i) out += "|  ";
    out += "|__" + node.label + "\n";
    for (const auto& c : node.children) render_node(c, depth + 1, out);
}

json tree_json(const TreeNode& node) {
    json children = json::array();
    for (const auto& c : node.children) children.push_back(tree_json(c));
    return {{"label", node.label}, {"children", children}};
}

} // namespace

std::string JustificationTree::render() const {
    std::string out;
    render_node(root, 1, out);
    return out;
}

std::string JustificationTree::to_json() const { return tree_json(root).dump(); }

JustificationTree justification_tree(const GroundProgram& program, const Model& model, const Atom& query) {
    auto id = program.find(query);
    if (!id || !std::binary_search(model.begin(), model.end(), *id))
        throw Error("query atom " + query.to_string() + " is not in the model");
    TreeBuilder builder(program, model);
    auto label = builder.label(*id);
    auto children = builder.children(*id);
    if (!label && children.empty()) return {builder.bare(*id)};
    return {TreeNode{label.value_or(query.to_string()), std::move(children)}};
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

const char* kind_name(NodeKind k) { return k == NodeKind::Fact ? "fact" : "derived"; }

std::string to_dot(const ExplanationDag& dag, const DotOptions& options) {
    std::ostringstream out;
    out << "digraph explanation {\n  rankdir=BT;\n  node [shape=box, style=filled];\n";
    for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
        const auto& n = dag.nodes[i];
        out << "  n" << i << " [label=\"" << dot_escape(n.atom.to_string()) << "\", kind=" << kind_name(n.kind);
        if (n.kind == NodeKind::Fact) {
            out << ", fillcolor=darkgreen, fontcolor=white";
        } else {
            out << ", fillcolor=palegreen";
        }
        if (n.assumed) out << ", peripheries=2";
        out << "];\n";
    }
    std::size_t pseudo = 0;
    for (const auto& e : dag.edges) {
        for (std::size_t t : e.to)
            out << "  n" << e.from << " -> n" << t << " [label=\"" << dot_escape(e.rule_id) << "\"];\n";
        if (e.from < dag.nodes.size() && e.to.empty())
            out << "  n" << e.from << " [xlabel=\"" << dot_escape(e.rule_id) << "\"];\n";
        if (!options.show_negative) continue;
        for (const auto& a : e.absent) {
            out << "  neg" << pseudo << " [label=\"not " << dot_escape(a.to_string())
                << "\", style=dashed, fillcolor=white];\n";
            out << "  n" << e.from << " -> neg" << pseudo << " [style=dashed, label=\"" << dot_escape(e.rule_id)
                << "\"];\n";
            ++pseudo;
        }
    }
    out << "}\n";
    return out.str();
}

std::string to_json(const ExplanationDag& dag) {
    json nodes = json::array();
    for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
        const auto& n = dag.nodes[i];
        nodes.push_back({{"id", i}, {"atom", n.atom.to_string()}, {"kind", kind_name(n.kind)}, {"assumed", n.assumed}});
    }
    json edges = json::array();
    for (const auto& e : dag.edges) {
        json absent = json::array();
        for (const auto& a : e.absent) absent.push_back(a.to_string());
        edges.push_back({{"from", e.from}, {"rule", e.rule_id}, {"to", e.to}, {"absent", absent}});
    }
    return json{{"schema", "lexasp.dag/1"}, {"nodes", nodes}, {"edges", edges}}.dump(2);
}

} // namespace

std::string export_dag(const ExplanationDag& dag, DagFormat format, const DotOptions& options) {
    return format == DagFormat::Dot ? to_dot(dag, options) : to_json(dag);
}

ExplanationDag parse_dag_json(const std::string& text) {
    try {
        auto doc = json::parse(text);
        ExplanationDag dag;
        for (const auto& n : doc.at("nodes")) {
            std::string kind = n.at("kind").get<std::string>();
            if (kind != "fact" && kind != "derived") throw Error("unknown node kind '" + kind + "'");
            dag.nodes.push_back({parse_ground_atom(n.at("atom").get<std::string>()),
                                 kind == "fact" ? NodeKind::Fact : NodeKind::Derived, n.value("assumed", false)});
        }
        for (const auto& e : doc.at("edges")) {
            DagEdge edge;
            edge.from = e.at("from").get<std::size_t>();
            edge.rule_id = e.at("rule").get<std::string>();
            edge.to = e.at("to").get<std::vector<std::size_t>>();
            for (const auto& a : e.value("absent", json::array())) edge.absent.push_back(parse_ground_atom(a.get<std::string>()));
            if (edge.from >= dag.nodes.size()) throw Error("edge source out of range");
            for (auto t : edge.to)
                if (t >= dag.nodes.size()) throw Error("edge target out of range");
            dag.edges.push_back(std::move(edge));
        }
        return dag;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed DAG document: ") + e.what());
    }
}

} // namespace lexasp
