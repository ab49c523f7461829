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

#include "generators.hpp"
#include "paths.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace lexasp {
namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Solved {
    GroundProgram ground;
    Model model;
};

Solved solve_first(const std::string& text) {
    auto g = ground_program(parse_program(text));
    auto models = enumerate_stable_models(g, 1);
    if (models.empty()) throw Error("no model");
    return {std::move(g), models.front()};
}

TEST(Explainer, CarloBeatriceTreeIsByteExact) {
    auto g = ground_program(parse_program_file(testing::source_path("data/carlo_beatrice.lp")));
    auto models = enumerate_stable_models(g);
    ASSERT_EQ(models.size(), 1u);
    auto tree = justification_tree(g, models[0], parse_ground_atom("injuries(\"Carlo\",\"Beatrice\")"));
    EXPECT_EQ(tree.render(), slurp(testing::source_path("data/carlo_beatrice.tree")));
}

TEST(Explainer, TreeOfAnnotatedFactIsSingleLine) {
    auto g = ground_program(parse_program_file(testing::source_path("data/carlo_beatrice.lp")));
    auto m = enumerate_stable_models(g).front();
    auto tree = justification_tree(g, m, parse_ground_atom("physical_illness(\"skin lesion\")"));
    EXPECT_EQ(tree.render(), "|__skin lesion is a physical illness\n");
}

TEST(Explainer, UnannotatedAtomsAreTransparent) {
    auto s = solve_first(
        "%!trace \"root {X}\"\nr(X) :- mid(X).\nmid(X) :- leaf(X).\n%!trace \"leaf {1}\"\nleaf(1).");
    auto tree = justification_tree(s.ground, s.model, parse_ground_atom("r(1)"));
    EXPECT_EQ(tree.render(), "|__root 1\n|  |__leaf 1\n");
}

TEST(Explainer, UnlabelledProgramFallsBackToAtomText) {
    auto s = solve_first("a. b :- a.");
    auto tree = justification_tree(s.ground, s.model, parse_ground_atom("b"));
    EXPECT_EQ(tree.render(), "|__b\n|  |__a\n");
}

TEST(Explainer, QueryOutsideModelThrows) {
    auto s = solve_first("a. c :- not a.");
    EXPECT_THROW(justification_tree(s.ground, s.model, parse_ground_atom("c")), Error);
}

TEST(Explainer, FillTemplate) {
    Binding b = {{"X", Term::string("Carlo")}, {"Y", Term::constant("bea")}};
    Atom a = parse_ground_atom("p(\"Carlo\", bea, 3)");
    EXPECT_EQ(fill_template("{X} hit {Y} {3} times", b, a), "Carlo hit bea 3 times");
    EXPECT_EQ(fill_template("{1}/{2}/{9}/{Z}", b, a), "Carlo/bea/{9}/{Z}");
    EXPECT_EQ(fill_template("open {", b, a), "open {");
}

TEST(Explainer, DagHasOneEdgePerDerivedNode) {
    auto g = ground_program(parse_program_file(testing::source_path("data/carlo_beatrice.lp")));
    auto m = enumerate_stable_models(g).front();
    auto dag = support_dag(g, m);
    EXPECT_EQ(dag.nodes.size(), m.size());
    std::size_t derived = 0;
    for (const auto& n : dag.nodes) derived += n.kind == NodeKind::Derived;
    EXPECT_EQ(dag.edges.size(), derived);
    auto injuries = *dag.find(parse_ground_atom("injuries(\"Carlo\",\"Beatrice\")"));
    auto sub = reachable_from(dag, injuries);
    // injuries, cause_illness, illness, physical_illness, cause, intent, two agents
    EXPECT_EQ(sub.nodes.size(), 8u);
}

TEST(Explainer, ChoiceAtomsAreMarkedAssumed) {
    auto g = ground_program(parse_program("go. level(1..3). 1{pick(L) : level(L)}1 :- go. forced :- go. 1{forced2}1 :- go."));
    for (const auto& m : enumerate_stable_models(g)) {
        auto dag = support_dag(g, m);
        for (const auto& n : dag.nodes) {
            bool expect = n.atom.predicate == "pick";
            EXPECT_EQ(n.assumed, expect) << n.atom.to_string();
        }
    }
}

TEST(Explainer, DagSupportsAreWellFounded) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        testing::Rng rng(seed);
        auto g = ground_program(testing::random_ground_program(rng));
        for (const auto& m : enumerate_stable_models(g, 5)) {
            auto dag = support_dag(g, m);
            ASSERT_EQ(dag.nodes.size(), m.size());
            // Topological order exists: repeatedly remove nodes whose edge
            // targets are all removed.
            std::vector<const DagEdge*> edge_of(dag.nodes.size(), nullptr);
            for (const auto& e : dag.edges) {
                ASSERT_EQ(edge_of[e.from], nullptr) << "two edges from one node, seed " << seed;
                edge_of[e.from] = &e;
            }
            std::vector<char> done(dag.nodes.size(), 0);
            for (bool progress = true; progress;) {
                progress = false;
                for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
                    if (done[i]) continue;
                    bool ready = !edge_of[i] || std::all_of(edge_of[i]->to.begin(), edge_of[i]->to.end(),
                                                            [&](std::size_t t) { return done[t] != 0; });
                    if (ready) done[i] = progress = true;
                }
            }
            ASSERT_TRUE(std::all_of(done.begin(), done.end(), [](char c) { return c != 0; })) << "seed " << seed;
            for (std::size_t i = 0; i < dag.nodes.size(); ++i)
                ASSERT_EQ(dag.nodes[i].kind == NodeKind::Derived, edge_of[i] != nullptr);
        }
    }
}

TEST(Explainer, JsonExportRoundTrips) {
    auto g = ground_program(parse_program_file(testing::source_path("data/carlo_beatrice.lp")));
    auto dag = support_dag(g, enumerate_stable_models(g).front());
    auto text = export_dag(dag, DagFormat::Json);
    EXPECT_NE(text.find("\"schema\": \"lexasp.dag/1\""), std::string::npos);
    EXPECT_EQ(parse_dag_json(text), dag);
    EXPECT_THROW(parse_dag_json("{\"nodes\": [{\"atom\": \"a\", \"kind\": \"odd\"}], \"edges\": []}"), Error);
    EXPECT_THROW(parse_dag_json("not json"), Error);
}

TEST(Explainer, DotExportColoursFactsAndDerivedNodes) {
    auto s = solve_first("a. b :- a, not c.");
    auto dag = support_dag(s.ground, s.model);
    auto dot = export_dag(dag, DagFormat::Dot);
    EXPECT_NE(dot.find("label=\"a\", kind=fact, fillcolor=darkgreen"), std::string::npos);
    EXPECT_NE(dot.find("label=\"b\", kind=derived, fillcolor=palegreen"), std::string::npos);
    EXPECT_EQ(dot.find("not c"), std::string::npos);
    auto with_neg = export_dag(dag, DagFormat::Dot, {true});
    EXPECT_NE(with_neg.find("not c"), std::string::npos);
    EXPECT_NE(with_neg.find("style=dashed"), std::string::npos);
}

TEST(Explainer, SupportsRequireAStableModel) {
    auto g = ground_program(parse_program("a :- b. {b}."));
    Model not_stable = {*g.find("a")};
    EXPECT_THROW(compute_supports(g, not_stable), Error);
}

} // namespace
} // namespace lexasp
