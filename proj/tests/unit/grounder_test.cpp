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
#include <lexasp/parser.hpp>
#include <lexasp/solver.hpp>

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace lexasp {
namespace {

using testing::oracle_models;
using testing::to_model_set;

GroundProgram ground(const std::string& text) { return ground_program(parse_program(text)); }

TEST(Grounder, InstantiatesJoinsAndComparisons) {
    auto g = ground(
        "own(v, c). subtract(g, c). subtract(v, c). take_possession(g, c). take_possession(v, c).\n"
        "theft(R,V,C) :- own(V,C), subtract(R,C), take_possession(R,C), R != V.");
    EXPECT_TRUE(g.find("theft(g,v,c)").has_value());
    EXPECT_FALSE(g.find("theft(v,v,c)").has_value());
}

TEST(Grounder, KeepsOnlyPossibleAtoms) {
    auto g = ground("p(1). p(2). q(X) :- p(X), not r(X). r(2) :- s.");
    EXPECT_TRUE(g.find("q(1)").has_value());
    EXPECT_TRUE(g.find("q(2)").has_value());
    EXPECT_FALSE(g.find("s").has_value());
    // r/1 only occurs negated; no rule can derive it.
    for (const auto& r : g.rules()) {
        if (r.kind == RuleKind::Normal) {
            EXPECT_NE(g.atom(r.head).predicate, "r");
        }
    }
    EXPECT_EQ(g.rules().size(), 4u);
}

TEST(Grounder, AtomsAreSortedByText) {
    auto g = ground("b. a. c :- a, b.");
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g.atom(0).to_string(), "a");
    EXPECT_EQ(g.atom(1).to_string(), "b");
    EXPECT_EQ(g.atom(2).to_string(), "c");
}

TEST(Grounder, ExpandsChoiceConditionsAgainstFacts) {
    auto g = ground("level(1..4). go. 1{adherence(L) : level(L)}1 :- go.");
    std::size_t choices = 0;
    for (const auto& r : g.rules()) {
        if (r.kind != RuleKind::Choice) continue;
        ++choices;
        EXPECT_EQ(r.elements.size(), 4u);
        EXPECT_EQ(r.lower, 1);
        EXPECT_EQ(r.upper, 1);
    }
    EXPECT_EQ(choices, 1u);
}

TEST(Grounder, ChoiceUpperDefaultsToElementCount) {
    auto g = ground("{p; q; r}.");
    ASSERT_EQ(g.rules().size(), 1u);
    EXPECT_EQ(g.rules()[0].upper, 3);
}

TEST(Grounder, RejectsConditionsOverDerivedPredicates) {
    EXPECT_THROW(ground("base(1). level(X) :- base(X). 1{a(L) : level(L)}1."), GroundingError);
}

TEST(Grounder, ComparesIntegersNumerically) {
    auto g = ground("n(2). n(10). big(X) :- n(X), X > 3.");
    EXPECT_TRUE(g.find("big(10)").has_value());
    EXPECT_FALSE(g.find("big(2)").has_value());
}

TEST(Grounder, RuleInfoKeepsSourceRule) {
    auto g = ground("%#id r\np(X) :- q(X). q(1). q(2).");
    std::size_t copies = 0;
    for (const auto& r : g.rules())
        if (r.id() == "r") ++copies;
    EXPECT_EQ(copies, 2u);
}

TEST(Grounder, AgreesWithNaiveInstantiationOnRandomPrograms) {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        testing::Rng rng(seed);
        Program p = testing::random_nonground_program(rng);
        auto expected = oracle_models(p);
        auto actual = to_model_set(solve_program(p));
        ASSERT_EQ(actual, expected) << "seed " << seed << "\n" << p.to_string();
    }
}

} // namespace
} // namespace lexasp
