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
#include <lexasp/kb.hpp>
#include <lexasp/parser.hpp>
#include <lexasp/solver.hpp>

#include "paths.hpp"

#include <gtest/gtest.h>

#include <fstream>

namespace lexasp {
namespace {

namespace fs = std::filesystem;

const KnowledgeBase& shipped() {
    static const KnowledgeBase kb = load_kb_dir(testing::source_path("kb"));
    return kb;
}

std::vector<Atom> atoms(std::initializer_list<const char*> texts) {
    std::vector<Atom> out;
    for (const char* t : texts) out.push_back(parse_ground_atom(t));
    return out;
}

TEST(Kb, LoadsShippedKnowledgeBase) {
    const auto& kb = shipped();
    ASSERT_EQ(kb.article_sets.size(), 4u);
    EXPECT_EQ(kb.article_sets[3].id, "T_R");
    EXPECT_EQ(kb.article_sets[3].articles, (std::vector<std::string>{"624", "624 bis", "628"}));
    EXPECT_EQ(kb.judgments.size(), 5u);
    EXPECT_EQ(kb.markers.size(), 4u);
    EXPECT_EQ(kb.markers.at("cass_2008_15420"), "cass_2008_15420");
    EXPECT_FALSE(kb.verdicts.empty());
    const auto* j = kb.judgment("trib_2022_3684");
    ASSERT_NE(j, nullptr);
    EXPECT_EQ(j->court_level, 1);
    EXPECT_EQ(j->date, "2022-08-26");
    EXPECT_EQ(j->facts.size(), 5u);
    EXPECT_EQ(j->expected.size(), 2u);
    EXPECT_EQ(j->learned_rules.size(), 1u);
    EXPECT_TRUE(kb.judgment("synthetic_slap")->synthetic);
}

TEST(Kb, LearnedRulesAreInstalledWithMarkers) {
    const auto& kb = shipped();
    const Rule* r = kb.program.find("trib_2022_3684:1");
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->to_string(), "2{only_pain(I);using_judgment(trib_2022_3684)}2 :- neck_pain(I).");
    EXPECT_EQ(r->origin, Origin::LearnedJudgment);
    EXPECT_EQ(r->judgment, "trib_2022_3684");
}

TEST(Kb, MarkerForCitations) {
    Program empty;
    EXPECT_EQ(marker_for(empty, "Cassazione penale sez. II, 12/03/2008, n. 15420"), "cass_2008_15420");
    EXPECT_EQ(marker_for(empty, "Tribunale Bari sez. I, 26/08/2022, n. 3684"), "trib_2022_3684");
    EXPECT_EQ(marker_for(empty, "Corte d'Appello di Milano, 01/02/2021, n. 7"), "app_2021_7");
    JudgmentRecord j;
    j.id = "x";
    j.citation = "Cassazione penale sez. II, 12/03/2008, n. 15420";
    auto once = integrate_learned_rule(empty, parse_rule("%#id a\np :- q."), j);
    EXPECT_EQ(marker_for(once, j.citation), "cass_2008_15420_2");
    auto twice = integrate_learned_rule(once, parse_rule("%#id b\nr :- q."), j);
    EXPECT_EQ(marker_for(twice, j.citation), "cass_2008_15420_3");
}

TEST(Kb, IntegrationRejectsBadRules) {
    JudgmentRecord j;
    j.id = "x";
    j.citation = "Tribunale Roma, 01/01/2020, n. 1";
    Program kb = parse_program("%#id taken\na.");
    EXPECT_THROW(integrate_learned_rule(kb, parse_rule(":- a."), j), KbError);
    EXPECT_THROW(integrate_learned_rule(kb, parse_rule("%#id taken\nb :- a."), j), DuplicateIdError);
    JudgmentRecord nameless;
    nameless.id = "y";
    EXPECT_THROW(integrate_learned_rule(kb, parse_rule("b :- a."), nameless), KbError);
}

TEST(Kb, UsingJudgmentAppearsExactlyWhenTheLearnedRuleFires) {
    JudgmentRecord j;
    j.id = "x";
    j.citation = "Tribunale Roma, 01/01/2020, n. 1";
    Program kb = integrate_learned_rule(parse_program("q :- r. {r}."), parse_rule("p :- q.", {"learned"}), j);
    auto g = ground_program(kb);
    for (const auto& m : enumerate_stable_models(g)) {
        bool q = std::binary_search(m.begin(), m.end(), *g.find("q"));
        bool p = g.find("p") && std::binary_search(m.begin(), m.end(), *g.find("p"));
        auto u = g.find("using_judgment(trib_2020_1)");
        bool marked = u && std::binary_search(m.begin(), m.end(), *u);
        EXPECT_EQ(p, q);
        EXPECT_EQ(marked, q);
    }
}

TEST(Kb, LintFlagsArityClashesAndNaming) {
    auto findings = lint_program(parse_program("p(a). q :- p(a, b). owners(X) :- p(X). beatings(a)."));
    std::size_t errors = 0;
    std::size_t warnings = 0;
    for (const auto& f : findings) {
        if (f.severity == LintFinding::Severity::Error) {
            ++errors;
            EXPECT_NE(f.message.find("'p'"), std::string::npos) << f.message;
        } else {
            ++warnings;
            EXPECT_NE(f.message.find("owners"), std::string::npos) << f.message;
        }
    }
    EXPECT_EQ(errors, 1u);
    EXPECT_EQ(warnings, 1u);
    EXPECT_TRUE(lint_program(shipped().program).empty());
}

TEST(Kb, CervicalgiaContradictionIsUnresolved) {
    const auto& kb = shipped();
    auto report = detect_contradictions(kb.program,
                                        atoms({"agent(\"Luca\")", "agent(\"Marta\")",
                                               "cause(\"Luca\",\"Marta\",\"cervicalgia\")",
                                               "neck_pain(\"cervicalgia\")", "intent_to_harm(\"Luca\",\"Marta\")"}),
                                        kb.judgments);
    EXPECT_TRUE(report.consistent);
    ASSERT_EQ(report.findings.size(), 1u);
    const auto& f = report.findings[0];
    EXPECT_EQ(f.atom().to_string(), "contradiction(\"not illness\",\"illness\",\"cervicalgia\")");
    EXPECT_EQ(f.source_a.id, "trib_2022_3684");
    EXPECT_EQ(f.source_b.id, "cass_2008_15420");
    EXPECT_EQ(f.resolution, Resolution::Unresolved);
    EXPECT_EQ(f.applied, (std::set<Maxim>{Maxim::Superior, Maxim::Posterior}));
}

TEST(Kb, SnatchTheftContradictionNamesTheJudgment) {
    const auto& kb = shipped();
    auto report = detect_contradictions(kb.program, kb.judgment("trib_2020_551")->facts, kb.judgments);
    ASSERT_EQ(report.findings.size(), 1u);
    const auto& f = report.findings[0];
    EXPECT_EQ(f.claim_a, "robbery");
    EXPECT_EQ(f.claim_b, "theft_snatch");
    EXPECT_EQ(f.source_a.kind, SourceRef::Kind::Article);
    EXPECT_EQ(f.source_b.kind, SourceRef::Kind::Judgment);
    EXPECT_EQ(f.resolution, Resolution::Unresolved);
    EXPECT_FALSE(f.diagnostics.empty());
    EXPECT_EQ(f.models.size(), 4u);
}

TEST(Kb, NoContradictionInTheEarringsCase) {
    const auto& kb = shipped();
    auto report = detect_contradictions(kb.program, kb.judgment("cass_2019_16899")->facts, kb.judgments);
    EXPECT_TRUE(report.consistent);
    EXPECT_TRUE(report.findings.empty());
}

TEST(Kb, InconsistentFactsAreReported) {
    auto report = detect_contradictions(parse_program(":- a."), atoms({"a"}));
    EXPECT_FALSE(report.consistent);
    EXPECT_FALSE(report.diagnostic.empty());
}

ContradictionFinding finding(int level_a, const char* date_a, int level_b, const char* date_b) {
    ContradictionFinding f;
    f.source_a = {SourceRef::Kind::Judgment, "a", "ra", level_a, date_a, {}};
    f.source_b = {SourceRef::Kind::Judgment, "b", "rb", level_b, date_b, {}};
    return f;
}

TEST(Priority, SuperiorAndPosteriorAgreeing) {
    auto r = resolve_priority(finding(3, "2020-01-01", 1, "2010-01-01"));
    EXPECT_EQ(r.resolution, Resolution::AWins);
    EXPECT_EQ(r.applied, (std::set<Maxim>{Maxim::Superior, Maxim::Posterior}));
}

TEST(Priority, SuperiorAndPosteriorDisagreeing) {
    auto r = resolve_priority(finding(1, "2022-08-26", 3, "2008-03-12"));
    EXPECT_EQ(r.resolution, Resolution::Unresolved);
    EXPECT_EQ(r.applied, (std::set<Maxim>{Maxim::Superior, Maxim::Posterior}));
}

TEST(Priority, SingleMaximDecides) {
    auto r = resolve_priority(finding(2, "2015-05-05", 2, "2019-05-05"));
    EXPECT_EQ(r.resolution, Resolution::BWins);
    EXPECT_EQ(r.applied, (std::set<Maxim>{Maxim::Posterior}));
    auto same = resolve_priority(finding(2, "2015-05-05", 2, "2015-05-05"));
    EXPECT_EQ(same.resolution, Resolution::Unresolved);
    EXPECT_TRUE(same.applied.empty());
}

TEST(Priority, SpecialisDominates) {
    auto f = finding(1, "2000-01-01", 3, "2020-01-01");
    f.source_a.specific_over = {"b"};
    auto r = resolve_priority(f);
    EXPECT_EQ(r.resolution, Resolution::AWins);
    EXPECT_EQ(r.applied, (std::set<Maxim>{Maxim::Specialis}));
}

TEST(Priority, MissingMetadataIsUnresolved) {
    auto f = finding(1, "2000-01-01", 3, "2020-01-01");
    f.source_b.court_level.reset();
    auto r = resolve_priority(f);
    EXPECT_EQ(r.resolution, Resolution::Unresolved);
    EXPECT_TRUE(r.applied.empty());
    ASSERT_FALSE(r.diagnostics.empty());
}

TEST(Kb, JudgmentLoaderValidatesMetadata) {
    auto dir = fs::temp_directory_path() / "lexasp_kb_test";
    fs::create_directories(dir);
    {
        std::ofstream(dir / "bad.case") << "a.\n%#expect a\n";
        std::ofstream(dir / "bad.meta.json") << R"({"citation": "Cassazione, 01/01/2000, n. 1", "court_level": 1, "date": "2000-01-01"})";
    }
    EXPECT_THROW(load_judgment(dir / "bad.case"), KbError);
    {
        std::ofstream(dir / "rule.case") << "a :- b.\n";
        std::ofstream(dir / "rule.meta.json") << R"({"citation": "x", "court_level": 1, "date": "2000-01-01"})";
    }
    EXPECT_THROW(load_judgment(dir / "rule.case"), KbError);
    {
        std::ofstream(dir / "ok.case") << "a.\n%#expect b\n";
        std::ofstream(dir / "ok.meta.json") << R"({"citation": "Tribunale Roma, 01/01/2000, n. 1", "court_level": 1, "date": "2000-01-01"})";
    }
    auto j = load_judgment(dir / "ok.case");
    EXPECT_EQ(j.expected.size(), 1u);
    EXPECT_THROW(load_judgment(dir / "missing.case"), Error);
    fs::remove_all(dir);
}

} // namespace
} // namespace lexasp
