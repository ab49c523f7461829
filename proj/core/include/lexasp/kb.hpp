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

// Legal knowledge base: article sets, judgment records, learned rules and
// contradiction handling.

#ifndef LEXASP_KB_HPP
#define LEXASP_KB_HPP

#include <lexasp/syntax.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lexasp {

struct ArticleSet {
    std::string id;                     // file stem, e.g. T_R
    std::vector<std::string> articles;  // e.g. 624, 624 bis, 628
    Program program;
};

// 1 = tribunale, 2 = appello, 3 = cassazione.
int court_level_from_citation(const std::string& citation);

struct JudgmentRecord {
    std::string id;
    std::string citation;
    int court_level = 0;
    std::string date;  // YYYY-MM-DD
    std::vector<Atom> facts;
    std::vector<Atom> expected;
    std::vector<Rule> learned_rules;
    // Judgment ids this ruling is declared more specific than.
    std::vector<std::string> specific_over;
    bool synthetic = false;
};

// Parses a `.case` file (ground facts plus `%#expect atom` pragmas) and the
// `<stem>.meta.json` sidecar next to it. Throws KbError.
JudgmentRecord load_judgment(const std::filesystem::path& case_file);

struct KnowledgeBase {
    std::vector<ArticleSet> article_sets;
    std::vector<JudgmentRecord> judgments;
    // Articles plus integrated learned rules.
    Program program;
    std::vector<Signature> verdicts;
    // using_judgment marker -> judgment id
    std::map<std::string, std::string> markers;

    const JudgmentRecord* judgment(const std::string& id) const;
};

// Merges `.lp` files in the given order. Throws SyntaxError, SafetyError or
// DuplicateIdError.
Program load_kb(const std::vector<std::filesystem::path>& paths);

// Loads `articles/*.lp`, `judgments/*.case`, `learned/<judgment>.lp` and
// `manifest.json` below `root`.
KnowledgeBase load_kb_dir(const std::filesystem::path& root);

struct LintFinding {
    enum class Severity { Warning, Error };
    Severity severity = Severity::Warning;
    std::string message;
};

// Arity clashes are errors; naming-convention issues are warnings.
std::vector<LintFinding> lint_program(const Program& program);

// Fresh marker constant for `citation`, e.g. cass_2008_15420, with a numeric
// suffix when it is already used in `kb`.
std::string marker_for(const Program& kb, const std::string& citation);

// Installs `h :- body` as `2{h; using_judgment(m)}2 :- body.` with a fresh
// marker m. Throws DuplicateIdError when the rule id is taken, KbError for
// rules without a single head atom.
Program integrate_learned_rule(const Program& kb, const Rule& rule, const JudgmentRecord& judgment,
                               std::string* marker = nullptr);

enum class Maxim { Specialis, Superior, Posterior };
enum class Resolution { AWins, BWins, Unresolved };

const char* to_string(Maxim m);
const char* to_string(Resolution r);

struct SourceRef {
    enum class Kind { Article, Judgment, Fact };
    Kind kind = Kind::Article;
    std::string id;  // judgment id, or rule id / atom text
    std::string rule_id;
    std::optional<int> court_level;
    std::optional<std::string> date;
    std::vector<std::string> specific_over;
};

struct ContradictionFinding {
    std::string claim_a;
    std::string claim_b;
    Term subject;
    SourceRef source_a;
    SourceRef source_b;
    Resolution resolution = Resolution::Unresolved;
    std::set<Maxim> applied;
    std::vector<std::string> diagnostics;
    // Indices of the stable models containing the contradiction atom.
    std::vector<std::size_t> models;

    Atom atom() const;
};

struct ContradictionReport {
    bool consistent = true;
    std::string diagnostic;
    std::vector<ContradictionFinding> findings;
};

// Solves kb ∪ facts and turns every contradiction/3 atom of every model into
// a finding, attributed through the supports of the first two positive body
// atoms of the rule deriving it. Judgment metadata is looked up in
// `judgments`; findings are passed through resolve_priority.
ContradictionReport detect_contradictions(const Program& kb, const std::vector<Atom>& facts,
                                          const std::vector<JudgmentRecord>& judgments = {},
                                          std::size_t model_limit = 1000);

// Specialis declarations dominate; otherwise superior and posterior decide
// when they agree and leave the conflict unresolved when they disagree.
ContradictionFinding resolve_priority(const ContradictionFinding& finding);

// Facts as a program (origin user-evidence), for appending to a KB.
Program facts_program(const std::vector<Atom>& facts, const std::string& source = "case");

} // namespace lexasp

#endif
