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
#include <lexasp/kb.hpp>
#include <lexasp/parser.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <regex>
#include <unordered_set>

namespace lexasp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool valid_date(const std::string& d) {
    static const std::regex re(R"((\d{4})-(\d{2})-(\d{2}))");
    std::smatch m;
    if (!std::regex_match(d, m, re)) return false;
    int month = std::stoi(m[2]);
    int day = std::stoi(m[3]);
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::vector<fs::path> files_with_extension(const fs::path& dir, const std::string& ext) {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ext) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

int court_level_from_citation(const std::string& citation) {
    auto c = lower(citation);
    if (c.find("cassazione") != std::string::npos) return 3;
    if (c.find("appello") != std::string::npos) return 2;
    if (c.find("tribunale") != std::string::npos) return 1;
    return 0;
}

const JudgmentRecord* KnowledgeBase::judgment(const std::string& id) const {
    for (const auto& j : judgments)
        if (j.id == id) return &j;
    return nullptr;
}

Program facts_program(const std::vector<Atom>& facts, const std::string& source) {
    Program p;
    for (std::size_t i = 0; i < facts.size(); ++i) {
        Rule r;
        r.head = facts[i];
        r.origin = Origin::UserEvidence;
        r.id = source + "#" + std::to_string(i + 1);
        p.rules.push_back(std::move(r));
    }
    return p;
}

JudgmentRecord load_judgment(const fs::path& case_file) {
    JudgmentRecord j;
    j.id = case_file.stem().string();
    ParseOptions opts;
    opts.source = case_file.filename().string();
    opts.origin = Origin::UserEvidence;
    Program p = parse_program(read_file(case_file), opts);
    for (const auto& r : p.rules) {
        if (!r.is_fact() || !r.head.is_ground())
            throw KbError(case_file.string() + ": case files may only contain ground facts (rule " + r.id + ")");
        j.facts.push_back(r.head);
    }
    for (const auto& d : p.directives) {
        if (d.name != "expect") continue;
        try {
            j.expected.push_back(parse_ground_atom(d.argument));
        } catch (const Error& e) {
            throw KbError(case_file.string() + ":" + std::to_string(d.line) + ": bad %#expect atom: " + e.what());
        }
    }

    fs::path meta = case_file;
    meta.replace_extension(".meta.json");
    if (!fs::exists(meta)) throw KbError("missing metadata sidecar " + meta.string());
    json doc;
    try {
        doc = json::parse(read_file(meta));
        j.citation = doc.at("citation").get<std::string>();
        j.court_level = doc.at("court_level").get<int>();
        j.date = doc.at("date").get<std::string>();
        j.synthetic = doc.value("synthetic", false);
    } catch (const json::exception& e) {
        throw KbError(meta.string() + ": " + e.what());
    }
    if (j.court_level < 1 || j.court_level > 3) throw KbError(meta.string() + ": court_level must be 1, 2 or 3");
    int implied = court_level_from_citation(j.citation);
    if (implied != 0 && implied != j.court_level)
        throw KbError(meta.string() + ": court_level " + std::to_string(j.court_level) +
                      " does not match the citation '" + j.citation + "'");
    if (!valid_date(j.date)) throw KbError(meta.string() + ": date must be YYYY-MM-DD, got '" + j.date + "'");
    return j;
}

Program load_kb(const std::vector<fs::path>& paths) {
    Program out;
    for (const auto& p : paths) out.merge(parse_program_file(p, Origin::Article));
    return out;
}

std::string marker_for(const Program& kb, const std::string& citation) {
    static const std::regex date_re(R"((\d{1,2})/(\d{1,2})/(\d{4}))");
    static const std::regex number_re(R"(n\.\s*(\d+))");
    std::string base;
    std::smatch date;
    std::smatch number;
    auto c = lower(citation);
    std::string court = c.substr(0, c.find_first_of(" ,"));
    if (court == "cassazione") court = "cass";
    else if (court == "tribunale") court = "trib";
    else if (court == "corte" || court == "appello") court = "app";
    if (std::regex_search(citation, date, date_re) && std::regex_search(citation, number, number_re)) {
        base = court + "_" + date[3].str() + "_" + number[1].str();
    } else {
        for (char ch : c) {
            bool keep = std::isalnum(static_cast<unsigned char>(ch));
            if (keep) base += ch;
            else if (!base.empty() && base.back() != '_') base += '_';
        }
        while (!base.empty() && base.back() == '_') base.pop_back();
    }
    if (base.empty() || !std::islower(static_cast<unsigned char>(base[0]))) base = "j_" + base;

    std::unordered_set<std::string> used;
    auto note = [&](const Atom& a) {
        if (a.predicate == "using_judgment" && a.args.size() == 1) used.insert(a.args[0].to_string());
    };
    for (const auto& r : kb.rules) {
        if (r.kind == RuleKind::Normal) note(r.head);
        for (const auto& e : r.choice.elements) note(e.atom);
    }
    if (!used.contains(base)) return base;
    for (int k = 2;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (!used.contains(candidate)) return candidate;
    }
}

Program integrate_learned_rule(const Program& kb, const Rule& rule, const JudgmentRecord& judgment,
                               std::string* marker) {
    if (rule.kind != RuleKind::Normal) throw KbError("learned rule " + rule.id + " must have a single head atom");
    if (judgment.citation.empty()) throw KbError("judgment " + judgment.id + " has no citation");
    check_safety(rule);
    if (kb.find(rule.id)) throw DuplicateIdError(rule.id);
    std::string m = marker_for(kb, judgment.citation);

    Rule installed;
    installed.kind = RuleKind::Choice;
    installed.choice.lower = 2;
    installed.choice.upper = 2;
    installed.choice.elements.push_back({rule.head, {}});
    installed.choice.elements.push_back({Atom{"using_judgment", {Term::constant(m)}}, {}});
    installed.body = rule.body;
    installed.annotation = rule.annotation;
    installed.id = rule.id;
    installed.origin = Origin::LearnedJudgment;
    installed.judgment = judgment.id;

    Program out = kb;
    out.rules.push_back(std::move(installed));
    if (marker) *marker = m;
    return out;
}

KnowledgeBase load_kb_dir(const fs::path& root) {
    if (!fs::is_directory(root)) throw KbError("knowledge base directory not found: " + root.string());
    KnowledgeBase kb;
    for (const auto& path : files_with_extension(root / "articles", ".lp")) {
        ArticleSet set;
        set.id = path.stem().string();
        set.program = parse_program_file(path, Origin::Article);
        for (const auto& d : set.program.directives)
            if (d.name == "article") set.articles.push_back(d.argument);
        kb.program.merge(set.program);
        kb.article_sets.push_back(std::move(set));
    }
    for (const auto& path : files_with_extension(root / "judgments", ".case"))
        kb.judgments.push_back(load_judgment(path));

    for (const auto& path : files_with_extension(root / "learned", ".lp")) {
        std::string jid = path.stem().string();
        auto it = std::find_if(kb.judgments.begin(), kb.judgments.end(),
                               [&](const JudgmentRecord& j) { return j.id == jid; });
        if (it == kb.judgments.end()) throw KbError(path.string() + ": no judgment named '" + jid + "'");
        ParseOptions opts;
        opts.source = jid;
        opts.origin = Origin::LearnedJudgment;
        Program learned = parse_program(read_file(path), opts);
        for (const auto& d : learned.directives)
            if (d.name == "specific-over") it->specific_over.push_back(d.argument);
        for (auto rule : learned.rules) {
            rule.judgment = jid;
            it->learned_rules.push_back(rule);
            std::string marker;
            kb.program = integrate_learned_rule(kb.program, rule, *it, &marker);
            kb.markers[marker] = jid;
        }
    }

    fs::path manifest = root / "manifest.json";
    if (fs::exists(manifest)) {
        try {
            auto doc = json::parse(read_file(manifest));
            for (const auto& v : doc.at("verdicts")) {
                auto text = v.get<std::string>();
                auto slash = text.rfind('/');
                if (slash == std::string::npos) throw KbError("manifest verdict '" + text + "' lacks an arity");
                kb.verdicts.push_back({text.substr(0, slash), std::stoul(text.substr(slash + 1))});
            }
        } catch (const json::exception& e) {
            throw KbError(manifest.string() + ": " + e.what());
        }
    }
    return kb;
}

// ---------------------------------------------------------------------------
// Lint
// ---------------------------------------------------------------------------

std::vector<LintFinding> lint_program(const Program& program) {
    std::map<std::string, std::set<std::size_t>> arities;
    auto note = [&](const Atom& a) { arities[a.predicate].insert(a.args.size()); };
    for (const auto& r : program.rules) {
        if (r.kind == RuleKind::Normal) note(r.head);
        for (const auto& e : r.choice.elements) {
            note(e.atom);
            for (const auto& c : e.condition) note(c.atom);
        }
        for (const auto& l : r.body)
            if (!l.is_comparison()) note(l.atom);
    }

    // Names printed that way in the encoded articles.
    static const std::set<std::string> allowed = {"beatings", "injuries", "subtracted", "res"};
    std::vector<LintFinding> out;
    for (const auto& [name, set] : arities) {
        if (set.size() > 1) {
            std::string list;
            for (auto a : set) list += (list.empty() ? "" : ", ") + std::to_string(a);
            out.push_back({LintFinding::Severity::Error, "predicate '" + name + "' is used with arities " + list});
        }
        std::size_t start = 0;
        while (start <= name.size()) {
            auto end = name.find('_', start);
            std::string word = name.substr(start, end == std::string::npos ? std::string::npos : end - start);
            start = end == std::string::npos ? name.size() + 1 : end + 1;
            if (word.size() <= 3 || allowed.contains(word)) continue;
            auto ends = [&](const char* suffix) { return word.ends_with(suffix); };
            if (ends("s") && !ends("ss") && !ends("us") && !ends("is"))
                out.push_back({LintFinding::Severity::Warning,
                               "predicate '" + name + "': '" + word + "' looks plural; nouns are singular"});
            if (ends("ed"))
                out.push_back({LintFinding::Severity::Warning,
                               "predicate '" + name + "': '" + word + "' looks past tense; verbs are singular present"});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Contradictions
// ---------------------------------------------------------------------------

const char* to_string(Maxim m) {
    switch (m) {
        case Maxim::Specialis: return "specialis";
        case Maxim::Superior: return "superior";
        case Maxim::Posterior: return "posterior";
    }
    return "";
}

const char* to_string(Resolution r) {
    switch (r) {
        case Resolution::AWins: return "a-wins";
        case Resolution::BWins: return "b-wins";
        case Resolution::Unresolved: return "unresolved";
    }
    return "";
}

Atom ContradictionFinding::atom() const {
    return Atom{"contradiction", {Term::string(claim_a), Term::string(claim_b), subject}};
}

namespace {

SourceRef source_of(const GroundProgram& g, const Supports& s, AtomId a, const std::vector<JudgmentRecord>& judgments) {
    SourceRef ref;
    if (s.fact[a]) {
        ref.kind = SourceRef::Kind::Fact;
        ref.id = g.atom(a).to_string();
        for (const auto& r : g.rules())
            if (r.is_fact() && r.head == a) {
                ref.rule_id = r.id();
                break;
            }
        return ref;
    }
    const auto& rule = g.rules()[*s.rule[a]];
    ref.rule_id = rule.id();
    if (rule.info && rule.info->origin == Origin::LearnedJudgment && !rule.info->judgment.empty()) {
        ref.kind = SourceRef::Kind::Judgment;
        ref.id = rule.info->judgment;
        for (const auto& j : judgments)
            if (j.id == ref.id) {
                ref.court_level = j.court_level;
                ref.date = j.date;
                ref.specific_over = j.specific_over;
            }
    } else {
        ref.kind = SourceRef::Kind::Article;
        ref.id = rule.id();
    }
    return ref;
}

} // namespace

ContradictionReport detect_contradictions(const Program& kb, const std::vector<Atom>& facts,
                                          const std::vector<JudgmentRecord>& judgments, std::size_t model_limit) {
    Program p = kb;
    auto f = facts_program(facts, "case");
    p.rules.insert(p.rules.end(), f.rules.begin(), f.rules.end());
    auto g = ground_program(p);
    auto models = enumerate_stable_models(g, model_limit);

    ContradictionReport report;
    if (models.empty()) {
        report.consistent = false;
        report.diagnostic = "the knowledge base has no stable model for these facts";
        return report;
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < models.size(); ++k) {
        const auto& m = models[k];
        std::optional<Supports> supports;
        for (AtomId a : m) {
            const Atom& atom = g.atom(a);
            if (atom.predicate != "contradiction" || atom.args.size() != 3) continue;
            auto key = atom.to_string();
            if (auto it = index.find(key); it != index.end()) {
                report.findings[it->second].models.push_back(k);
                continue;
            }
            if (!supports) supports = compute_supports(g, m);
            ContradictionFinding finding;
            finding.claim_a = atom.args[0].to_label();
            finding.claim_b = atom.args[1].to_label();
            finding.subject = atom.args[2];
            finding.models.push_back(k);
            if (supports->fact[a]) {
                finding.diagnostics.push_back("contradiction asserted as a fact; no sources");
            } else {
                const auto& rule = g.rules()[*supports->rule[a]];
                if (rule.positive.size() >= 1) finding.source_a = source_of(g, *supports, rule.positive[0], judgments);
                if (rule.positive.size() >= 2) finding.source_b = source_of(g, *supports, rule.positive[1], judgments);
                if (rule.positive.size() < 2)
                    finding.diagnostics.push_back("contradiction rule " + rule.id() + " has fewer than two positive body atoms");
            }
            auto resolved = resolve_priority(finding);
            resolved.diagnostics.insert(resolved.diagnostics.begin(), finding.diagnostics.begin(),
                                        finding.diagnostics.end());
            index.emplace(key, report.findings.size());
            report.findings.push_back(std::move(resolved));
        }
    }
    return report;
}

ContradictionFinding resolve_priority(const ContradictionFinding& finding) {
    ContradictionFinding out = finding;
    out.applied.clear();
    out.diagnostics.clear();
    out.resolution = Resolution::Unresolved;
    const auto& a = finding.source_a;
    const auto& b = finding.source_b;

    auto declares = [](const SourceRef& x, const SourceRef& y) {
        return !y.id.empty() && std::find(x.specific_over.begin(), x.specific_over.end(), y.id) != x.specific_over.end();
    };
    bool a_spec = declares(a, b);
    bool b_spec = declares(b, a);
    if (a_spec || b_spec) {
        out.applied.insert(Maxim::Specialis);
        if (a_spec && b_spec) {
            out.diagnostics.push_back("both sources declare themselves more specific");
        } else {
            out.resolution = a_spec ? Resolution::AWins : Resolution::BWins;
        }
        return out;
    }

    for (const SourceRef* s : {&a, &b})
        if (!s->court_level || !s->date)
            out.diagnostics.push_back("missing court level or date for source '" + (s->id.empty() ? "?" : s->id) + "'");
    if (!out.diagnostics.empty()) return out;

    std::vector<Resolution> votes;
    if (*a.court_level != *b.court_level) {
        out.applied.insert(Maxim::Superior);
        votes.push_back(*a.court_level > *b.court_level ? Resolution::AWins : Resolution::BWins);
    }
    if (*a.date != *b.date) {
        out.applied.insert(Maxim::Posterior);
        votes.push_back(*a.date > *b.date ? Resolution::AWins : Resolution::BWins);
    }
    if (votes.empty()) {
        out.diagnostics.push_back("no maxim applies");
        return out;
    }
    if (std::all_of(votes.begin(), votes.end(), [&](Resolution r) { return r == votes.front(); }))
        out.resolution = votes.front();
    return out;
}

} // namespace lexasp
