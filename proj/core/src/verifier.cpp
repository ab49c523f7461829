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
#include <lexasp/verifier.hpp>

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace lexasp {

using nlohmann::json;

namespace {

Program with_facts(const Program& kb, const std::vector<Atom>& facts) {
    Program p = kb;
    auto f = facts_program(facts, "case");
    p.rules.insert(p.rules.end(), f.rules.begin(), f.rules.end());
    return p;
}

bool consistent(const Program& p) { return is_consistent(ground_program(p)); }

} // namespace

bool Phase1Result::all_consistent() const { return inconsistent_facts().empty(); }

std::vector<Atom> Phase1Result::inconsistent_facts() const {
    std::vector<Atom> out;
    for (const auto* list : {&individual, &cumulative})
        for (const auto& c : *list)
            if (!c.consistent && std::find(out.begin(), out.end(), c.fact) == out.end()) out.push_back(c.fact);
    return out;
}

Phase1Result check_fact_consistency(const Program& kb, const JudgmentRecord& judgment, bool cumulative) {
    Phase1Result r;
    for (const auto& f : judgment.facts) r.individual.push_back({f, consistent(with_facts(kb, {f}))});
    if (cumulative) {
        std::vector<Atom> prefix;
        for (const auto& f : judgment.facts) {
            prefix.push_back(f);
            r.cumulative.push_back({f, consistent(with_facts(kb, prefix))});
        }
    }
    return r;
}

const char* to_string(Phase2Status s) {
    switch (s) {
        case Phase2Status::Match: return "match";
        case Phase2Status::TooWeak: return "too-weak";
        case Phase2Status::Inconsistent: return "inconsistent";
    }
    return "";
}

Phase2Result check_expected_model(const Program& kb, const JudgmentRecord& judgment, std::size_t model_limit) {
    Program p = with_facts(kb, judgment.facts);
    for (std::size_t i = 0; i < judgment.facts.size(); ++i) {
        Rule d;
        d.kind = RuleKind::Denial;
        d.body.push_back(Literal::negative(judgment.facts[i]));
        d.origin = Origin::UserEvidence;
        d.id = "expect#" + std::to_string(i + 1);
        p.rules.push_back(std::move(d));
    }
    auto g = ground_program(p);
    Phase2Result r;

    // A direct query answers the common case without enumerating.
    if (brave_entails(g, judgment.expected, {})) {
        r.status = Phase2Status::Match;
        r.models = 1;
        return r;
    }
    auto models = enumerate_stable_models(g, model_limit);
    r.models = models.size();
    if (models.empty()) {
        r.status = Phase2Status::Inconsistent;
        return r;
    }
    r.status = Phase2Status::TooWeak;
    std::optional<std::size_t> best;
    for (const auto& m : models) {
        std::vector<Atom> missing;
        for (const auto& a : judgment.expected) {
            auto id = g.find(a);
            if (!id || !std::binary_search(m.begin(), m.end(), *id)) missing.push_back(a);
        }
        if (!best || missing.size() < *best) {
            best = missing.size();
            r.missing = std::move(missing);
        }
    }
    return r;
}

std::vector<std::string> project(const std::vector<Atom>& model, const std::vector<Signature>& verdicts) {
    std::vector<std::string> out;
    for (const auto& a : model)
        if (verdicts.empty() || std::find(verdicts.begin(), verdicts.end(), a.signature()) != verdicts.end())
            out.push_back(a.to_string());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<const SubsetOutcome*> Phase3Result::potential_exceptions() const {
    std::vector<const SubsetOutcome*> out;
    for (const auto& o : outcomes)
        if (o.differs) out.push_back(&o);
    return out;
}

Phase3Result explore_subsets(const Program& kb, const JudgmentRecord& judgment, std::size_t max_gap,
                             const std::vector<Signature>& verdicts, std::size_t model_limit) {
    const auto& facts = judgment.facts;
    const std::size_t n = facts.size();
    Phase3Result r;
    auto solve = [&](const std::vector<std::size_t>& dropped) {
        SubsetOutcome o;
        std::vector<Atom> kept;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(dropped.begin(), dropped.end(), i) != dropped.end()) {
                o.dropped.push_back(facts[i]);
            } else {
                kept.push_back(facts[i]);
            }
        }
        for (const auto& m : solve_program(with_facts(kb, kept), model_limit)) {
            auto p = project(m, verdicts);
            if (std::find(o.scenarios.begin(), o.scenarios.end(), p) == o.scenarios.end()) o.scenarios.push_back(p);
        }
        std::sort(o.scenarios.begin(), o.scenarios.end());
        return o;
    };

    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
        if (left == 0) {
            auto o = solve(chosen);
            o.differs = !r.outcomes.empty() && o.scenarios != r.outcomes.front().scenarios;
            r.outcomes.push_back(std::move(o));
            ++r.examined;
            return;
        }
        for (std::size_t i = from; i < n; ++i) {
            chosen.push_back(i);
            rec(i + 1, left - 1);
            chosen.pop_back();
        }
    };
    for (std::size_t k = 0; k <= std::min(max_gap, n); ++k) rec(0, k);
    return r;
}

Program add_evidence_constraint(const Program& kb, Rule constraint) {
    if (constraint.kind != RuleKind::Denial) throw KbError("evidence constraints must be denials (`:- body.`)");
    check_safety(constraint);
    constraint.origin = Origin::UserEvidence;
    if (constraint.id.empty() || kb.find(constraint.id)) {
        for (std::size_t k = 1;; ++k) {
            std::string id = "evidence#" + std::to_string(k);
            if (!kb.find(id)) {
                constraint.id = id;
                break;
            }
        }
    }
    Program out = kb;
    out.rules.push_back(std::move(constraint));
    return out;
}

const char* to_string(Diagnosis d) {
    switch (d) {
        case Diagnosis::Ok: return "ok";
        case Diagnosis::TooRestrictive: return "too-restrictive";
        case Diagnosis::TooWeak: return "too-weak";
    }
    return "";
}

RefinementReport verify_case(const Program& kb, const JudgmentRecord& judgment, const std::vector<Signature>& verdicts,
                             const VerifyOptions& options) {
    RefinementReport r;
    r.case_id = judgment.id;
    r.phase1 = check_fact_consistency(kb, judgment, options.cumulative);
    r.phase2 = check_expected_model(kb, judgment);
    if (options.subset_gap) r.phase3 = explore_subsets(kb, judgment, *options.subset_gap, verdicts);
    if (!r.phase1.all_consistent() || r.phase2.status == Phase2Status::Inconsistent) {
        r.diagnosis = Diagnosis::TooRestrictive;
    } else if (r.phase2.status != Phase2Status::Match) {
        r.diagnosis = Diagnosis::TooWeak;
    }
    return r;
}

namespace {

json atoms_json(const std::vector<Atom>& atoms) {
    json out = json::array();
    for (const auto& a : atoms) out.push_back(a.to_string());
    return out;
}

json checks_json(const std::vector<FactCheck>& checks) {
    json out = json::array();
    for (const auto& c : checks) out.push_back({{"fact", c.fact.to_string()}, {"consistent", c.consistent}});
    return out;
}

} // namespace

std::string RefinementReport::to_json() const {
    json doc;
    doc["schema"] = "lexasp.refinement/1";
    doc["case"] = case_id;
    doc["phase1"] = {{"individual", checks_json(phase1.individual)},
                     {"cumulative", checks_json(phase1.cumulative)},
                     {"inconsistent", atoms_json(phase1.inconsistent_facts())}};
    doc["phase2"] = {{"status", lexasp::to_string(phase2.status)},
                     {"missing", atoms_json(phase2.missing)},
                     {"models", phase2.models}};
    if (phase3) {
        json outcomes = json::array();
        for (const auto& o : phase3->outcomes)
            outcomes.push_back({{"dropped", atoms_json(o.dropped)}, {"scenarios", o.scenarios}, {"differs", o.differs}});
        doc["phase3"] = {{"examined", phase3->examined}, {"outcomes", outcomes}};
    }
    doc["diagnosis"] = lexasp::to_string(diagnosis);
    return doc.dump(2);
}

std::string RefinementReport::summary() const {
    std::ostringstream out;
    out << case_id << ": " << lexasp::to_string(diagnosis) << "\n";
    std::size_t ok = 0;
    for (const auto& c : phase1.individual) ok += c.consistent;
    out << "  phase 1: " << ok << "/" << phase1.individual.size() << " facts individually consistent";
    if (!phase1.cumulative.empty()) {
        std::size_t cum = 0;
        for (const auto& c : phase1.cumulative) cum += c.consistent;
        out << ", " << cum << "/" << phase1.cumulative.size() << " prefixes consistent";
    }
    out << "\n  phase 2: " << lexasp::to_string(phase2.status);
    if (!phase2.missing.empty()) {
        out << " (missing:";
        for (const auto& a : phase2.missing) out << " " << a.to_string();
        out << ")";
    }
    out << "\n";
    if (phase3) {
        auto ex = phase3->potential_exceptions();
        out << "  phase 3: " << phase3->examined << " subsets examined, " << ex.size() << " potential exceptions\n";
        for (const auto* o : ex) {
            out << "    without";
            for (const auto& a : o->dropped) out << " " << a.to_string();
            out << ": " << o->scenarios.size() << " verdict scenario(s)\n";
        }
    }
    return out.str();
}

} // namespace lexasp
