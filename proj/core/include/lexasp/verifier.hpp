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

// Static model verification of a knowledge base against judgment cases.

#ifndef LEXASP_VERIFIER_HPP
#define LEXASP_VERIFIER_HPP

#include <lexasp/kb.hpp>
#include <lexasp/solver.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lexasp {

struct FactCheck {
    Atom fact;
    bool consistent = true;
};

struct Phase1Result {
    // kb ∪ {A_i} for each fact.
    std::vector<FactCheck> individual;
    // kb ∪ {A_1..A_i} for each prefix; empty unless requested.
    std::vector<FactCheck> cumulative;

    bool all_consistent() const;
    std::vector<Atom> inconsistent_facts() const;
};

Phase1Result check_fact_consistency(const Program& kb, const JudgmentRecord& judgment, bool cumulative = true);

enum class Phase2Status { Match, TooWeak, Inconsistent };

const char* to_string(Phase2Status s);

struct Phase2Result {
    Phase2Status status = Phase2Status::Match;
    // Expected atoms missing from the closest model.
    std::vector<Atom> missing;
    std::size_t models = 0;
};

// kb ∪ facts ∪ {:- not A_j.}; matches when some model contains every
// expected atom.
Phase2Result check_expected_model(const Program& kb, const JudgmentRecord& judgment, std::size_t model_limit = 10000);

struct SubsetOutcome {
    std::vector<Atom> dropped;
    // Each scenario projected on the verdict predicates, as sorted atom texts.
    std::vector<std::vector<std::string>> scenarios;
    bool differs = false;
};

struct Phase3Result {
    std::size_t examined = 0;
    std::vector<SubsetOutcome> outcomes;  // one per examined subset, the full case first

    std::vector<const SubsetOutcome*> potential_exceptions() const;
};

// Solves every subset of the case facts that drops at most `max_gap` facts.
Phase3Result explore_subsets(const Program& kb, const JudgmentRecord& judgment, std::size_t max_gap,
                             const std::vector<Signature>& verdicts, std::size_t model_limit = 256);

// Projection of one model on the verdict signatures (all atoms when empty).
std::vector<std::string> project(const std::vector<Atom>& model, const std::vector<Signature>& verdicts);

// Appends a denial with origin user-evidence. Throws KbError for anything
// else.
Program add_evidence_constraint(const Program& kb, Rule constraint);

enum class Diagnosis { Ok, TooRestrictive, TooWeak };

const char* to_string(Diagnosis d);

struct RefinementReport {
    std::string case_id;
    Phase1Result phase1;
    Phase2Result phase2;
    std::optional<Phase3Result> phase3;
    Diagnosis diagnosis = Diagnosis::Ok;

    bool passes_gate() const { return diagnosis == Diagnosis::Ok; }
    std::string to_json() const;
    std::string summary() const;
};

struct VerifyOptions {
    bool cumulative = true;
    std::optional<std::size_t> subset_gap;  // phase 3 runs only when set
};

RefinementReport verify_case(const Program& kb, const JudgmentRecord& judgment, const std::vector<Signature>& verdicts,
                             const VerifyOptions& options = {});

} // namespace lexasp

#endif
