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

#ifndef LEXASP_LEARNER_HPP
#define LEXASP_LEARNER_HPP

#include <lexasp/solver.hpp>
#include <lexasp/task.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lexasp {

enum class Provenance { Explicit, ModeGenerated };

struct Candidate {
    Rule rule;
    std::size_t length = 0;
    Provenance provenance = Provenance::Explicit;
};

struct HypothesisSpace {
    std::vector<Candidate> candidates;

    std::size_t size() const noexcept { return candidates.size(); }
};

struct SpaceOptions {
    std::size_t cap = 1'000'000;
    int default_maxv = 3;
};

// Explicit candidates first, then mode-generated ones. Mode-generated rules
// carry one `t(V)` guard per variable of type t and at least one modeb
// literal; rules equal up to variable renaming, body order and the argument
// order of symmetric schemas are kept once. Throws LearningError on an empty
// space or when the cap is exceeded.
HypothesisSpace generate_hypothesis_space(const std::vector<ModeDecl>& modes, std::optional<int> maxv,
                                          const std::map<std::string, std::vector<Term>>& constants,
                                          const std::vector<ExplicitCandidate>& explicit_rules,
                                          const SpaceOptions& options = {});

HypothesisSpace generate_hypothesis_space(const LearningTaskSource& task, const SpaceOptions& options = {});

// Renaming- and order-insensitive key used to deduplicate the space.
std::string candidate_key(const Rule& rule, const std::set<std::string>& symmetric_predicates = {});

struct Hypothesis {
    std::vector<std::size_t> members;  // indices into the space, ascending
    std::vector<Rule> rules;
    std::size_t total_length = 0;

    // Sorted canonical texts of the members; the tie-break order.
    std::vector<std::string> sort_key() const;
    std::string to_string() const;
};

Hypothesis make_hypothesis(const HypothesisSpace& space, std::vector<std::size_t> members);

// Background, hypothesis rules and context as one program.
Program combine(const Program& background, const std::vector<Rule>& hypothesis, const Program& context = {});

bool covers(const Program& background, const std::vector<Rule>& hypothesis, const ExampleSource& example);

struct CoverageResult {
    std::vector<bool> covered;                // per example
    std::vector<std::optional<std::vector<Atom>>> witness;  // positive examples only
};

CoverageResult check_coverage(const Program& background, const std::vector<Rule>& hypothesis,
                              const std::vector<ExampleSource>& examples);

struct StageTiming {
    std::string name;
    double seconds = 0;
};

struct StageReport {
    std::size_t space_size = 0;
    std::size_t pruned = 0;
    std::size_t hypotheses_checked = 0;
    std::size_t coverage_checks = 0;
    std::vector<StageTiming> stages;

    static const std::vector<std::string>& stage_names();
    std::string to_string() const;
};

struct LearnResult {
    std::optional<Hypothesis> hypothesis;  // empty when unsatisfiable
    HypothesisSpace space;
    StageReport report;
};

struct LearnOptions {
    SpaceOptions space;
    // Upper bound on the total length explored; 0 means the whole space.
    std::size_t max_total_length = 0;
};

// Minimal total length; ties broken by Hypothesis::sort_key.
LearnResult learn_optimal(const LearningTaskSource& task, const LearnOptions& options = {});

LearnResult learn_optimal(const Program& background, const HypothesisSpace& space,
                          const std::vector<ExampleSource>& examples, const LearnOptions& options = {});

// Reference search over every subset of the space. Throws
// std::invalid_argument above `max_space` candidates.
std::optional<Hypothesis> learn_exhaustive(const Program& background, const HypothesisSpace& space,
                                           const std::vector<ExampleSource>& examples,
                                           std::size_t max_space = 16);

struct CautiousOptions {
    // Accept H when B ∪ H has no stable model at all.
    bool allow_inconsistent = false;
};

// Subsets in order of increasing total length (ties by sort key); the first
// H for which every stable model of B ∪ H contains e_plus and avoids e_minus.
std::optional<Hypothesis> cautious_learn(const Program& background, const HypothesisSpace& space,
                                         const std::vector<Atom>& e_plus, const std::vector<Atom>& e_minus,
                                         const CautiousOptions& options = {});

} // namespace lexasp

#endif
