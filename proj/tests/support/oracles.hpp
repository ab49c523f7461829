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

// Brute-force reference implementations. They share only the syntax types
// with the library: instantiation, reducts, models and hypothesis search are
// written out naively here.

#ifndef LEXASP_TESTS_ORACLES_HPP
#define LEXASP_TESTS_ORACLES_HPP

#include <lexasp/learner.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lexasp::testing {

using AtomSet = std::set<std::string>;
using ModelSet = std::set<AtomSet>;

// Every rule instantiated with every assignment of its variables over the
// constants of the program. Comparisons are evaluated and dropped. Choice
// element conditions are not supported.
Program naive_instantiate(const Program& program);

// Stable models by checking every subset of the atoms that occur in a rule
// head. `program` must be ground. Throws if more than `max_guess` head atoms.
ModelSet brute_force_models(const Program& ground, std::size_t max_guess = 20);

// naive_instantiate + brute_force_models.
ModelSet oracle_models(const Program& program, std::size_t max_guess = 20);

// Converts library output to the oracle representation.
ModelSet to_model_set(const std::vector<std::vector<Atom>>& models);

// Brave coverage for positive examples, no witness for negative ones.
bool oracle_covers(const Program& background, const std::vector<Rule>& hypothesis, const ExampleSource& example);

struct OracleHypothesis {
    std::vector<std::size_t> members;
    std::size_t total_length = 0;
};

// Minimum total length over all subsets of the space that cover every
// example, with all optimal subsets.
struct PowersetResult {
    std::optional<std::size_t> best_length;
    std::vector<OracleHypothesis> optimal;
};

PowersetResult powerset_learn(const Program& background, const HypothesisSpace& space,
                              const std::vector<ExampleSource>& examples);

// Every subset of the space; H is accepted when B ∪ H has a stable model and
// every model contains e_plus and avoids e_minus.
PowersetResult cautious_oracle_learn(const Program& background, const HypothesisSpace& space,
                                     const std::vector<Atom>& e_plus, const std::vector<Atom>& e_minus);

bool cautious_oracle_accepts(const Program& background, const std::vector<Rule>& hypothesis,
                             const std::vector<Atom>& e_plus, const std::vector<Atom>& e_minus);

} // namespace lexasp::testing

#endif
