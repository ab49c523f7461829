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

#ifndef LEXASP_SOLVER_HPP
#define LEXASP_SOLVER_HPP

#include <lexasp/grounder.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lexasp {

// A stable model as sorted atom ids. Since ids follow atom text order, the
// id order is also the textual order.
using Model = std::vector<AtomId>;

struct DefiniteRule {
    AtomId head = 0;
    std::vector<AtomId> body;

    friend bool operator==(const DefiniteRule&, const DefiniteRule&) = default;
};

// Gelfond-Lifschitz reduct, extended to choice rules: an applicable choice
// rule contributes `a :- B+` for each of its elements a in `candidate`.
// Denials contribute nothing.
std::vector<DefiniteRule> reduct(const GroundProgram& program, const Model& candidate);

// Least fixpoint of the immediate-consequence operator; sorted.
Model least_model(std::size_t atom_count, const std::vector<DefiniteRule>& rules);

bool is_stable(const GroundProgram& program, const Model& candidate);

// Lazily enumerates stable models in lexicographic order over the atom order,
// false before true. Fixed assumptions restrict the search to models that
// agree with them.
class ModelEnumerator {
public:
    explicit ModelEnumerator(const GroundProgram& program,
                             std::vector<std::pair<AtomId, bool>> assumptions = {});

    std::optional<Model> next();
    // Total assignments passed to the stability check so far.
    std::size_t candidates_checked() const noexcept { return checked_; }

private:
    enum class Value : signed char { False = 0, True = 1, Unknown = 2 };
    struct Frame {
        std::size_t trail_size;
        AtomId atom;
        bool tried_true;
    };

    bool assign(AtomId atom, bool value);
    bool propagate();
    bool process_rule(std::size_t r);
    bool check_support(AtomId atom);
    bool backtrack();
    void undo(std::size_t trail_size);

    const GroundProgram& program_;
    std::vector<std::pair<AtomId, bool>> assumptions_;
    std::vector<Value> values_;
    std::vector<AtomId> trail_;
    std::vector<Frame> frames_;
    std::vector<std::size_t> queue_;
    std::vector<char> queued_;
    // Occurrences of each atom: rules mentioning it anywhere, and rules that
    // may derive it (normal heads and choice elements).
    std::vector<std::vector<std::size_t>> occurs_;
    std::vector<std::vector<std::size_t>> supports_;
    bool started_ = false;
    bool exhausted_ = false;
    std::size_t checked_ = 0;
};

std::vector<Model> enumerate_stable_models(const GroundProgram& program,
                                           std::optional<std::size_t> limit = std::nullopt);

// Exhaustive oracle: tests every subset of the Herbrand base with is_stable.
// Throws std::invalid_argument above `max_atoms` atoms.
std::vector<Model> enumerate_by_subsets(const GroundProgram& program, std::size_t max_atoms = 20);

bool is_consistent(const GroundProgram& program);

// Some stable model contains all inclusions and no exclusion.
bool brave_entails(const GroundProgram& program, const std::vector<Atom>& inclusions,
                   const std::vector<Atom>& exclusions);

// The program is consistent and every stable model contains all inclusions
// and no exclusion.
bool cautious_entails(const GroundProgram& program, const std::vector<Atom>& inclusions,
                      const std::vector<Atom>& exclusions);

std::vector<Atom> model_atoms(const GroundProgram& program, const Model& model);

// Atoms space-separated, in sorted order.
std::string format_model(const GroundProgram& program, const Model& model);

// Grounds and solves; each model as its atoms.
std::vector<std::vector<Atom>> solve_program(const Program& program,
                                             std::optional<std::size_t> limit = std::nullopt);

} // namespace lexasp

#endif
