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

#ifndef LEXASP_GROUNDER_HPP
#define LEXASP_GROUNDER_HPP

#include <lexasp/syntax.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexasp {

using AtomId = std::uint32_t;

// Variable name -> ground term, in the rule's first-occurrence order.
using Binding = std::vector<std::pair<std::string, Term>>;

// Provenance shared by all ground instances of one source rule.
struct RuleInfo {
    std::string id;
    Origin origin = Origin::Article;
    std::optional<std::string> annotation;
    std::string judgment;
};

struct GroundRule {
    RuleKind kind = RuleKind::Normal;
    AtomId head = 0;                // Normal
    std::vector<AtomId> elements;   // Choice
    int lower = 0;                  // Choice
    int upper = 0;                  // Choice
    std::vector<AtomId> positive;
    std::vector<AtomId> negative;
    std::shared_ptr<const RuleInfo> info;
    Binding binding;
    // Choice only: condition-local variables of each element.
    std::vector<Binding> element_bindings;

    bool is_fact() const noexcept { return kind == RuleKind::Normal && positive.empty() && negative.empty(); }
    const std::string& id() const;
};

// Variable-free program. Atoms are interned in `atoms`, sorted by their text;
// AtomId is the index into that vector.
class GroundProgram {
public:
    GroundProgram() = default;
    GroundProgram(std::vector<Atom> atoms, std::vector<GroundRule> rules);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::vector<GroundRule>& rules() const noexcept { return rules_; }
    const Atom& atom(AtomId id) const { return atoms_.at(id); }
    std::size_t size() const noexcept { return atoms_.size(); }

    std::optional<AtomId> find(const Atom& atom) const;
    std::optional<AtomId> find(const std::string& text) const;

    std::string rule_text(const GroundRule& rule) const;
    // Re-renders the ground rules as a Program (ids `<source-id>/<n>`).
    Program to_program() const;
    std::string to_string() const;

private:
    std::vector<Atom> atoms_;
    std::vector<GroundRule> rules_;
    std::unordered_map<std::string, AtomId> index_;
};

// Instantiates `program` into an equivalent ground program. Rule instances
// whose positive body cannot be derived are omitted; comparison literals
// are evaluated and removed. Throws GroundingError when a choice condition
// mentions a predicate that is not defined by facts only.
GroundProgram ground_program(const Program& program);

// Element atoms of a choice head whose body variables are already
// substituted, one per instantiation of each element's condition over
// `facts`. Throws GroundingError if `program` is given and defines a
// condition predicate with a non-fact rule.
std::vector<Atom> expand_conditional_choice(const ChoiceHead& head, const std::vector<Atom>& facts,
                                            const Program* program = nullptr);

// Applies a binding to an atom; unbound variables are kept.
Atom substitute(const Atom& atom, const Binding& binding);

} // namespace lexasp

#endif
