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

// Abstract syntax of the supported ASP subset: normal rules, denials and
// bounded choice rules over function-free atoms.

#ifndef LEXASP_SYNTAX_HPP
#define LEXASP_SYNTAX_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lexasp {

enum class TermKind { Integer, Constant, String, Variable };

struct Term {
    TermKind kind = TermKind::Constant;
    // Symbol name, variable name or unquoted string contents. Empty for integers.
    std::string text;
    std::int64_t number = 0;

    static Term integer(std::int64_t value);
    static Term constant(std::string name);
    static Term string(std::string value);
    static Term variable(std::string name);

    bool is_variable() const noexcept { return kind == TermKind::Variable; }
    std::string to_string() const;
    // Label form: strings without quotes, used when filling annotation templates.
    std::string to_label() const;

    friend bool operator==(const Term&, const Term&) = default;
};

// Total order used by comparison literals: integers by value, then constant
// symbols, then quoted strings; lexicographic within a class.
std::strong_ordering compare_terms(const Term& lhs, const Term& rhs);

struct Signature {
    std::string name;
    std::size_t arity = 0;

    std::string to_string() const;
    friend auto operator<=>(const Signature&, const Signature&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    Signature signature() const { return {predicate, args.size()}; }
    bool is_ground() const;
    std::string to_string() const;

    friend bool operator==(const Atom&, const Atom&) = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* to_string(CompareOp op);
bool evaluate(CompareOp op, const Term& lhs, const Term& rhs);

struct Comparison {
    Term lhs;
    CompareOp op = CompareOp::Eq;
    Term rhs;

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

enum class LiteralKind { Positive, Negative, Comparison };

struct Literal {
    LiteralKind kind = LiteralKind::Positive;
    Atom atom;       // Positive / Negative
    Comparison cmp;  // Comparison

    static Literal positive(Atom a);
    static Literal negative(Atom a);
    static Literal compare(Term lhs, CompareOp op, Term rhs);

    bool is_positive() const noexcept { return kind == LiteralKind::Positive; }
    bool is_negative() const noexcept { return kind == LiteralKind::Negative; }
    bool is_comparison() const noexcept { return kind == LiteralKind::Comparison; }
    std::string to_string() const;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct ChoiceElement {
    Atom atom;
    // Positive atoms over fact-defined predicates.
    std::vector<Literal> condition;

    friend bool operator==(const ChoiceElement&, const ChoiceElement&) = default;
};

struct ChoiceHead {
    int lower = 0;
    // Absent means "number of elements", resolved at grounding time.
    std::optional<int> upper;
    std::vector<ChoiceElement> elements;

    friend bool operator==(const ChoiceHead&, const ChoiceHead&) = default;
};

enum class RuleKind { Normal, Denial, Choice };

enum class Origin { Article, LearnedJudgment, UserEvidence };

const char* to_string(Origin origin);

struct Rule {
    RuleKind kind = RuleKind::Normal;
    Atom head;          // Normal
    ChoiceHead choice;  // Choice
    std::vector<Literal> body;
    std::optional<std::string> annotation;
    std::string id;
    Origin origin = Origin::Article;
    // Judgment id for rules with origin LearnedJudgment.
    std::string judgment;

    bool is_fact() const noexcept { return kind == RuleKind::Normal && body.empty(); }
    // Head atom (or choice elements) plus body literals.
    std::size_t length() const noexcept;
    // Rendering with the rule's own variable names.
    std::string to_string() const;
};

// Kind, head, choice head and body are equal; id, annotation and origin are ignored.
bool structurally_equal(const Rule& lhs, const Rule& rhs);

// Deterministic text: variables renamed V1, V2, ... by first occurrence
// (head, then body, in source order). Alpha-variants render identically.
std::string canonical_text(const Rule& rule);

// Returns a copy of `rule` with its variables renamed as in canonical_text.
Rule normalize_variables(const Rule& rule);

// Variables of `rule` in first-occurrence order.
std::vector<std::string> variables_of(const Rule& rule);

// Throws SafetyError naming the first unsafe variable.
void check_safety(const Rule& rule);

// A `%#name argument` line recorded while parsing.
struct Directive {
    std::string name;
    std::string argument;
    std::size_t line = 0;
};

struct Program {
    std::vector<Rule> rules;
    std::vector<Directive> directives;

    const Rule* find(const std::string& id) const;
    // Rule id -> annotation template, for every annotated rule or fact.
    std::map<std::string, std::string> annotations() const;
    // Appends the rules of `other`; throws DuplicateIdError on an id clash.
    void merge(const Program& other);
    std::string to_string() const;
};

} // namespace lexasp

#endif
