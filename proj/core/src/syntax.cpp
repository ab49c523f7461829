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
#include <lexasp/syntax.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lexasp {

SyntaxError::SyntaxError(const std::string& source, std::size_t line, std::size_t column,
                         const std::string& what)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line), column_(column) {}

SafetyError::SafetyError(const std::string& rule_id, const std::string& variable)
    : Error("unsafe variable " + variable + " in rule " + rule_id), variable_(variable) {}

DuplicateIdError::DuplicateIdError(const std::string& id) : Error("duplicate rule id " + id), id_(id) {}

// ---------------------------------------------------------------------------
// Terms and atoms
// ---------------------------------------------------------------------------

Term Term::integer(std::int64_t value) {
    Term t;
    t.kind = TermKind::Integer;
    t.number = value;
    return t;
}

Term Term::constant(std::string name) {
    Term t;
    t.kind = TermKind::Constant;
    t.text = std::move(name);
    return t;
}

Term Term::string(std::string value) {
    Term t;
    t.kind = TermKind::String;
    t.text = std::move(value);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind = TermKind::Variable;
    t.text = std::move(name);
    return t;
}

std::string Term::to_string() const {
    switch (kind) {
        case TermKind::Integer: return std::to_string(number);
        case TermKind::String: {
            std::string out = "\"";
            for (char c : text) {
                if (c == '"' || c == '\\') out.push_back('\\');
                if (c == '\n') {
                    out += "\\n";
                    continue;
                }
                out.push_back(c);
            }
            out.push_back('"');
            return out;
        }
        default: return text;
    }
}

std::string Term::to_label() const {
    return kind == TermKind::String ? text : to_string();
}

namespace {
int term_class(TermKind k) {
    switch (k) {
        case TermKind::Integer: return 0;
        case TermKind::Constant: return 1;
        case TermKind::String: return 2;
        case TermKind::Variable: return 3;
    }
    return 3;
}
} // namespace

std::strong_ordering compare_terms(const Term& lhs, const Term& rhs) {
    int lc = term_class(lhs.kind);
    int rc = term_class(rhs.kind);
    if (lc != rc) return lc <=> rc;
    if (lhs.kind == TermKind::Integer) return lhs.number <=> rhs.number;
    int c = lhs.text.compare(rhs.text);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string Signature::to_string() const { return name + "/" + std::to_string(arity); }

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::string Atom::to_string() const {
    if (args.empty()) return predicate;
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out.push_back(',');
        out += args[i].to_string();
    }
    out.push_back(')');
    return out;
}

const char* to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

bool evaluate(CompareOp op, const Term& lhs, const Term& rhs) {
    auto c = compare_terms(lhs, rhs);
    switch (op) {
        case CompareOp::Eq: return c == 0;
        case CompareOp::Ne: return c != 0;
        case CompareOp::Lt: return c < 0;
        case CompareOp::Le: return c <= 0;
        case CompareOp::Gt: return c > 0;
        case CompareOp::Ge: return c >= 0;
    }
    return false;
}

Literal Literal::positive(Atom a) {
    Literal l;
    l.kind = LiteralKind::Positive;
    l.atom = std::move(a);
    return l;
}

Literal Literal::negative(Atom a) {
    Literal l;
    l.kind = LiteralKind::Negative;
    l.atom = std::move(a);
    return l;
}

Literal Literal::compare(Term lhs, CompareOp op, Term rhs) {
    Literal l;
    l.kind = LiteralKind::Comparison;
    l.cmp = Comparison{std::move(lhs), op, std::move(rhs)};
    return l;
}

std::string Literal::to_string() const {
    switch (kind) {
        case LiteralKind::Positive: return atom.to_string();
        case LiteralKind::Negative: return "not " + atom.to_string();
        case LiteralKind::Comparison:
            return cmp.lhs.to_string() + " " + lexasp::to_string(cmp.op) + " " + cmp.rhs.to_string();
    }
    return {};
}

const char* to_string(Origin origin) {
    switch (origin) {
        case Origin::Article: return "article";
        case Origin::LearnedJudgment: return "learned-judgment";
        case Origin::UserEvidence: return "user-evidence";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

std::size_t Rule::length() const noexcept {
    switch (kind) {
        case RuleKind::Normal: return 1 + body.size();
        case RuleKind::Denial: return body.size();
        case RuleKind::Choice: return choice.elements.size() + body.size();
    }
    return body.size();
}

std::string Rule::to_string() const {
    std::string out;
    switch (kind) {
        case RuleKind::Normal: out = head.to_string(); break;
        case RuleKind::Denial: break;
        case RuleKind::Choice: {
            out = std::to_string(choice.lower) + "{";
            for (std::size_t i = 0; i < choice.elements.size(); ++i) {
                const auto& e = choice.elements[i];
                if (i) out.push_back(';');
                out += e.atom.to_string();
                for (std::size_t j = 0; j < e.condition.size(); ++j) {
                    out.push_back(j ? ',' : ':');
                    out += e.condition[j].to_string();
                }
            }
            out.push_back('}');
            if (choice.upper) out += std::to_string(*choice.upper);
            break;
        }
    }
    if (!body.empty() || kind == RuleKind::Denial) {
        out += kind == RuleKind::Denial ? ":- " : " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) out += ", ";
            out += body[i].to_string();
        }
    }
    out.push_back('.');
    return out;
}

bool structurally_equal(const Rule& lhs, const Rule& rhs) {
    if (lhs.kind != rhs.kind || lhs.body != rhs.body) return false;
    switch (lhs.kind) {
        case RuleKind::Normal: return lhs.head == rhs.head;
        case RuleKind::Choice: return lhs.choice == rhs.choice;
        case RuleKind::Denial: return true;
    }
    return false;
}

namespace {

template <class Fn>
void for_each_term(Rule& rule, Fn&& fn) {
    auto atom = [&](Atom& a) {
        for (auto& t : a.args) fn(t);
    };
    auto literal = [&](Literal& l) {
        if (l.is_comparison()) {
            fn(l.cmp.lhs);
            fn(l.cmp.rhs);
        } else {
            atom(l.atom);
        }
    };
    if (rule.kind == RuleKind::Normal) atom(rule.head);
    if (rule.kind == RuleKind::Choice) {
        for (auto& e : rule.choice.elements) {
            atom(e.atom);
            for (auto& c : e.condition) literal(c);
        }
    }
    for (auto& l : rule.body) literal(l);
}

void collect_atom_vars(const Atom& a, std::set<std::string>& out) {
    for (const auto& t : a.args)
        if (t.is_variable()) out.insert(t.text);
}

void collect_literal_vars(const Literal& l, std::set<std::string>& out) {
    if (l.is_comparison()) {
        if (l.cmp.lhs.is_variable()) out.insert(l.cmp.lhs.text);
        if (l.cmp.rhs.is_variable()) out.insert(l.cmp.rhs.text);
    } else {
        collect_atom_vars(l.atom, out);
    }
}

} // namespace

std::vector<std::string> variables_of(const Rule& rule) {
    std::vector<std::string> order;
    std::unordered_set<std::string> seen;
    Rule copy = rule;
    for_each_term(copy, [&](Term& t) {
        if (t.is_variable() && seen.insert(t.text).second) order.push_back(t.text);
    });
    return order;
}

Rule normalize_variables(const Rule& rule) {
    Rule copy = rule;
    std::unordered_map<std::string, std::string> renaming;
    for_each_term(copy, [&](Term& t) {
        if (!t.is_variable()) return;
        auto [it, inserted] = renaming.try_emplace(t.text, "");
        if (inserted) it->second = "V" + std::to_string(renaming.size());
        t.text = it->second;
    });
    return copy;
}

std::string canonical_text(const Rule& rule) { return normalize_variables(rule).to_string(); }

void check_safety(const Rule& rule) {
    std::set<std::string> bound;
    for (const auto& l : rule.body)
        if (l.is_positive()) collect_atom_vars(l.atom, bound);

    auto require = [&](const std::set<std::string>& vars, const std::set<std::string>& allowed) {
        for (const auto& v : vars)
            if (!allowed.contains(v)) throw SafetyError(rule.id, v);
    };

    std::set<std::string> used;
    for (const auto& l : rule.body) collect_literal_vars(l, used);
    if (rule.kind == RuleKind::Normal) collect_atom_vars(rule.head, used);
    require(used, bound);

    if (rule.kind == RuleKind::Choice) {
        for (const auto& e : rule.choice.elements) {
            std::set<std::string> local = bound;
            for (const auto& c : e.condition)
                if (c.is_positive()) collect_atom_vars(c.atom, local);
            std::set<std::string> element_vars;
            collect_atom_vars(e.atom, element_vars);
            for (const auto& c : e.condition) collect_literal_vars(c, element_vars);
            require(element_vars, local);
        }
    }
}

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

const Rule* Program::find(const std::string& id) const {
    auto it = std::find_if(rules.begin(), rules.end(), [&](const Rule& r) { return r.id == id; });
    return it == rules.end() ? nullptr : &*it;
}

std::map<std::string, std::string> Program::annotations() const {
    std::map<std::string, std::string> out;
    for (const auto& r : rules)
        if (r.annotation) out.emplace(r.id, *r.annotation);
    return out;
}

void Program::merge(const Program& other) {
    std::unordered_set<std::string> ids;
    ids.reserve(rules.size() + other.rules.size());
    for (const auto& r : rules) ids.insert(r.id);
    for (const auto& r : other.rules)
        if (!ids.insert(r.id).second) throw DuplicateIdError(r.id);
    rules.insert(rules.end(), other.rules.begin(), other.rules.end());
    directives.insert(directives.end(), other.directives.begin(), other.directives.end());
}

std::string Program::to_string() const {
    std::ostringstream out;
    for (const auto& r : rules) out << r.to_string() << '\n';
    return out.str();
}

} // namespace lexasp
