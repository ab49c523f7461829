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

#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace lexasp::testing {

namespace {

void collect_terms(const Atom& a, std::vector<Term>& out) {
    for (const auto& t : a.args)
        if (!t.is_variable()) out.push_back(t);
}

void collect_vars(const Atom& a, std::vector<std::string>& out) {
    for (const auto& t : a.args)
        if (t.is_variable()) out.push_back(t.text);
}

Term substitute_in(const Term& t, const std::map<std::string, Term>& s) {
    if (!t.is_variable()) return t;
    return s.at(t.text);
}

Atom substitute_in(const Atom& a, const std::map<std::string, Term>& s) {
    Atom out{a.predicate, {}};
    for (const auto& t : a.args) out.args.push_back(substitute_in(t, s));
    return out;
}

// Only the comparisons the generators produce, plus integer ordering.
bool holds(const Term& l, CompareOp op, const Term& r) {
    if (op == CompareOp::Eq) return l == r;
    if (op == CompareOp::Ne) return !(l == r);
    if (l.kind != TermKind::Integer || r.kind != TermKind::Integer)
        throw std::logic_error("oracle compares integers only");
    switch (op) {
        case CompareOp::Lt: return l.number < r.number;
        case CompareOp::Le: return l.number <= r.number;
        case CompareOp::Gt: return l.number > r.number;
        case CompareOp::Ge: return l.number >= r.number;
        default: return false;
    }
}

struct PropRule {
    RuleKind kind = RuleKind::Normal;
    std::vector<std::string> heads;  // one for normal rules, the elements for choices
    int lower = 0;
    int upper = 0;
    std::vector<std::string> pos;
    std::vector<std::string> neg;
};

std::vector<PropRule> propositional(const Program& ground) {
    std::vector<PropRule> out;
    for (const auto& r : ground.rules) {
        PropRule p;
        p.kind = r.kind;
        if (r.kind == RuleKind::Normal) p.heads.push_back(r.head.to_string());
        if (r.kind == RuleKind::Choice) {
            for (const auto& e : r.choice.elements) {
                if (!e.condition.empty()) throw std::logic_error("oracle needs unconditional choice elements");
                auto text = e.atom.to_string();
                if (std::find(p.heads.begin(), p.heads.end(), text) == p.heads.end()) p.heads.push_back(text);
            }
            p.lower = r.choice.lower;
            p.upper = r.choice.upper.value_or(static_cast<int>(p.heads.size()));
        }
        for (const auto& l : r.body) {
            if (l.is_comparison()) throw std::logic_error("oracle needs comparison-free ground rules");
            (l.is_positive() ? p.pos : p.neg).push_back(l.atom.to_string());
        }
        out.push_back(std::move(p));
    }
    return out;
}

bool all_in(const std::vector<std::string>& atoms, const AtomSet& m) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const std::string& a) { return m.count(a) > 0; });
}

bool none_in(const std::vector<std::string>& atoms, const AtomSet& m) {
    return std::none_of(atoms.begin(), atoms.end(), [&](const std::string& a) { return m.count(a) > 0; });
}

bool stable(const std::vector<PropRule>& rules, const AtomSet& m) {
    // Constraints on m itself.
    for (const auto& r : rules) {
        bool body = all_in(r.pos, m) && none_in(r.neg, m);
        if (!body) continue;
        if (r.kind == RuleKind::Denial) return false;
        if (r.kind == RuleKind::Choice) {
            int n = 0;
            for (const auto& h : r.heads) n += m.count(h) ? 1 : 0;
            if (n < r.lower || n > r.upper) return false;
        }
    }
    // Least model of the reduct by naive iteration.
    AtomSet least;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : rules) {
            if (r.kind == RuleKind::Denial || !none_in(r.neg, m) || !all_in(r.pos, least)) continue;
            for (const auto& h : r.heads) {
                if (r.kind == RuleKind::Choice && !m.count(h)) continue;
                if (least.insert(h).second) changed = true;
            }
        }
    }
    return least == m;
}

} // namespace

Program naive_instantiate(const Program& program) {
    std::vector<Term> universe;
    for (const auto& r : program.rules) {
        if (r.kind == RuleKind::Normal) collect_terms(r.head, universe);
        for (const auto& e : r.choice.elements) collect_terms(e.atom, universe);
        for (const auto& l : r.body) {
            if (l.is_comparison()) {
                if (!l.cmp.lhs.is_variable()) universe.push_back(l.cmp.lhs);
                if (!l.cmp.rhs.is_variable()) universe.push_back(l.cmp.rhs);
            } else {
                collect_terms(l.atom, universe);
            }
        }
    }
    std::vector<Term> dedup;
    for (const auto& t : universe)
        if (std::find(dedup.begin(), dedup.end(), t) == dedup.end()) dedup.push_back(t);
    universe = dedup;

    Program out;
    for (const auto& r : program.rules) {
        std::vector<std::string> vars;
        if (r.kind == RuleKind::Normal) collect_vars(r.head, vars);
        for (const auto& e : r.choice.elements) collect_vars(e.atom, vars);
        for (const auto& l : r.body) {
            if (l.is_comparison()) {
                if (l.cmp.lhs.is_variable()) vars.push_back(l.cmp.lhs.text);
                if (l.cmp.rhs.is_variable()) vars.push_back(l.cmp.rhs.text);
            } else {
                collect_vars(l.atom, vars);
            }
        }
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

        std::map<std::string, Term> s;
        std::size_t copy = 0;
        std::function<void(std::size_t)> assign = [&](std::size_t i) {
            if (i < vars.size()) {
                for (const auto& t : universe) {
                    s[vars[i]] = t;
                    assign(i + 1);
                }
                return;
            }
            Rule g;
            g.kind = r.kind;
            g.id = r.id + "/" + std::to_string(++copy);
            if (r.kind == RuleKind::Normal) g.head = substitute_in(r.head, s);
            g.choice.lower = r.choice.lower;
            g.choice.upper = r.choice.upper;
            for (const auto& e : r.choice.elements) g.choice.elements.push_back({substitute_in(e.atom, s), {}});
            for (const auto& l : r.body) {
                if (l.is_comparison()) {
                    if (!holds(substitute_in(l.cmp.lhs, s), l.cmp.op, substitute_in(l.cmp.rhs, s))) return;
                    continue;
                }
                g.body.push_back(l.is_positive() ? Literal::positive(substitute_in(l.atom, s)) : Literal::negative(substitute_in(l.atom, s)));
            }
            out.rules.push_back(std::move(g));
        };
        assign(0);
    }
    return out;
}

ModelSet brute_force_models(const Program& ground, std::size_t max_guess) {
    auto rules = propositional(ground);
    // Unconditional facts belong to every model; only the other head atoms
    // are guessed.
    AtomSet fixed;
    for (const auto& r : rules)
        if (r.kind == RuleKind::Normal && r.pos.empty() && r.neg.empty()) fixed.insert(r.heads.front());
    std::vector<std::string> guess;
    for (const auto& r : rules)
        for (const auto& h : r.heads)
            if (!fixed.count(h) && std::find(guess.begin(), guess.end(), h) == guess.end()) guess.push_back(h);
    if (guess.size() > max_guess) throw std::length_error("too many head atoms for the brute-force oracle");
    ModelSet out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << guess.size()); ++mask) {
        AtomSet m = fixed;
        for (std::size_t i = 0; i < guess.size(); ++i)
            if (mask >> i & 1) m.insert(guess[i]);
        if (stable(rules, m)) out.insert(std::move(m));
    }
    return out;
}

ModelSet oracle_models(const Program& program, std::size_t max_guess) {
    return brute_force_models(naive_instantiate(program), max_guess);
}

ModelSet to_model_set(const std::vector<std::vector<Atom>>& models) {
    ModelSet out;
    for (const auto& m : models) {
        AtomSet s;
        for (const auto& a : m) s.insert(a.to_string());
        out.insert(std::move(s));
    }
    return out;
}

namespace {

Program joined(const Program& background, const std::vector<Rule>& hypothesis, const Program& context = {}) {
    Program p = background;
    p.rules.insert(p.rules.end(), hypothesis.begin(), hypothesis.end());
    p.rules.insert(p.rules.end(), context.rules.begin(), context.rules.end());
    return p;
}

bool example_witnessed(const ModelSet& models, const ExampleSource& e) {
    for (const auto& m : models) {
        bool ok = true;
        for (const auto& a : e.inclusions) ok = ok && m.count(a.to_string());
        for (const auto& a : e.exclusions) ok = ok && !m.count(a.to_string());
        if (ok) return true;
    }
    return false;
}

std::vector<Rule> rules_of(const HypothesisSpace& space, const std::vector<std::size_t>& members) {
    std::vector<Rule> out;
    for (auto i : members) out.push_back(space.candidates[i].rule);
    return out;
}

template <class Accept>
PowersetResult search(const HypothesisSpace& space, Accept accept) {
    const std::size_t n = space.size();
    if (n > 20) throw std::length_error("space too large for the powerset oracle");
    std::vector<std::pair<std::size_t, std::uint64_t>> order;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::size_t len = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) len += space.candidates[i].length;
        order.push_back({len, mask});
    }
    std::sort(order.begin(), order.end());
    PowersetResult out;
    for (const auto& [len, mask] : order) {
        if (out.best_length && len > *out.best_length) break;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) members.push_back(i);
        if (!accept(rules_of(space, members))) continue;
        out.best_length = len;
        out.optimal.push_back({members, len});
    }
    return out;
}

} // namespace

bool oracle_covers(const Program& background, const std::vector<Rule>& hypothesis, const ExampleSource& example) {
    bool witnessed = example_witnessed(oracle_models(joined(background, hypothesis, example.context)), example);
    return example.polarity == ExampleSource::Polarity::Positive ? witnessed : !witnessed;
}

PowersetResult powerset_learn(const Program& background, const HypothesisSpace& space,
                              const std::vector<ExampleSource>& examples) {
    return search(space, [&](const std::vector<Rule>& h) {
        return std::all_of(examples.begin(), examples.end(),
                           [&](const ExampleSource& e) { return oracle_covers(background, h, e); });
    });
}

bool cautious_oracle_accepts(const Program& background, const std::vector<Rule>& hypothesis,
                             const std::vector<Atom>& e_plus, const std::vector<Atom>& e_minus) {
    auto models = oracle_models(joined(background, hypothesis));
    if (models.empty()) return false;
    for (const auto& m : models) {
        for (const auto& a : e_plus)
            if (!m.count(a.to_string())) return false;
        for (const auto& a : e_minus)
            if (m.count(a.to_string())) return false;
    }
    return true;
}

PowersetResult cautious_oracle_learn(const Program& background, const HypothesisSpace& space,
                                     const std::vector<Atom>& e_plus, const std::vector<Atom>& e_minus) {
    return search(space,
                  [&](const std::vector<Rule>& h) { return cautious_oracle_accepts(background, h, e_plus, e_minus); });
}

} // namespace lexasp::testing
