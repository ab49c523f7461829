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
#include <lexasp/grounder.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace lexasp {

const std::string& GroundRule::id() const {
    static const std::string none;
    return info ? info->id : none;
}

GroundProgram::GroundProgram(std::vector<Atom> atoms, std::vector<GroundRule> rules)
    : atoms_(std::move(atoms)), rules_(std::move(rules)) {
    index_.reserve(atoms_.size());
    for (AtomId i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i].to_string(), i);
}

std::optional<AtomId> GroundProgram::find(const Atom& atom) const { return find(atom.to_string()); }

std::optional<AtomId> GroundProgram::find(const std::string& text) const {
    auto it = index_.find(text);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string GroundProgram::rule_text(const GroundRule& r) const {
    std::string out;
    switch (r.kind) {
        case RuleKind::Normal: out = atoms_[r.head].to_string(); break;
        case RuleKind::Denial: break;
        case RuleKind::Choice:
            out = std::to_string(r.lower) + "{";
            for (std::size_t i = 0; i < r.elements.size(); ++i) {
                if (i) out += ";";
                out += atoms_[r.elements[i]].to_string();
            }
            out += "}" + std::to_string(r.upper);
            break;
    }
    if (!r.positive.empty() || !r.negative.empty() || r.kind == RuleKind::Denial) {
        out += r.kind == RuleKind::Denial ? ":- " : " :- ";
        bool first = true;
        for (AtomId a : r.positive) {
            if (!first) out += ", ";
            first = false;
            out += atoms_[a].to_string();
        }
        for (AtomId a : r.negative) {
            if (!first) out += ", ";
            first = false;
            out += "not " + atoms_[a].to_string();
        }
    }
    return out + ".";
}

Program GroundProgram::to_program() const {
    Program p;
    std::map<std::string, int> counters;
    for (const auto& r : rules_) {
        Rule out;
        out.kind = r.kind;
        if (r.kind == RuleKind::Normal) out.head = atoms_[r.head];
        if (r.kind == RuleKind::Choice) {
            out.choice.lower = r.lower;
            out.choice.upper = r.upper;
            for (AtomId e : r.elements) out.choice.elements.push_back({atoms_[e], {}});
        }
        for (AtomId a : r.positive) out.body.push_back(Literal::positive(atoms_[a]));
        for (AtomId a : r.negative) out.body.push_back(Literal::negative(atoms_[a]));
        std::string base = r.id().empty() ? "ground" : r.id();
        out.id = base + "/" + std::to_string(++counters[base]);
        if (r.info) {
            out.origin = r.info->origin;
            out.judgment = r.info->judgment;
        }
        p.rules.push_back(std::move(out));
    }
    return p;
}

std::string GroundProgram::to_string() const {
    std::ostringstream out;
    for (const auto& r : rules_) out << rule_text(r) << '\n';
    return out.str();
}

Atom substitute(const Atom& atom, const Binding& binding) {
    Atom out = atom;
    for (auto& t : out.args) {
        if (!t.is_variable()) continue;
        for (const auto& [name, value] : binding)
            if (name == t.text) {
                t = value;
                break;
            }
    }
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// Compiled rule patterns
// ---------------------------------------------------------------------------

struct Slot {
    int var = -1;  // -1: constant
    Term value;
};

struct Pattern {
    Signature sig;
    std::vector<Slot> args;
};

struct CmpPattern {
    Slot lhs;
    CompareOp op;
    Slot rhs;
};

struct ElementPattern {
    Pattern atom;
    std::vector<Pattern> condition;
};

struct CompiledRule {
    const Rule* rule = nullptr;
    std::vector<std::string> vars;
    Pattern head;
    std::vector<ElementPattern> elements;
    std::vector<Pattern> positive;
    std::vector<Pattern> negative;
    std::vector<CmpPattern> comparisons;
    std::vector<int> body_vars;  // variables bound by the positive body
};

using Env = std::vector<std::optional<Term>>;

class Compiler {
public:
    explicit Compiler(const Rule& rule) {
        out_.rule = &rule;
        for (const auto& v : variables_of(rule)) index_.emplace(v, static_cast<int>(out_.vars.size())), out_.vars.push_back(v);
        if (rule.kind == RuleKind::Normal) out_.head = pattern(rule.head);
        if (rule.kind == RuleKind::Choice) {
            for (const auto& e : rule.choice.elements) {
                ElementPattern ep;
                ep.atom = pattern(e.atom);
                for (const auto& c : e.condition) ep.condition.push_back(pattern(c.atom));
                out_.elements.push_back(std::move(ep));
            }
        }
        std::set<int> body_vars;
        for (const auto& l : rule.body) {
            switch (l.kind) {
                case LiteralKind::Positive:
                    out_.positive.push_back(pattern(l.atom));
                    for (const auto& s : out_.positive.back().args)
                        if (s.var >= 0) body_vars.insert(s.var);
                    break;
                case LiteralKind::Negative: out_.negative.push_back(pattern(l.atom)); break;
                case LiteralKind::Comparison:
                    out_.comparisons.push_back({slot(l.cmp.lhs), l.cmp.op, slot(l.cmp.rhs)});
                    break;
            }
        }
        out_.body_vars.assign(body_vars.begin(), body_vars.end());
    }

    CompiledRule take() { return std::move(out_); }

private:
    Slot slot(const Term& t) {
        Slot s;
        if (t.is_variable()) {
            s.var = index_.at(t.text);
        } else {
            s.value = t;
        }
        return s;
    }

    Pattern pattern(const Atom& a) {
        Pattern p;
        p.sig = a.signature();
        for (const auto& t : a.args) p.args.push_back(slot(t));
        return p;
    }

    CompiledRule out_;
    std::unordered_map<std::string, int> index_;
};

const Term& resolve(const Slot& s, const Env& env) { return s.var < 0 ? s.value : *env[s.var]; }

bool bound(const Slot& s, const Env& env) { return s.var < 0 || env[s.var].has_value(); }

Atom instantiate(const Pattern& p, const Env& env) {
    Atom a;
    a.predicate = p.sig.name;
    a.args.reserve(p.args.size());
    for (const auto& s : p.args) a.args.push_back(resolve(s, env));
    return a;
}

// Binds unbound slots of `p` against `atom`; appends newly bound variables to `trail`.
bool match(const Pattern& p, const Atom& atom, Env& env, std::vector<int>& trail) {
    for (std::size_t i = 0; i < p.args.size(); ++i) {
        const Slot& s = p.args[i];
        if (s.var < 0) {
            if (!(s.value == atom.args[i])) return false;
        } else if (env[s.var]) {
            if (!(*env[s.var] == atom.args[i])) return false;
        } else {
            env[s.var] = atom.args[i];
            trail.push_back(s.var);
        }
    }
    return true;
}

class AtomStore {
public:
    bool add(const Atom& a) {
        if (!keys_.insert(a.to_string()).second) return false;
        by_sig_[a.signature()].push_back(a);
        return true;
    }

    const std::vector<Atom>* get(const Signature& sig) const {
        auto it = by_sig_.find(sig);
        return it == by_sig_.end() ? nullptr : &it->second;
    }

private:
    std::map<Signature, std::vector<Atom>> by_sig_;
    std::unordered_set<std::string> keys_;
};

bool comparisons_hold(const CompiledRule& c, const Env& env, bool require_all) {
    for (const auto& cmp : c.comparisons) {
        if (!bound(cmp.lhs, env) || !bound(cmp.rhs, env)) {
            if (require_all) return false;
            continue;
        }
        if (!evaluate(cmp.op, resolve(cmp.lhs, env), resolve(cmp.rhs, env))) return false;
    }
    return true;
}

// Enumerates bindings of `patterns` against `store`, picking at each step the
// pattern with the most bound arguments.
void join(const CompiledRule& c, const std::vector<Pattern>& patterns, const AtomStore& store, Env& env,
          std::vector<char>& used, std::size_t done, bool check_comparisons,
          const std::function<void(Env&)>& emit) {
    if (done == patterns.size()) {
        if (!check_comparisons || comparisons_hold(c, env, true)) emit(env);
        return;
    }
    std::size_t best = patterns.size();
    int best_score = -1;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (used[i]) continue;
        int score = 0;
        for (const auto& s : patterns[i].args)
            if (bound(s, env)) ++score;
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    const Pattern& p = patterns[best];
    const auto* candidates = store.get(p.sig);
    if (!candidates) return;
    used[best] = 1;
    std::vector<int> trail;
    const std::size_t count = candidates->size();
    for (std::size_t k = 0; k < count; ++k) {
        trail.clear();
        if (match(p, (*candidates)[k], env, trail) && (!check_comparisons || comparisons_hold(c, env, false)))
            join(c, patterns, store, env, used, done + 1, check_comparisons, emit);
        for (int v : trail) env[v].reset();
    }
    used[best] = 0;
}

void for_each_body_binding(const CompiledRule& c, const AtomStore& store, const std::function<void(Env&)>& emit) {
    Env env(c.vars.size());
    std::vector<char> used(c.positive.size(), 0);
    join(c, c.positive, store, env, used, 0, true, emit);
}

struct ElementInstance {
    Atom atom;
    Binding local;
};

std::vector<ElementInstance> expand_elements(const CompiledRule& c, Env& env, const AtomStore& facts) {
    std::vector<ElementInstance> out;
    for (const auto& e : c.elements) {
        if (e.condition.empty()) {
            out.push_back({instantiate(e.atom, env), {}});
            continue;
        }
        std::vector<char> used(e.condition.size(), 0);
        std::vector<int> before;
        for (std::size_t v = 0; v < env.size(); ++v)
            if (env[v]) before.push_back(static_cast<int>(v));
        CompiledRule no_cmp;
        join(no_cmp, e.condition, facts, env, used, 0, false, [&](Env& inner) {
            ElementInstance inst{instantiate(e.atom, inner), {}};
            for (std::size_t v = 0; v < inner.size(); ++v)
                if (inner[v] && !std::binary_search(before.begin(), before.end(), static_cast<int>(v)))
                    inst.local.emplace_back(c.vars[v], *inner[v]);
            out.push_back(std::move(inst));
        });
    }
    return out;
}

std::set<Signature> condition_signatures(const Program& program) {
    std::set<Signature> out;
    for (const auto& r : program.rules)
        if (r.kind == RuleKind::Choice)
            for (const auto& e : r.choice.elements)
                for (const auto& c : e.condition) out.insert(c.atom.signature());
    return out;
}

void check_domain_predicates(const Program& program) {
    auto domain = condition_signatures(program);
    if (domain.empty()) return;
    for (const auto& r : program.rules) {
        if (r.kind == RuleKind::Normal && !r.is_fact() && domain.contains(r.head.signature()))
            throw GroundingError("choice condition predicate " + r.head.signature().to_string() +
                                 " is defined by non-fact rule " + r.id);
        if (r.kind == RuleKind::Choice)
            for (const auto& e : r.choice.elements)
                if (domain.contains(e.atom.signature()))
                    throw GroundingError("choice condition predicate " + e.atom.signature().to_string() +
                                         " is defined by choice rule " + r.id);
    }
}

struct PendingRule {
    RuleKind kind;
    Atom head;
    std::vector<ElementInstance> elements;
    int lower = 0;
    int upper = 0;
    std::vector<Atom> positive;
    std::vector<Atom> negative;
    std::shared_ptr<const RuleInfo> info;
    Binding binding;
};

Binding body_binding(const CompiledRule& c, const Env& env) {
    Binding b;
    for (int v : c.body_vars) b.emplace_back(c.vars[v], *env[v]);
    // Keep first-occurrence order of the rule.
    std::stable_sort(b.begin(), b.end(), [&](const auto& x, const auto& y) {
        auto ix = std::find(c.vars.begin(), c.vars.end(), x.first) - c.vars.begin();
        auto iy = std::find(c.vars.begin(), c.vars.end(), y.first) - c.vars.begin();
        return ix < iy;
    });
    return b;
}

} // namespace

std::vector<Atom> expand_conditional_choice(const ChoiceHead& head, const std::vector<Atom>& facts,
                                            const Program* program) {
    if (program) check_domain_predicates(*program);
    Rule r;
    r.kind = RuleKind::Choice;
    r.choice = head;
    CompiledRule c = Compiler(r).take();
    AtomStore store;
    for (const auto& f : facts) store.add(f);
    Env env(c.vars.size());
    std::vector<Atom> out;
    for (auto& e : expand_elements(c, env, store)) out.push_back(std::move(e.atom));
    return out;
}

GroundProgram ground_program(const Program& program) {
    check_domain_predicates(program);

    std::vector<CompiledRule> compiled;
    compiled.reserve(program.rules.size());
    for (const auto& r : program.rules) compiled.push_back(Compiler(r).take());

    AtomStore facts;
    AtomStore possible;
    for (const auto& r : program.rules)
        if (r.is_fact()) {
            facts.add(r.head);
            possible.add(r.head);
        }

    // Over-approximate the derivable atoms, ignoring negation and choice bounds.
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& c : compiled) {
            const Rule& r = *c.rule;
            if (r.kind == RuleKind::Denial || r.is_fact()) continue;
            std::vector<Atom> fresh;
            for_each_body_binding(c, possible, [&](Env& env) {
                if (r.kind == RuleKind::Normal) {
                    fresh.push_back(instantiate(c.head, env));
                } else {
                    for (auto& e : expand_elements(c, env, facts)) fresh.push_back(std::move(e.atom));
                }
            });
            for (const auto& a : fresh) changed |= possible.add(a);
        }
    }

    std::vector<PendingRule> pending;
    for (const auto& c : compiled) {
        const Rule& r = *c.rule;
        auto info = std::make_shared<RuleInfo>(RuleInfo{r.id, r.origin, r.annotation, r.judgment});
        for_each_body_binding(c, possible, [&](Env& env) {
            PendingRule p;
            p.kind = r.kind;
            p.info = info;
            p.binding = body_binding(c, env);
            for (const auto& pat : c.positive) p.positive.push_back(instantiate(pat, env));
            for (const auto& pat : c.negative) p.negative.push_back(instantiate(pat, env));
            if (r.kind == RuleKind::Normal) p.head = instantiate(c.head, env);
            if (r.kind == RuleKind::Choice) {
                p.elements = expand_elements(c, env, facts);
                p.lower = r.choice.lower;
                p.upper = r.choice.upper.value_or(static_cast<int>(p.elements.size()));
            }
            pending.push_back(std::move(p));
        });
    }

    std::map<std::string, Atom> base;
    auto note = [&](const Atom& a) { base.try_emplace(a.to_string(), a); };
    for (const auto& p : pending) {
        if (p.kind == RuleKind::Normal) note(p.head);
        for (const auto& e : p.elements) note(e.atom);
        for (const auto& a : p.positive) note(a);
        for (const auto& a : p.negative) note(a);
    }
    std::vector<Atom> atoms;
    std::unordered_map<std::string, AtomId> ids;
    atoms.reserve(base.size());
    for (auto& [text, atom] : base) {
        ids.emplace(text, static_cast<AtomId>(atoms.size()));
        atoms.push_back(std::move(atom));
    }
    auto id_of = [&](const Atom& a) { return ids.at(a.to_string()); };

    std::vector<GroundRule> rules;
    rules.reserve(pending.size());
    for (auto& p : pending) {
        GroundRule g;
        g.kind = p.kind;
        g.info = std::move(p.info);
        g.binding = std::move(p.binding);
        g.lower = p.lower;
        g.upper = p.upper;
        if (p.kind == RuleKind::Normal) g.head = id_of(p.head);
        for (auto& e : p.elements) {
            // Choice elements form a set.
            AtomId id = id_of(e.atom);
            if (std::find(g.elements.begin(), g.elements.end(), id) != g.elements.end()) continue;
            g.elements.push_back(id);
            g.element_bindings.push_back(std::move(e.local));
        }
        for (const auto& a : p.positive) g.positive.push_back(id_of(a));
        for (const auto& a : p.negative) g.negative.push_back(id_of(a));
        rules.push_back(std::move(g));
    }
    return GroundProgram(std::move(atoms), std::move(rules));
}

} // namespace lexasp
