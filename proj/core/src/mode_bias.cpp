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

// Hypothesis-space generation from mode declarations.

#include <lexasp/error.hpp>
#include <lexasp/learner.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace lexasp {

namespace {

std::string rename(const std::string& name, const std::vector<std::string>& vars, const std::vector<int>& perm) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return "V" + std::to_string(perm[i] + 1);
    return name;
}

std::string term_text(const Term& t, const std::vector<std::string>& vars, const std::vector<int>& perm) {
    return t.is_variable() ? rename(t.text, vars, perm) : t.to_string();
}

std::string atom_text(const Atom& a, const std::vector<std::string>& vars, const std::vector<int>& perm,
                      const std::set<std::string>& symmetric) {
    std::vector<std::string> args;
    for (const auto& t : a.args) args.push_back(term_text(t, vars, perm));
    if (args.size() == 2 && symmetric.contains(a.predicate) && args[1] < args[0]) std::swap(args[0], args[1]);
    std::string out = a.predicate;
    if (!args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + args[i];
        out += ")";
    }
    return out;
}

std::string literal_text(const Literal& l, const std::vector<std::string>& vars, const std::vector<int>& perm,
                         const std::set<std::string>& symmetric) {
    switch (l.kind) {
        case LiteralKind::Positive: return atom_text(l.atom, vars, perm, symmetric);
        case LiteralKind::Negative: return "not " + atom_text(l.atom, vars, perm, symmetric);
        case LiteralKind::Comparison: {
            auto lhs = term_text(l.cmp.lhs, vars, perm);
            auto rhs = term_text(l.cmp.rhs, vars, perm);
            CompareOp op = l.cmp.op;
            if ((op == CompareOp::Eq || op == CompareOp::Ne) && rhs < lhs) std::swap(lhs, rhs);
            // Orient strict and non-strict orderings one way.
            if (op == CompareOp::Gt || op == CompareOp::Ge) {
                std::swap(lhs, rhs);
                op = op == CompareOp::Gt ? CompareOp::Lt : CompareOp::Le;
            }
            return lhs + " " + lexasp::to_string(op) + " " + rhs;
        }
    }
    return {};
}

std::string key_for(const Rule& rule, const std::vector<std::string>& vars, const std::vector<int>& perm,
                    const std::set<std::string>& symmetric) {
    std::string head;
    if (rule.kind == RuleKind::Normal) head = atom_text(rule.head, vars, perm, symmetric);
    if (rule.kind == RuleKind::Choice) {
        std::vector<std::string> elems;
        for (const auto& e : rule.choice.elements) {
            std::string s = atom_text(e.atom, vars, perm, symmetric);
            std::vector<std::string> cond;
            for (const auto& c : e.condition) cond.push_back(literal_text(c, vars, perm, symmetric));
            std::sort(cond.begin(), cond.end());
            for (const auto& c : cond) s += ":" + c;
            elems.push_back(s);
        }
        std::sort(elems.begin(), elems.end());
        head = std::to_string(rule.choice.lower) + "{";
        for (const auto& e : elems) head += e + ";";
        head += "}" + (rule.choice.upper ? std::to_string(*rule.choice.upper) : std::string("*"));
    }
    std::vector<std::string> body;
    for (const auto& l : rule.body) body.push_back(literal_text(l, vars, perm, symmetric));
    std::sort(body.begin(), body.end());
    std::string out = head + " :-";
    for (const auto& b : body) out += " " + b + ",";
    return out;
}

} // namespace

std::string candidate_key(const Rule& rule, const std::set<std::string>& symmetric_predicates) {
    auto vars = variables_of(rule);
    std::vector<int> perm(vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    if (vars.size() > 7) return key_for(rule, vars, perm, symmetric_predicates);
    std::string best;
    bool first = true;
    do {
        auto k = key_for(rule, vars, perm, symmetric_predicates);
        if (first || k < best) best = std::move(k);
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

struct BodyLiteral {
    Atom atom;
    bool negative = false;
    bool anti_reflexive = false;
};

class Generator {
public:
    Generator(const std::vector<ModeDecl>& modes, int maxv, const std::map<std::string, std::vector<Term>>& constants,
              std::size_t cap, std::unordered_set<std::string>& seen, std::vector<Candidate>& out)
        : maxv_(maxv), constants_(constants), cap_(cap), seen_(seen), out_(out) {
        for (const auto& m : modes) {
            switch (m.kind) {
                case ModeKind::Head:
                case ModeKind::HeadAggregate: heads_.push_back(&m); break;
                case ModeKind::Body: bodies_.push_back(&m); break;
                case ModeKind::Condition: conditions_.push_back(&m); break;
            }
            if (m.has(ModeFlag::Symmetric)) symmetric_.insert(m.schema.predicate);
        }
    }

    const std::set<std::string>& symmetric() const { return symmetric_; }

    void run() {
        for (const ModeDecl* h : heads_) {
            head_ = h;
            std::vector<Term> args;
            assign(h->schema, 0, args, [&](const std::vector<Term>& a) {
                if (reflexive(*h, a)) return;
                head_atom_ = Atom{h->schema.predicate, a};
                used_.assign(bodies_.size(), 0);
                body_dfs(0);
            });
        }
    }

private:
    Term var(std::size_t i) const { return Term::variable("V" + std::to_string(i + 1)); }

    // Enumerates argument tuples for `schema`; variables either reuse one of
    // the same type or introduce a fresh one within maxv.
    void assign(const ModeAtom& schema, std::size_t i, std::vector<Term>& args,
                const std::function<void(const std::vector<Term>&)>& emit) {
        if (i == schema.args.size()) {
            emit(args);
            return;
        }
        const ModeArg& p = schema.args[i];
        switch (p.kind) {
            case ModeArg::Kind::Fixed:
                args.push_back(p.fixed);
                assign(schema, i + 1, args, emit);
                args.pop_back();
                break;
            case ModeArg::Kind::Const: {
                auto it = constants_.find(p.type);
                if (it == constants_.end()) break;
                for (const auto& c : it->second) {
                    args.push_back(c);
                    assign(schema, i + 1, args, emit);
                    args.pop_back();
                }
                break;
            }
            case ModeArg::Kind::Var: {
                for (std::size_t v = 0; v < var_types_.size(); ++v) {
                    if (var_types_[v] != p.type) continue;
                    args.push_back(var(v));
                    assign(schema, i + 1, args, emit);
                    args.pop_back();
                }
                if (static_cast<int>(var_types_.size()) < maxv_) {
                    var_types_.push_back(p.type);
                    args.push_back(var(var_types_.size() - 1));
                    assign(schema, i + 1, args, emit);
                    args.pop_back();
                    var_types_.pop_back();
                }
                break;
            }
        }
    }

    static bool reflexive(const ModeDecl& m, const std::vector<Term>& args) {
        return m.has(ModeFlag::AntiReflexive) && args.size() == 2 && args[0] == args[1];
    }

    void body_dfs(std::size_t start) {
        if (!body_.empty()) {
            cmps_.clear();
            modec_dfs(0, 0);
        }
        for (std::size_t s = start; s < bodies_.size(); ++s) {
            const ModeDecl& m = *bodies_[s];
            if (used_[s] >= m.recall) continue;
            for (int polarity = 0; polarity < 2; ++polarity) {
                if (polarity == 1 && m.has(ModeFlag::Positive)) continue;
                std::vector<Term> args;
                assign(m.schema, 0, args, [&](const std::vector<Term>& a) {
                    if (reflexive(m, a)) return;
                    ++used_[s];
                    body_.push_back({Atom{m.schema.predicate, a}, polarity == 1, m.has(ModeFlag::AntiReflexive)});
                    body_dfs(s);
                    body_.pop_back();
                    --used_[s];
                });
            }
        }
    }

    std::vector<Term> comparable(const ModeArg& p) const {
        std::vector<Term> out;
        switch (p.kind) {
            case ModeArg::Kind::Fixed: out.push_back(p.fixed); break;
            case ModeArg::Kind::Const:
                if (auto it = constants_.find(p.type); it != constants_.end()) out = it->second;
                break;
            case ModeArg::Kind::Var:
                for (std::size_t v = 0; v < var_types_.size(); ++v)
                    if (var_types_[v] == p.type) out.push_back(var(v));
                break;
        }
        return out;
    }

    void modec_dfs(std::size_t decl, int used) {
        if (decl == conditions_.size()) {
            emit();
            return;
        }
        modec_dfs(decl + 1, 0);
        const ModeDecl& m = *conditions_[decl];
        if (used >= m.recall) return;
        for (const auto& l : comparable(m.lhs))
            for (const auto& r : comparable(m.rhs)) {
                if (l == r) continue;
                cmps_.push_back(Literal::compare(l, m.op, r));
                modec_dfs(decl, used + 1);
                cmps_.pop_back();
            }
    }

    void emit() {
        Rule rule;
        if (head_->kind == ModeKind::HeadAggregate) {
            rule.kind = RuleKind::Choice;
            rule.choice.elements.push_back({head_atom_, {}});
        } else {
            rule.kind = RuleKind::Normal;
            rule.head = head_atom_;
        }
        std::vector<std::pair<std::string, std::string>> distinct;
        auto add_distinct = [&](const Atom& a, bool flagged) {
            if (!flagged || a.args.size() != 2 || !a.args[0].is_variable() || !a.args[1].is_variable()) return;
            std::pair<std::string, std::string> pair = std::minmax(a.args[0].text, a.args[1].text);
            if (std::find(distinct.begin(), distinct.end(), pair) != distinct.end()) return;
            distinct.push_back(pair);
            rule.body.push_back(Literal::compare(a.args[0], CompareOp::Ne, a.args[1]));
        };
        add_distinct(head_atom_, head_->has(ModeFlag::AntiReflexive));
        for (const auto& b : body_) add_distinct(b.atom, b.anti_reflexive);
        for (std::size_t v = 0; v < var_types_.size(); ++v)
            rule.body.push_back(Literal::positive(Atom{var_types_[v], {var(v)}}));
        for (const auto& b : body_)
            rule.body.push_back(b.negative ? Literal::negative(b.atom) : Literal::positive(b.atom));
        rule.body.insert(rule.body.end(), cmps_.begin(), cmps_.end());
        if (!seen_.insert(candidate_key(rule, symmetric_)).second) return;
        rule.origin = Origin::LearnedJudgment;
        rule.id = "h" + std::to_string(out_.size() + 1);
        std::size_t length = rule.length();
        out_.push_back({std::move(rule), length, Provenance::ModeGenerated});
        if (out_.size() > cap_)
            throw LearningError("hypothesis space exceeds the cap of " + std::to_string(cap_) +
                                " candidates; tighten the mode bias (#maxv, recall, flags)");
    }

    int maxv_;
    const std::map<std::string, std::vector<Term>>& constants_;
    std::size_t cap_;
    std::unordered_set<std::string>& seen_;
    std::vector<Candidate>& out_;
    std::vector<const ModeDecl*> heads_;
    std::vector<const ModeDecl*> bodies_;
    std::vector<const ModeDecl*> conditions_;
    std::set<std::string> symmetric_;

    const ModeDecl* head_ = nullptr;
    Atom head_atom_;
    std::vector<std::string> var_types_;
    std::vector<int> used_;
    std::vector<BodyLiteral> body_;
    std::vector<Literal> cmps_;
};

} // namespace

HypothesisSpace generate_hypothesis_space(const std::vector<ModeDecl>& modes, std::optional<int> maxv,
                                          const std::map<std::string, std::vector<Term>>& constants,
                                          const std::vector<ExplicitCandidate>& explicit_rules,
                                          const SpaceOptions& options) {
    HypothesisSpace space;
    std::unordered_set<std::string> seen;
    std::set<std::string> symmetric;
    for (const auto& m : modes)
        if (m.has(ModeFlag::Symmetric)) symmetric.insert(m.schema.predicate);
    for (const auto& e : explicit_rules) {
        if (!seen.insert(candidate_key(e.rule, symmetric)).second) continue;
        space.candidates.push_back({e.rule, e.length, Provenance::Explicit});
        if (space.candidates.size() > options.cap)
            throw LearningError("hypothesis space exceeds the cap of " + std::to_string(options.cap) + " candidates");
    }
    Generator gen(modes, maxv.value_or(options.default_maxv), constants, options.cap, seen, space.candidates);
    gen.run();
    if (space.candidates.empty()) throw LearningError("empty hypothesis space");
    return space;
}

HypothesisSpace generate_hypothesis_space(const LearningTaskSource& task, const SpaceOptions& options) {
    return generate_hypothesis_space(task.modes, task.maxv, task.constants, task.explicit_space, options);
}

} // namespace lexasp
