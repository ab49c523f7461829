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

#include <lexasp/solver.hpp>

#include <algorithm>
#include <stdexcept>

namespace lexasp {

namespace {

std::vector<char> to_mask(std::size_t n, const Model& m) {
    std::vector<char> mask(n, 0);
    for (AtomId a : m)
        if (a < n) mask[a] = 1;
    return mask;
}

bool body_holds(const GroundRule& r, const std::vector<char>& in) {
    for (AtomId a : r.positive)
        if (!in[a]) return false;
    for (AtomId a : r.negative)
        if (in[a]) return false;
    return true;
}

} // namespace

std::vector<DefiniteRule> reduct(const GroundProgram& program, const Model& candidate) {
    auto in = to_mask(program.size(), candidate);
    std::vector<DefiniteRule> out;
    for (const auto& r : program.rules()) {
        if (r.kind == RuleKind::Denial) continue;
        bool blocked = std::any_of(r.negative.begin(), r.negative.end(), [&](AtomId a) { return in[a]; });
        if (blocked) continue;
        if (r.kind == RuleKind::Normal) {
            out.push_back({r.head, r.positive});
        } else {
            for (AtomId e : r.elements)
                if (in[e]) out.push_back({e, r.positive});
        }
    }
    return out;
}

Model least_model(std::size_t atom_count, const std::vector<DefiniteRule>& rules) {
    // Counter-based fixpoint: each rule fires once its missing count reaches 0.
    std::vector<std::vector<std::size_t>> watch(atom_count);
    std::vector<std::size_t> missing(rules.size());
    std::vector<char> in(atom_count, 0);
    std::vector<AtomId> agenda;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        missing[i] = rules[i].body.size();
        for (AtomId a : rules[i].body) watch[a].push_back(i);
        if (missing[i] == 0 && !in[rules[i].head]) {
            in[rules[i].head] = 1;
            agenda.push_back(rules[i].head);
        }
    }
    while (!agenda.empty()) {
        AtomId a = agenda.back();
        agenda.pop_back();
        for (std::size_t i : watch[a])
            if (--missing[i] == 0 && !in[rules[i].head]) {
                in[rules[i].head] = 1;
                agenda.push_back(rules[i].head);
            }
    }
    Model out;
    for (AtomId a = 0; a < atom_count; ++a)
        if (in[a]) out.push_back(a);
    return out;
}

bool is_stable(const GroundProgram& program, const Model& candidate) {
    const auto n = program.size();
    if (std::any_of(candidate.begin(), candidate.end(), [&](AtomId a) { return a >= n; })) return false;
    auto in = to_mask(n, candidate);
    for (const auto& r : program.rules()) {
        if (r.kind == RuleKind::Denial && body_holds(r, in)) return false;
        if (r.kind == RuleKind::Choice && body_holds(r, in)) {
            int count = 0;
            for (AtomId e : r.elements) count += in[e];
            if (count < r.lower || count > r.upper) return false;
        }
    }
    Model sorted = candidate;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return least_model(n, reduct(program, sorted)) == sorted;
}

// ---------------------------------------------------------------------------
// ModelEnumerator
// ---------------------------------------------------------------------------

ModelEnumerator::ModelEnumerator(const GroundProgram& program, std::vector<std::pair<AtomId, bool>> assumptions)
    : program_(program),
      assumptions_(std::move(assumptions)),
      values_(program.size(), Value::Unknown),
      queued_(program.rules().size(), 0),
      occurs_(program.size()),
      supports_(program.size()) {
    const auto& rules = program_.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto& r = rules[i];
        auto note = [&](AtomId a) {
            if (occurs_[a].empty() || occurs_[a].back() != i) occurs_[a].push_back(i);
        };
        if (r.kind == RuleKind::Normal) {
            note(r.head);
            supports_[r.head].push_back(i);
        }
        for (AtomId e : r.elements) {
            note(e);
            if (supports_[e].empty() || supports_[e].back() != i) supports_[e].push_back(i);
        }
        for (AtomId a : r.positive) note(a);
        for (AtomId a : r.negative) note(a);
    }
}

bool ModelEnumerator::assign(AtomId atom, bool value) {
    Value v = value ? Value::True : Value::False;
    if (values_[atom] != Value::Unknown) return values_[atom] == v;
    values_[atom] = v;
    trail_.push_back(atom);
    for (std::size_t r : occurs_[atom])
        if (!queued_[r]) {
            queued_[r] = 1;
            queue_.push_back(r);
        }
    return true;
}

void ModelEnumerator::undo(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
        values_[trail_.back()] = Value::Unknown;
        trail_.pop_back();
    }
}

bool ModelEnumerator::check_support(AtomId atom) {
    const auto& rules = program_.rules();
    std::size_t open = 0;
    std::size_t last = 0;
    for (std::size_t r : supports_[atom]) {
        const auto& rule = rules[r];
        bool body_false = false;
        for (AtomId a : rule.positive)
            if (values_[a] == Value::False) body_false = true;
        for (AtomId a : rule.negative)
            if (values_[a] == Value::True) body_false = true;
        if (!body_false) {
            ++open;
            last = r;
            if (open > 1) break;
        }
    }
    if (open == 0) return assign(atom, false);
    if (open == 1 && values_[atom] == Value::True) {
        const auto& rule = rules[last];
        for (AtomId a : rule.positive)
            if (!assign(a, true)) return false;
        for (AtomId a : rule.negative)
            if (!assign(a, false)) return false;
    }
    return true;
}

bool ModelEnumerator::process_rule(std::size_t index) {
    const auto& r = program_.rules()[index];
    // Body status: number of literals not yet true, and the last such one.
    std::size_t open = 0;
    bool falsified = false;
    AtomId open_atom = 0;
    bool open_positive = true;
    for (AtomId a : r.positive) {
        if (values_[a] == Value::False) falsified = true;
        if (values_[a] != Value::True) {
            ++open;
            open_atom = a;
            open_positive = true;
        }
    }
    for (AtomId a : r.negative) {
        if (values_[a] == Value::True) falsified = true;
        if (values_[a] != Value::False) {
            ++open;
            open_atom = a;
            open_positive = false;
        }
    }
    if (!falsified) {
        bool head_false = false;
        if (r.kind == RuleKind::Denial) head_false = true;
        if (r.kind == RuleKind::Normal) {
            if (open == 0 && !assign(r.head, true)) return false;
            head_false = values_[r.head] == Value::False;
        }
        if (r.kind == RuleKind::Choice) {
            int t = 0;
            int f = 0;
            for (AtomId e : r.elements) {
                t += values_[e] == Value::True;
                f += values_[e] == Value::False;
            }
            const int n = static_cast<int>(r.elements.size());
            bool violated = t > r.upper || n - f < r.lower;
            if (open == 0) {
                if (violated) return false;
                if (t == r.upper) {
                    for (AtomId e : r.elements)
                        if (values_[e] == Value::Unknown && !assign(e, false)) return false;
                } else if (n - f == r.lower) {
                    for (AtomId e : r.elements)
                        if (values_[e] == Value::Unknown && !assign(e, true)) return false;
                }
            }
            head_false = violated;
        }
        if (head_false) {
            if (open == 0) return false;
            if (open == 1 && !assign(open_atom, !open_positive)) return false;
        }
    }
    if (r.kind == RuleKind::Normal && !check_support(r.head)) return false;
    for (AtomId e : r.elements)
        if (!check_support(e)) return false;
    return true;
}

bool ModelEnumerator::propagate() {
    while (!queue_.empty()) {
        std::size_t r = queue_.back();
        queue_.pop_back();
        queued_[r] = 0;
        if (!process_rule(r)) {
            for (std::size_t q : queue_) queued_[q] = 0;
            queue_.clear();
            return false;
        }
    }
    return true;
}

bool ModelEnumerator::backtrack() {
    while (!frames_.empty()) {
        Frame& f = frames_.back();
        undo(f.trail_size);
        if (!f.tried_true) {
            f.tried_true = true;
            if (assign(f.atom, true) && propagate()) return true;
            continue;
        }
        frames_.pop_back();
    }
    return false;
}

std::optional<Model> ModelEnumerator::next() {
    if (exhausted_) return std::nullopt;
    if (!started_) {
        started_ = true;
        bool ok = true;
        for (auto [atom, value] : assumptions_)
            if (atom >= values_.size() || !assign(atom, value)) ok = false;
        for (AtomId a = 0; ok && a < values_.size(); ++a)
            if (supports_[a].empty() && !assign(a, false)) ok = false;
        for (std::size_t r = 0; ok && r < program_.rules().size(); ++r)
            if (!queued_[r]) {
                queued_[r] = 1;
                queue_.push_back(r);
            }
        if (!ok || !propagate()) {
            exhausted_ = true;
            return std::nullopt;
        }
    } else if (!backtrack()) {
        exhausted_ = true;
        return std::nullopt;
    }
    for (;;) {
        AtomId pick = 0;
        bool found = false;
        for (AtomId a = 0; a < values_.size(); ++a)
            if (values_[a] == Value::Unknown) {
                pick = a;
                found = true;
                break;
            }
        if (!found) {
            Model m;
            for (AtomId a = 0; a < values_.size(); ++a)
                if (values_[a] == Value::True) m.push_back(a);
            ++checked_;
            if (is_stable(program_, m)) return m;
            if (!backtrack()) {
                exhausted_ = true;
                return std::nullopt;
            }
            continue;
        }
        frames_.push_back({trail_.size(), pick, false});
        if (!assign(pick, false) || !propagate()) {
            if (!backtrack()) {
                exhausted_ = true;
                return std::nullopt;
            }
        }
    }
}

std::vector<Model> enumerate_stable_models(const GroundProgram& program, std::optional<std::size_t> limit) {
    std::vector<Model> out;
    if (limit && *limit == 0) return out;
    ModelEnumerator e(program);
    while (auto m = e.next()) {
        out.push_back(std::move(*m));
        if (limit && out.size() >= *limit) break;
    }
    return out;
}

std::vector<Model> enumerate_by_subsets(const GroundProgram& program, std::size_t max_atoms) {
    const std::size_t n = program.size();
    if (n > max_atoms) throw std::invalid_argument("subset oracle limited to " + std::to_string(max_atoms) + " atoms");
    std::vector<Model> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        Model m;
        for (AtomId a = 0; a < n; ++a)
            if (bits & (std::uint64_t{1} << a)) m.push_back(a);
        if (is_stable(program, m)) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [n](const Model& x, const Model& y) {
        // Lexicographic over the 0/1 vector of atom values.
        auto mx = to_mask(n, x);
        auto my = to_mask(n, y);
        return mx < my;
    });
    return out;
}

bool is_consistent(const GroundProgram& program) { return ModelEnumerator(program).next().has_value(); }

bool brave_entails(const GroundProgram& program, const std::vector<Atom>& inclusions,
                   const std::vector<Atom>& exclusions) {
    std::vector<std::pair<AtomId, bool>> assume;
    for (const auto& a : inclusions) {
        auto id = program.find(a);
        if (!id) return false;
        assume.emplace_back(*id, true);
    }
    for (const auto& a : exclusions)
        if (auto id = program.find(a)) assume.emplace_back(*id, false);
    return ModelEnumerator(program, std::move(assume)).next().has_value();
}

bool cautious_entails(const GroundProgram& program, const std::vector<Atom>& inclusions,
                      const std::vector<Atom>& exclusions) {
    if (!is_consistent(program)) return false;
    for (const auto& a : inclusions) {
        auto id = program.find(a);
        if (!id) return false;
        if (ModelEnumerator(program, {{*id, false}}).next()) return false;
    }
    for (const auto& a : exclusions) {
        auto id = program.find(a);
        if (id && ModelEnumerator(program, {{*id, true}}).next()) return false;
    }
    return true;
}

std::vector<Atom> model_atoms(const GroundProgram& program, const Model& model) {
    std::vector<Atom> out;
    out.reserve(model.size());
    for (AtomId a : model) out.push_back(program.atom(a));
    return out;
}

std::string format_model(const GroundProgram& program, const Model& model) {
    std::string out;
    for (AtomId a : model) {
        if (!out.empty()) out += ' ';
        out += program.atom(a).to_string();
    }
    return out;
}

std::vector<std::vector<Atom>> solve_program(const Program& program, std::optional<std::size_t> limit) {
    auto ground = ground_program(program);
    std::vector<std::vector<Atom>> out;
    for (const auto& m : enumerate_stable_models(ground, limit)) out.push_back(model_atoms(ground, m));
    return out;
}

} // namespace lexasp
