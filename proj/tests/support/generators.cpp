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

#include "generators.hpp"

#include <algorithm>
#include <string>

namespace lexasp::testing {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

Atom prop(std::size_t i) { return Atom{"a" + std::to_string(i), {}}; }

std::vector<std::size_t> pick_distinct(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i < std::min(k, n); ++i) std::swap(all[i], all[i + rng.below(n - i)]);
    all.resize(std::min(k, n));
    return all;
}

void add_body(Rng& rng, Rule& r, std::size_t atoms, std::size_t max_len) {
    for (auto a : pick_distinct(rng, atoms, rng.below(max_len + 1)))
        r.body.push_back(rng.chance(35) ? Literal::negative(prop(a)) : Literal::positive(prop(a)));
}

Rule random_prop_rule(Rng& rng, std::size_t atoms, bool allow_facts) {
    Rule r;
    int kind = rng.between(0, 9);
    if (kind < 6) {
        r.kind = RuleKind::Normal;
        r.head = prop(rng.below(atoms));
        add_body(rng, r, atoms, 3);
        if (!allow_facts && r.body.empty()) r.body.push_back(Literal::positive(prop(rng.below(atoms))));
    } else if (kind < 8) {
        r.kind = RuleKind::Choice;
        for (auto a : pick_distinct(rng, atoms, rng.between(1, 3))) r.choice.elements.push_back({prop(a), {}});
        int n = static_cast<int>(r.choice.elements.size());
        r.choice.lower = rng.between(0, n);
        if (rng.chance(60)) r.choice.upper = rng.between(r.choice.lower, n);
        add_body(rng, r, atoms, 2);
    } else {
        r.kind = RuleKind::Denial;
        add_body(rng, r, atoms, 3);
        if (r.body.empty()) r.body.push_back(Literal::positive(prop(rng.below(atoms))));
    }
    return r;
}

} // namespace

Program random_ground_program(Rng& rng, const GroundProgramShape& shape) {
    Program p;
    std::size_t atoms = 1 + rng.below(shape.max_atoms);
    std::size_t rules = 1 + rng.below(shape.max_rules);
    for (std::size_t i = 0; i < rules; ++i) {
        Rule r = random_prop_rule(rng, atoms, true);
        r.id = "r" + std::to_string(i + 1);
        p.rules.push_back(std::move(r));
    }
    return p;
}

Program random_nonground_program(Rng& rng) {
    static const char* universe[] = {"a", "b", "c"};
    Program p;
    std::size_t id = 0;
    auto push = [&](Rule r) {
        r.id = "g" + std::to_string(++id);
        p.rules.push_back(std::move(r));
    };
    auto c = [&](std::size_t i) { return Term::constant(universe[i]); };
    auto fact = [](Atom a) {
        Rule r;
        r.head = std::move(a);
        return r;
    };
    for (std::size_t i = 0; i < 3; ++i)
        if (rng.chance(60)) push(fact(Atom{"base", {c(i)}}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (rng.chance(25)) push(fact(Atom{"edge", {c(i), c(j)}}));

    const char* idb[] = {"p", "q", "r"};
    const Term X = Term::variable("X");
    const Term Y = Term::variable("Y");
    std::size_t rules = 1 + rng.below(6);
    for (std::size_t k = 0; k < rules; ++k) {
        Rule r;
        // Positive domain literal binding X (and maybe Y).
        bool binary = rng.chance(50);
        if (binary) {
            r.body.push_back(Literal::positive(Atom{"edge", {X, Y}}));
        } else {
            r.body.push_back(Literal::positive(Atom{rng.chance(50) ? "base" : idb[rng.below(3)], {X}}));
        }
        if (rng.chance(40)) {
            Atom a{idb[rng.below(3)], {binary && rng.chance(50) ? Y : X}};
            r.body.push_back(rng.chance(50) ? Literal::negative(a) : Literal::positive(a));
        }
        if (binary && rng.chance(40)) r.body.push_back(Literal::compare(X, rng.chance(50) ? CompareOp::Ne : CompareOp::Eq, Y));
        if (!binary && rng.chance(20)) r.body.push_back(Literal::compare(X, CompareOp::Ne, c(rng.below(3))));
        Term head_arg = binary && rng.chance(50) ? Y : X;
        int kind = rng.between(0, 9);
        if (kind < 6) {
            r.kind = RuleKind::Normal;
            r.head = Atom{idb[rng.below(3)], {head_arg}};
        } else if (kind < 8) {
            r.kind = RuleKind::Choice;
            r.choice.elements.push_back({Atom{idb[rng.below(3)], {head_arg}}, {}});
            if (rng.chance(50)) r.choice.elements.push_back({Atom{idb[rng.below(3)], {X}}, {}});
            r.choice.lower = rng.between(0, 1);
            if (rng.chance(50)) r.choice.upper = 1;
        } else {
            r.kind = RuleKind::Denial;
        }
        push(std::move(r));
    }
    return p;
}

namespace {

HypothesisSpace random_space(Rng& rng, std::size_t atoms, std::size_t size) {
    HypothesisSpace space;
    std::vector<std::string> seen;
    for (std::size_t attempt = 0; space.size() < size && attempt < 20 * size; ++attempt) {
        Rule r;
        if (rng.chance(85)) {
            r.kind = RuleKind::Normal;
            r.head = prop(rng.below(atoms));
            add_body(rng, r, atoms, 2);
        } else {
            r.kind = RuleKind::Denial;
            add_body(rng, r, atoms, 2);
            if (r.body.empty()) r.body.push_back(Literal::positive(prop(rng.below(atoms))));
        }
        auto text = r.to_string();
        if (std::find(seen.begin(), seen.end(), text) != seen.end()) continue;
        seen.push_back(text);
        r.id = "s" + std::to_string(space.size() + 1);
        r.origin = Origin::LearnedJudgment;
        space.candidates.push_back({r, r.length(), Provenance::Explicit});
    }
    return space;
}

Program random_background(Rng& rng, std::size_t atoms, std::size_t max_rules) {
    Program p;
    std::size_t n = rng.below(max_rules + 1);
    for (std::size_t i = 0; i < n; ++i) {
        Rule r = random_prop_rule(rng, atoms, true);
        r.id = "b" + std::to_string(i + 1);
        p.rules.push_back(std::move(r));
    }
    return p;
}

} // namespace

RandomTask random_task(Rng& rng, std::size_t max_space, std::size_t max_examples) {
    RandomTask t;
    std::size_t atoms = 3 + rng.below(4);
    t.background = random_background(rng, atoms, 3);
    t.space = random_space(rng, atoms, 1 + rng.below(max_space));
    std::size_t examples = 1 + rng.below(max_examples);
    for (std::size_t i = 0; i < examples; ++i) {
        ExampleSource e;
        e.polarity = rng.chance(70) ? ExampleSource::Polarity::Positive : ExampleSource::Polarity::Negative;
        e.id = "e" + std::to_string(i + 1);
        auto chosen = pick_distinct(rng, atoms, rng.between(1, 3));
        for (auto a : chosen) (rng.chance(60) ? e.inclusions : e.exclusions).push_back(prop(a));
        for (auto a : pick_distinct(rng, atoms, rng.below(3))) {
            Rule f;
            f.head = prop(a);
            f.id = e.id + "#" + std::to_string(e.context.rules.size() + 1);
            f.origin = Origin::UserEvidence;
            e.context.rules.push_back(std::move(f));
        }
        t.examples.push_back(std::move(e));
    }
    return t;
}

RandomCautiousTask random_cautious_task(Rng& rng, std::size_t max_space) {
    RandomCautiousTask t;
    std::size_t atoms = 3 + rng.below(3);
    t.background = random_background(rng, atoms, 3);
    t.space = random_space(rng, atoms, 1 + rng.below(max_space));
    for (auto a : pick_distinct(rng, atoms, rng.between(1, 3))) (rng.chance(60) ? t.e_plus : t.e_minus).push_back(prop(a));
    return t;
}

} // namespace lexasp::testing
