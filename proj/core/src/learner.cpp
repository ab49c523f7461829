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
#include <lexasp/learner.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lexasp {

std::vector<std::string> Hypothesis::sort_key() const {
    std::vector<std::string> out;
    out.reserve(rules.size());
    for (const auto& r : rules) out.push_back(canonical_text(r));
    std::sort(out.begin(), out.end());
    return out;
}

std::string Hypothesis::to_string() const {
    std::string out;
    for (const auto& r : rules) out += r.to_string() + "\n";
    return out;
}

Hypothesis make_hypothesis(const HypothesisSpace& space, std::vector<std::size_t> members) {
    std::sort(members.begin(), members.end());
    Hypothesis h;
    for (std::size_t i : members) {
        h.rules.push_back(space.candidates.at(i).rule);
        h.total_length += space.candidates[i].length;
    }
    h.members = std::move(members);
    return h;
}

Program combine(const Program& background, const std::vector<Rule>& hypothesis, const Program& context) {
    // Plain concatenation: ids only matter for provenance here, and
    // candidates may legitimately reuse ids of the background.
    Program p = background;
    p.rules.insert(p.rules.end(), hypothesis.begin(), hypothesis.end());
    p.rules.insert(p.rules.end(), context.rules.begin(), context.rules.end());
    return p;
}

namespace {

std::optional<Model> witness_model(const GroundProgram& g, const ExampleSource& e) {
    std::vector<std::pair<AtomId, bool>> assume;
    for (const auto& a : e.inclusions) {
        auto id = g.find(a);
        if (!id) return std::nullopt;
        assume.emplace_back(*id, true);
    }
    for (const auto& a : e.exclusions)
        if (auto id = g.find(a)) assume.emplace_back(*id, false);
    return ModelEnumerator(g, std::move(assume)).next();
}

bool covered_by(const GroundProgram& g, const ExampleSource& e) {
    bool realised = witness_model(g, e).has_value();
    return e.polarity == ExampleSource::Polarity::Positive ? realised : !realised;
}

bool key_less(const Hypothesis& a, const Hypothesis& b) {
    if (a.total_length != b.total_length) return a.total_length < b.total_length;
    return a.sort_key() < b.sort_key();
}

// Calls `visit` for every subset of `pool` whose lengths sum to exactly `budget`.
void subsets_of_length(const HypothesisSpace& space, const std::vector<std::size_t>& pool, std::size_t budget,
                       const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
        if (left == 0) {
            visit(chosen);
            return;
        }
        for (std::size_t k = from; k < pool.size(); ++k) {
            std::size_t len = space.candidates[pool[k]].length;
            if (len == 0 || len > left) continue;
            chosen.push_back(pool[k]);
            rec(k + 1, left - len);
            chosen.pop_back();
        }
    };
    rec(0, budget);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

} // namespace

bool covers(const Program& background, const std::vector<Rule>& hypothesis, const ExampleSource& example) {
    return covered_by(ground_program(combine(background, hypothesis, example.context)), example);
}

CoverageResult check_coverage(const Program& background, const std::vector<Rule>& hypothesis,
                              const std::vector<ExampleSource>& examples) {
    CoverageResult out;
    for (const auto& e : examples) {
        auto g = ground_program(combine(background, hypothesis, e.context));
        auto w = witness_model(g, e);
        if (e.polarity == ExampleSource::Polarity::Positive) {
            out.covered.push_back(w.has_value());
            out.witness.push_back(w ? std::optional(model_atoms(g, *w)) : std::nullopt);
        } else {
            out.covered.push_back(!w.has_value());
            out.witness.push_back(std::nullopt);
        }
    }
    return out;
}

const std::vector<std::string>& StageReport::stage_names() {
    static const std::vector<std::string> names = {
        "Pre-processing",
        "Hypothesis space generation",
        "Conflict analysis (coverage checking)",
        "Counterexample search (post-hoc re-check)",
        "Hypothesis search",
    };
    return names;
}

std::string StageReport::to_string() const {
    std::ostringstream out;
    out << "space size: " << space_size << "\n";
    out << "pruned (inert): " << pruned << "\n";
    out << "hypotheses checked: " << hypotheses_checked << "\n";
    out << "coverage checks: " << coverage_checks << "\n";
    double total = 0;
    std::size_t width = 0;
    for (const auto& s : stages) width = std::max(width, s.name.size());
    out << std::fixed << std::setprecision(6);
    for (const auto& s : stages) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << s.name << s.seconds << " s\n";
        total += s.seconds;
    }
    out << std::left << std::setw(static_cast<int>(width) + 2) << "Total" << total << " s\n";
    return out.str();
}

LearnResult learn_optimal(const LearningTaskSource& task, const LearnOptions& options) {
    auto start = Clock::now();
    auto space = generate_hypothesis_space(task, options.space);
    double generation = seconds_since(start);
    auto result = learn_optimal(task.background, space, task.examples, options);
    for (auto& s : result.report.stages)
        if (s.name == "Hypothesis space generation") s.seconds = generation;
    return result;
}

LearnResult learn_optimal(const Program& background, const HypothesisSpace& space,
                          const std::vector<ExampleSource>& examples, const LearnOptions& options) {
    LearnResult result;
    result.space = space;
    StageReport& report = result.report;
    report.space_size = space.size();

    // Pre-processing: drop candidates without a ground instance in any
    // example. Such a rule never changes a model and only adds length.
    auto t0 = Clock::now();
    std::vector<char> live(space.size(), 0);
    {
        std::vector<Rule> tagged;
        for (std::size_t i = 0; i < space.size(); ++i) {
            Rule r = space.candidates[i].rule;
            r.id = "\x01" + std::to_string(i);
            tagged.push_back(std::move(r));
        }
        for (const auto& e : examples) {
            auto g = ground_program(combine(background, tagged, e.context));
            for (const auto& r : g.rules()) {
                const auto& id = r.id();
                if (!id.empty() && id[0] == '\x01') live[std::stoul(id.substr(1))] = 1;
            }
        }
    }
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (live[i]) pool.push_back(i);
    report.pruned = space.size() - pool.size();
    double preprocessing = seconds_since(t0);

    // Hypothesis search by iterative deepening on total length.
    auto t1 = Clock::now();
    double coverage_time = 0;
    std::size_t max_length = 0;
    for (std::size_t i : pool) max_length += space.candidates[i].length;
    if (options.max_total_length) max_length = std::min(max_length, options.max_total_length);

    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);
    std::optional<Hypothesis> best;
    for (std::size_t length = 0; length <= max_length && !best; ++length) {
        subsets_of_length(space, pool, length, [&](const std::vector<std::size_t>& members) {
            ++report.hypotheses_checked;
            Hypothesis h = make_hypothesis(space, members);
            auto tc = Clock::now();
            bool ok = true;
            for (std::size_t k = 0; k < order.size() && ok; ++k) {
                ++report.coverage_checks;
                if (!covers(background, h.rules, examples[order[k]])) {
                    ok = false;
                    // Try the failing example first next time.
                    std::rotate(order.begin(), order.begin() + k, order.begin() + k + 1);
                }
            }
            coverage_time += seconds_since(tc);
            if (ok && (!best || key_less(h, *best))) best = std::move(h);
        });
    }
    double search = seconds_since(t1) - coverage_time;

    auto t2 = Clock::now();
    if (best) {
        auto check = check_coverage(background, best->rules, examples);
        if (std::find(check.covered.begin(), check.covered.end(), false) != check.covered.end())
            throw LearningError("internal error: learned hypothesis fails the post-hoc coverage check");
    }
    double recheck = seconds_since(t2);

    report.stages = {{"Pre-processing", preprocessing},
                     {"Hypothesis space generation", 0.0},
                     {"Conflict analysis (coverage checking)", coverage_time},
                     {"Counterexample search (post-hoc re-check)", recheck},
                     {"Hypothesis search", std::max(0.0, search)}};
    result.hypothesis = std::move(best);
    return result;
}

std::optional<Hypothesis> learn_exhaustive(const Program& background, const HypothesisSpace& space,
                                           const std::vector<ExampleSource>& examples, std::size_t max_space) {
    if (space.size() > max_space)
        throw std::invalid_argument("exhaustive search limited to " + std::to_string(max_space) + " candidates");
    std::optional<Hypothesis> best;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << space.size()); ++bits) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < space.size(); ++i)
            if (bits & (std::uint64_t{1} << i)) members.push_back(i);
        Hypothesis h = make_hypothesis(space, members);
        if (best && h.total_length > best->total_length) continue;
        bool ok = std::all_of(examples.begin(), examples.end(),
                              [&](const ExampleSource& e) { return covers(background, h.rules, e); });
        if (ok && (!best || key_less(h, *best))) best = std::move(h);
    }
    return best;
}

std::optional<Hypothesis> cautious_learn(const Program& background, const HypothesisSpace& space,
                                         const std::vector<Atom>& e_plus, const std::vector<Atom>& e_minus,
                                         const CautiousOptions& options) {
    std::vector<std::size_t> pool(space.size());
    std::iota(pool.begin(), pool.end(), 0);
    std::size_t max_length = 0;
    for (const auto& c : space.candidates) max_length += c.length;

    auto accepted = [&](const Hypothesis& h) {
        auto g = ground_program(combine(background, h.rules));
        if (!options.allow_inconsistent) return cautious_entails(g, e_plus, e_minus);
        // Every model satisfies the example; vacuous when there is none.
        ModelEnumerator models(g);
        while (auto m = models.next()) {
            for (const auto& a : e_plus) {
                auto id = g.find(a);
                if (!id || !std::binary_search(m->begin(), m->end(), *id)) return false;
            }
            for (const auto& a : e_minus) {
                auto id = g.find(a);
                if (id && std::binary_search(m->begin(), m->end(), *id)) return false;
            }
        }
        return true;
    };

    for (std::size_t length = 0; length <= max_length; ++length) {
        std::optional<Hypothesis> best;
        subsets_of_length(space, pool, length, [&](const std::vector<std::size_t>& members) {
            Hypothesis h = make_hypothesis(space, members);
            if (best && !key_less(h, *best)) return;
            if (accepted(h)) best = std::move(h);
        });
        if (best) return best;
    }
    return std::nullopt;
}

} // namespace lexasp
