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
#include <lexasp/parser.hpp>
#include <lexasp/service.hpp>
#include <lexasp/verifier.hpp>

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace lexasp {

using nlohmann::json;

namespace {

Response reply(int status, json doc) { return {status, doc.dump(2)}; }

Response error(int status, const std::string& message) {
    return reply(status, {{"schema", "lexasp.error/1"}, {"status", status}, {"error", message}});
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(path);
    while (std::getline(in, part, '/'))
        if (!part.empty()) out.push_back(part);
    return out;
}

Atom parse_fact(std::string text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    if (!text.empty() && text.back() == '.') text.pop_back();
    return parse_ground_atom(text);
}

json source_json(const SourceRef& s) {
    static const char* kinds[] = {"article", "judgment", "fact"};
    json out{{"kind", kinds[static_cast<int>(s.kind)]}, {"id", s.id}, {"rule", s.rule_id}};
    if (s.court_level) out["court_level"] = *s.court_level;
    if (s.date) out["date"] = *s.date;
    return out;
}

json finding_json(const ContradictionFinding& f) {
    json applied = json::array();
    for (auto m : f.applied) applied.push_back(to_string(m));
    std::vector<std::size_t> models;
    for (auto k : f.models) models.push_back(k + 1);
    return {{"atom", f.atom().to_string()},
            {"claim_a", f.claim_a},
            {"claim_b", f.claim_b},
            {"subject", f.subject.to_label()},
            {"source_a", source_json(f.source_a)},
            {"source_b", source_json(f.source_b)},
            {"resolution", to_string(f.resolution)},
            {"applied", applied},
            {"diagnostics", f.diagnostics},
            {"scenarios", models}};
}

} // namespace

ScenarioSet compute_scenarios(const KnowledgeBase& kb, const std::vector<Atom>& facts,
                              const std::vector<Rule>& constraints, std::size_t limit) {
    Program base = kb.program;
    base.rules.insert(base.rules.end(), constraints.begin(), constraints.end());
    Program p = base;
    auto f = facts_program(facts, "case");
    p.rules.insert(p.rules.end(), f.rules.begin(), f.rules.end());

    ScenarioSet set{ground_program(p), {}, {}, false};
    auto models = enumerate_stable_models(set.ground, limit + 1);
    if (models.size() > limit) {
        set.truncated = true;
        models.resize(limit);
    }
    set.report = detect_contradictions(base, facts, kb.judgments, limit);
    for (std::size_t k = 0; k < models.size(); ++k) {
        Scenario s;
        s.model = std::move(models[k]);
        auto supports = compute_supports(set.ground, s.model);
        auto atoms = model_atoms(set.ground, s.model);
        s.verdicts = project(atoms, kb.verdicts);
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const auto& a = atoms[i];
            if (supports.assumed[s.model[i]]) s.assumptions.push_back(a.to_string());
            if (a.predicate == "using_judgment" && a.args.size() == 1) s.markers.push_back(a.args[0].to_label());
        }
        for (std::size_t i = 0; i < set.report.findings.size(); ++i) {
            const auto& m = set.report.findings[i].models;
            if (std::find(m.begin(), m.end(), k) != m.end()) s.findings.push_back(i);
        }
        set.scenarios.push_back(std::move(s));
    }
    return set;
}

Service::Service(std::shared_ptr<const KnowledgeBase> kb, ServiceOptions options)
    : kb_(std::move(kb)), options_(options), rng_(std::random_device{}()) {
    if (!kb_) throw Error("service needs a knowledge base");
}

std::size_t Service::session_count() const {
    std::lock_guard lock(sessions_mutex_);
    return sessions_.size();
}

std::shared_ptr<Service::Session> Service::lookup(const std::string& id) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::string Service::fresh_id() {
    // Caller holds sessions_mutex_.
    for (;;) {
        std::ostringstream out;
        out << std::hex << std::setw(16) << std::setfill('0') << rng_();
        if (!sessions_.count(out.str())) return out.str();
    }
}

Response Service::handle(const Request& request) {
    auto parts = split_path(request.path);
    const auto& m = request.method;
    try {
        if (parts.size() == 2 && parts[0] == "kb" && parts[1] == "articles") {
            if (m != "GET") return error(405, "method not allowed");
            return articles();
        }
        if (parts.empty() || parts[0] != "cases") return error(404, "no route for " + request.path);
        if (parts.size() == 1) {
            if (m != "POST") return error(405, "method not allowed");
            return create_case(request.body);
        }
        if (parts.size() == 2 && m == "DELETE") return delete_case(parts[1]);

        auto session = lookup(parts[1]);
        if (!session) return error(404, "unknown case session " + parts[1]);
        std::lock_guard lock(session->mutex);

        if (parts.size() == 2) {
            if (m != "GET") return error(405, "method not allowed");
            return get_case(*session);
        }
        const auto& what = parts[2];
        if (parts.size() == 3 && what == "facts") {
            if (m == "POST") return add_facts(*session, request.body);
            if (m == "DELETE") return remove_fact(*session, request.query);
            return error(405, "method not allowed");
        }
        if (parts.size() == 3 && what == "constraints") {
            if (m != "POST") return error(405, "method not allowed");
            return add_constraint(*session, request.body);
        }
        if (parts.size() == 3 && what == "scenarios") {
            if (m != "GET") return error(405, "method not allowed");
            return list_scenarios(*session);
        }
        if (parts.size() == 5 && what == "scenarios" && parts[4] == "explanation") {
            if (m != "GET") return error(405, "method not allowed");
            return explanation(*session, parts[3], request.query);
        }
        return error(404, "no route for " + request.path);
    } catch (const json::exception& e) {
        return error(400, std::string("malformed request body: ") + e.what());
    } catch (const Error& e) {
        return error(500, e.what());
    }
}

Response Service::articles() const {
    json sets = json::array();
    for (const auto& a : kb_->article_sets) {
        json rules = json::array();
        for (const auto& r : a.program.rules) {
            json rule{{"id", r.id}, {"text", r.to_string()}};
            if (r.annotation) rule["annotation"] = *r.annotation;
            rules.push_back(std::move(rule));
        }
        sets.push_back({{"id", a.id}, {"articles", a.articles}, {"rules", rules}});
    }
    std::set<std::pair<std::string, std::size_t>> vocab;
    auto note = [&](const Atom& a) { vocab.insert({a.predicate, a.args.size()}); };
    for (const auto& r : kb_->program.rules) {
        if (r.kind == RuleKind::Normal) note(r.head);
        for (const auto& e : r.choice.elements) note(e.atom);
        for (const auto& l : r.body)
            if (l.kind != LiteralKind::Comparison) note(l.atom);
    }
    json vocabulary = json::array();
    for (const auto& [p, n] : vocab) vocabulary.push_back({{"predicate", p}, {"arity", n}});
    json verdicts = json::array();
    for (const auto& s : kb_->verdicts) verdicts.push_back(s.to_string());
    json judgments = json::array();
    for (const auto& j : kb_->judgments)
        judgments.push_back({{"id", j.id}, {"citation", j.citation}, {"court_level", j.court_level}, {"date", j.date},
                             {"synthetic", j.synthetic}});
    return reply(200, {{"schema", "lexasp.articles/1"},
                       {"article_sets", sets},
                       {"vocabulary", vocabulary},
                       {"verdicts", verdicts},
                       {"judgments", judgments}});
}

Response Service::create_case(const std::string& body) {
    std::vector<Atom> facts;
    if (!body.empty()) {
        auto doc = json::parse(body);
        for (const auto& f : doc.value("facts", json::array())) {
            try {
                facts.push_back(parse_fact(f.get<std::string>()));
            } catch (const Error& e) {
                return error(422, e.what());
            }
        }
    }
    auto session = std::make_shared<Session>();
    for (auto& f : facts)
        if (std::find(session->facts.begin(), session->facts.end(), f) == session->facts.end())
            session->facts.push_back(std::move(f));
    {
        std::lock_guard lock(sessions_mutex_);
        session->id = fresh_id();
        sessions_.emplace(session->id, session);
    }
    std::lock_guard lock(session->mutex);
    auto r = get_case(*session);
    r.status = 201;
    return r;
}

Response Service::get_case(Session& s) const {
    json facts = json::array();
    for (const auto& f : s.facts) facts.push_back(f.to_string());
    json constraints = json::array();
    for (const auto& c : s.constraints) constraints.push_back({{"id", c.id}, {"text", c.to_string()}});
    return reply(200, {{"schema", "lexasp.case/1"}, {"id", s.id}, {"facts", facts}, {"constraints", constraints}});
}

Response Service::add_facts(Session& s, const std::string& body) {
    auto doc = json::parse(body);
    std::vector<std::string> texts;
    if (doc.contains("fact")) texts.push_back(doc.at("fact").get<std::string>());
    for (const auto& f : doc.value("facts", json::array())) texts.push_back(f.get<std::string>());
    if (texts.empty()) return error(422, "expected \"fact\" or \"facts\"");
    std::vector<Atom> parsed;
    for (const auto& t : texts) {
        try {
            parsed.push_back(parse_fact(t));
        } catch (const Error& e) {
            return error(422, e.what());
        }
    }
    for (auto& a : parsed)
        if (std::find(s.facts.begin(), s.facts.end(), a) == s.facts.end()) s.facts.push_back(std::move(a));
    s.cache.reset();
    return get_case(s);
}

Response Service::remove_fact(Session& s, const std::map<std::string, std::string>& query) {
    auto it = query.find("atom");
    if (it == query.end()) return error(422, "missing query parameter 'atom'");
    Atom a;
    try {
        a = parse_fact(it->second);
    } catch (const Error& e) {
        return error(422, e.what());
    }
    auto pos = std::find(s.facts.begin(), s.facts.end(), a);
    if (pos == s.facts.end()) return error(404, "fact " + a.to_string() + " is not in the case");
    s.facts.erase(pos);
    s.cache.reset();
    return get_case(s);
}

Response Service::add_constraint(Session& s, const std::string& body) {
    auto doc = json::parse(body);
    auto text = doc.at("constraint").get<std::string>();
    Program with;
    try {
        ParseOptions opts;
        opts.source = "<constraint>";
        Rule rule = parse_rule(text, opts);
        Program current = kb_->program;
        current.rules.insert(current.rules.end(), s.constraints.begin(), s.constraints.end());
        with = add_evidence_constraint(current, std::move(rule));
    } catch (const Error& e) {
        return error(422, e.what());
    }
    s.constraints.push_back(with.rules.back());
    s.cache.reset();
    return get_case(s);
}

std::shared_ptr<const ScenarioSet> Service::scenarios(Session& s) {
    if (!s.cache)
        s.cache = std::make_shared<const ScenarioSet>(
            compute_scenarios(*kb_, s.facts, s.constraints, options_.max_scenarios));
    return s.cache;
}

Response Service::list_scenarios(Session& s) {
    auto set = scenarios(s);
    if (set->scenarios.empty())
        return reply(409, {{"schema", "lexasp.scenarios/1"},
                           {"case", s.id},
                           {"status", "inconsistent"},
                           {"error", "no stable model: the facts and constraints are inconsistent with the knowledge base"},
                           {"count", 0},
                           {"scenarios", json::array()}});
    json list = json::array();
    for (std::size_t k = 0; k < set->scenarios.size(); ++k) {
        const auto& sc = set->scenarios[k];
        json judgments = json::array();
        for (const auto& marker : sc.markers) {
            json j{{"marker", marker}};
            if (auto it = kb_->markers.find(marker); it != kb_->markers.end()) j["judgment"] = it->second;
            judgments.push_back(std::move(j));
        }
        json findings = json::array();
        for (auto i : sc.findings) findings.push_back(finding_json(set->report.findings[i]));
        list.push_back({{"index", k + 1},
                        {"verdicts", sc.verdicts},
                        {"assumptions", sc.assumptions},
                        {"judgment_based", !sc.markers.empty()},
                        {"using_judgment", judgments},
                        {"contradictions", findings}});
    }
    return reply(200, {{"schema", "lexasp.scenarios/1"},
                       {"case", s.id},
                       {"status", "ok"},
                       {"count", list.size()},
                       {"truncated", set->truncated},
                       {"scenarios", list}});
}

Response Service::explanation(Session& s, const std::string& index, const std::map<std::string, std::string>& query) {
    std::size_t k = 0;
    try {
        std::size_t used = 0;
        k = std::stoul(index, &used);
        if (used != index.size()) throw std::invalid_argument(index);
    } catch (const std::exception&) {
        return error(404, "unknown scenario " + index);
    }
    auto set = scenarios(s);
    if (k == 0 || k > set->scenarios.size()) return error(404, "unknown scenario " + index);
    const auto& model = set->scenarios[k - 1].model;

    std::string format = "dag";
    if (auto it = query.find("format"); it != query.end()) format = it->second;
    if (format != "dag" && format != "tree") return error(422, "format must be dag or tree");

    std::optional<Atom> atom;
    if (auto it = query.find("query"); it != query.end() && !it->second.empty()) {
        try {
            atom = parse_fact(it->second);
        } catch (const Error& e) {
            return error(422, e.what());
        }
    }
    std::optional<AtomId> id;
    if (atom) {
        id = set->ground.find(*atom);
        if (!id || !std::binary_search(model.begin(), model.end(), *id))
            return error(404, atom->to_string() + " does not hold in scenario " + index);
    }

    json doc{{"schema", "lexasp.explanation/1"}, {"case", s.id}, {"scenario", k}, {"format", format}};
    if (atom) doc["query"] = atom->to_string();
    if (format == "tree") {
        if (!atom) return error(422, "tree explanations need a query atom");
        auto tree = justification_tree(set->ground, model, *atom);
        doc["text"] = tree.render();
        doc["tree"] = json::parse(tree.to_json());
    } else {
        auto dag = support_dag(set->ground, model);
        if (atom) dag = reachable_from(dag, *dag.find(*atom));
        doc["dag"] = json::parse(export_dag(dag, DagFormat::Json));
    }
    return reply(200, doc);
}

Response Service::delete_case(const std::string& id) {
    std::lock_guard lock(sessions_mutex_);
    if (!sessions_.erase(id)) return error(404, "unknown case session " + id);
    return reply(200, {{"schema", "lexasp.case/1"}, {"id", id}, {"deleted", true}});
}

} // namespace lexasp
