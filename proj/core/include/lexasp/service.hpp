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

// HTTP/JSON case-session service, independent of any HTTP library.

#ifndef LEXASP_SERVICE_HPP
#define LEXASP_SERVICE_HPP

#include <lexasp/explainer.hpp>
#include <lexasp/kb.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

namespace lexasp {

struct Scenario {
    Model model;
    std::vector<std::string> verdicts;     // projection on the verdict manifest
    std::vector<std::string> assumptions;  // atoms selected by a free choice
    std::vector<std::string> markers;      // using_judgment markers present
    std::vector<std::size_t> findings;     // indices into ScenarioSet::report.findings
};

struct ScenarioSet {
    GroundProgram ground;
    std::vector<Scenario> scenarios;
    ContradictionReport report;
    bool truncated = false;
};

// kb ∪ constraints ∪ facts, solved and annotated. Scenario order is the
// solver's model order.
ScenarioSet compute_scenarios(const KnowledgeBase& kb, const std::vector<Atom>& facts,
                              const std::vector<Rule>& constraints, std::size_t limit);

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;  // JSON
};

struct ServiceOptions {
    std::size_t max_scenarios = 1000;
};

class Service {
public:
    explicit Service(std::shared_ptr<const KnowledgeBase> kb, ServiceOptions options = {});

    // Thread-safe. Requests on one session are serialized; requests on
    // different sessions share only the knowledge base.
    Response handle(const Request& request);

    std::size_t session_count() const;

private:
    struct Session {
        std::mutex mutex;
        std::string id;
        std::vector<Atom> facts;
        std::vector<Rule> constraints;
        std::shared_ptr<const ScenarioSet> cache;
    };

    std::shared_ptr<Session> lookup(const std::string& id) const;
    std::string fresh_id();
    std::shared_ptr<const ScenarioSet> scenarios(Session& s);

    Response articles() const;
    Response create_case(const std::string& body);
    Response get_case(Session& s) const;
    Response add_facts(Session& s, const std::string& body);
    Response remove_fact(Session& s, const std::map<std::string, std::string>& query);
    Response add_constraint(Session& s, const std::string& body);
    Response list_scenarios(Session& s);
    Response explanation(Session& s, const std::string& index, const std::map<std::string, std::string>& query);
    Response delete_case(const std::string& id);

    std::shared_ptr<const KnowledgeBase> kb_;
    ServiceOptions options_;
    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mt19937_64 rng_;
};

} // namespace lexasp

#endif
