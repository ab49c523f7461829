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

#include <lexasp/cli.hpp>
#include <lexasp/error.hpp>
#include <lexasp/service.hpp>

#include <httplib.h>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

int serve(const std::vector<std::string>& args) {
    std::string kb_dir = "kb";
    int port = 8080;
    if (const char* env = std::getenv("KB_DIR"); env && *env) kb_dir = env;
    if (const char* env = std::getenv("PORT"); env && *env) port = std::atoi(env);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--kb" && i + 1 < args.size()) {
            kb_dir = args[++i];
        } else if (args[i] == "--port" && i + 1 < args.size()) {
            port = std::atoi(args[++i].c_str());
        } else {
            std::cerr << "usage: lexasp serve [--kb DIR] [--port N]\n";
            return lexasp::kExitUsage;
        }
    }

    std::shared_ptr<const lexasp::KnowledgeBase> kb;
    try {
        kb = std::make_shared<const lexasp::KnowledgeBase>(lexasp::load_kb_dir(kb_dir));
    } catch (const lexasp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return lexasp::kExitParse;
    }
    lexasp::Service service(kb);

    httplib::Server server;
    auto route = [&service](const httplib::Request& req, httplib::Response& res) {
        lexasp::Request r{req.method, req.path, {}, req.body};
        for (const auto& [k, v] : req.params) r.query.emplace(k, v);
        auto out = service.handle(r);
        res.status = out.status;
        res.set_content(out.body, "application/json");
        res.set_header("Access-Control-Allow-Origin", "*");
    };
    const char* pattern = R"(/.*)";
    server.Get(pattern, route);
    server.Post(pattern, route);
    server.Delete(pattern, route);
    server.Options(pattern, [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });

    std::cerr << "lexasp: serving " << kb_dir << " on port " << port << "\n";
    if (!server.listen("0.0.0.0", port)) {
        std::cerr << "error: cannot listen on port " << port << "\n";
        return lexasp::kExitUsage;
    }
    return lexasp::kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && args.front() == "serve") return serve({args.begin() + 1, args.end()});
    return lexasp::run_cli(args, std::cout, std::cerr);
}
