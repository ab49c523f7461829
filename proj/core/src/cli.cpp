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
#include <lexasp/explainer.hpp>
#include <lexasp/kb.hpp>
#include <lexasp/learner.hpp>
#include <lexasp/parser.hpp>
#include <lexasp/verifier.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace lexasp {

namespace fs = std::filesystem;

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string default_kb_dir() {
    if (const char* env = std::getenv("KB_DIR"); env && *env) return env;
    return "kb";
}

Program load_inputs(const std::vector<std::string>& files, const KnowledgeBase* kb) {
    Program p = kb ? kb->program : Program{};
    for (const auto& f : files) p.merge(parse_program_file(f));
    return p;
}

std::vector<Signature> parse_projection(const std::string& spec, const KnowledgeBase* kb) {
    if (spec == "verdicts") {
        if (!kb) throw UsageError("--project verdicts needs --kb");
        return kb->verdicts;
    }
    std::vector<Signature> out;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto slash = item.rfind('/');
        if (slash == std::string::npos) throw UsageError("projection entries look like name/arity: " + item);
        try {
            out.push_back({item.substr(0, slash), std::stoul(item.substr(slash + 1))});
        } catch (const std::exception&) {
            throw UsageError("bad arity in " + item);
        }
    }
    return out;
}

const JudgmentRecord* find_case(const KnowledgeBase& kb, const std::string& arg, std::vector<JudgmentRecord>& extra) {
    if (auto* j = kb.judgment(arg)) return j;
    if (auto* j = kb.judgment(fs::path(arg).stem().string())) return j;
    if (fs::exists(arg)) {
        extra.push_back(load_judgment(arg));
        return &extra.back();
    }
    throw UsageError("unknown case " + arg);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lexasp: answer-set legal reasoning workbench", "lexasp"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Enumerate stable models");
    std::vector<std::string> solve_files;
    std::size_t models = 0;
    std::string project_spec;
    std::string solve_kb;
    bool dump_ground = false;
    solve->add_option("files", solve_files, "Program files")->required()->check(CLI::ExistingFile);
    solve->add_option("--models,-n", models, "Stop after N models (0 = all)");
    solve->add_option("--project", project_spec, "'verdicts' or a list name/arity,...");
    solve->add_option("--kb", solve_kb, "Knowledge base directory to solve on top of");
    solve->add_flag("--dump-ground", dump_ground, "Print the ground program instead of solving");

    // explain
    auto* explain = app.add_subcommand("explain", "Explain an atom of a stable model");
    std::vector<std::string> explain_files;
    std::string query_text;
    bool tree = false;
    std::string dag_format;
    std::size_t model_index = 1;
    std::string explain_kb;
    bool show_negative = false;
    explain->add_option("files", explain_files, "Program files")->required()->check(CLI::ExistingFile);
    explain->add_option("--query,-q", query_text, "Ground atom to explain")->required();
    auto* tree_flag = explain->add_flag("--tree", tree, "Print a justification tree (default)");
    explain->add_option("--dag", dag_format, "Print the support DAG")
        ->check(CLI::IsMember({"dot", "json"}))
        ->excludes(tree_flag);
    explain->add_option("--model,-m", model_index, "Which stable model, counting from 1")->check(CLI::PositiveNumber);
    explain->add_option("--kb", explain_kb, "Knowledge base directory to solve on top of");
    explain->add_flag("--negative", show_negative, "Draw negated body literals in DOT output");

    // learn
    auto* learn = app.add_subcommand("learn", "Learn an optimal hypothesis");
    std::string task_file;
    bool report = false;
    std::size_t cap = SpaceOptions{}.cap;
    learn->add_option("task", task_file, "Learning task file")->required()->check(CLI::ExistingFile);
    learn->add_flag("--report", report, "Print the stage report");
    learn->add_option("--cap", cap, "Maximum hypothesis space size");

    // verify
    auto* verify = app.add_subcommand("verify", "Check judgment cases against the knowledge base");
    std::vector<std::string> cases;
    std::string verify_kb = default_kb_dir();
    std::optional<std::size_t> gap;
    bool as_json = false;
    bool no_cumulative = false;
    verify->add_option("cases", cases, "Case ids or .case files (default: every shipped judgment)");
    verify->add_option("--kb", verify_kb, "Knowledge base directory")->capture_default_str();
    verify->add_option("--gap", gap, "Explore subsets dropping up to N facts");
    verify->add_flag("--json", as_json, "Machine-readable reports");
    verify->add_flag("--no-cumulative", no_cumulative, "Skip the cumulative prefix checks");

    // kb
    auto* kbcmd = app.add_subcommand("kb", "Inspect the knowledge base");
    kbcmd->require_subcommand(1);
    std::string kb_dir = default_kb_dir();
    auto* kb_list = kbcmd->add_subcommand("list", "List article sets and judgments");
    auto* kb_lint = kbcmd->add_subcommand("lint", "Lint the knowledge base or the given files");
    for (auto* sub : {kb_list, kb_lint})
        sub->add_option("--kb", kb_dir, "Knowledge base directory")->capture_default_str();
    std::vector<std::string> lint_files;
    kb_lint->add_option("files", lint_files, "Program files (default: the knowledge base)")->check(CLI::ExistingFile);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve) {
            std::optional<KnowledgeBase> kb;
            if (!solve_kb.empty()) kb = load_kb_dir(solve_kb);
            auto program = load_inputs(solve_files, kb ? &*kb : nullptr);
            auto projection = project_spec.empty() ? std::vector<Signature>{}
                                                   : parse_projection(project_spec, kb ? &*kb : nullptr);
            auto ground = ground_program(program);
            if (dump_ground) {
                out << ground.to_string();
                return kExitOk;
            }
            ModelEnumerator e(ground);
            std::size_t count = 0;
            while (auto m = e.next()) {
                ++count;
                if (project_spec.empty()) {
                    out << format_model(ground, *m) << "\n";
                } else {
                    auto atoms = project(model_atoms(ground, *m), projection);
                    for (std::size_t i = 0; i < atoms.size(); ++i) out << (i ? " " : "") << atoms[i];
                    out << "\n";
                }
                if (models && count == models) break;
            }
            if (count == 0) out << "UNSATISFIABLE\n";
            return kExitOk;
        }

        if (*explain) {
            std::optional<KnowledgeBase> kb;
            if (!explain_kb.empty()) kb = load_kb_dir(explain_kb);
            auto ground = ground_program(load_inputs(explain_files, kb ? &*kb : nullptr));
            Atom query = parse_ground_atom(query_text);
            ModelEnumerator e(ground);
            std::optional<Model> model;
            for (std::size_t k = 0; k < model_index; ++k) {
                model = e.next();
                if (!model) break;
            }
            if (!model) {
                err << "error: the program has fewer than " << model_index << " stable model(s)\n";
                return kExitUsage;
            }
            auto id = ground.find(query);
            if (!id || !std::binary_search(model->begin(), model->end(), *id)) {
                err << "error: " << query.to_string() << " does not hold in model " << model_index << "\n";
                return kExitUsage;
            }
            if (dag_format.empty()) {
                out << justification_tree(ground, *model, query).render();
            } else {
                auto dag = support_dag(ground, *model);
                dag = reachable_from(dag, *dag.find(query));
                out << export_dag(dag, dag_format == "dot" ? DagFormat::Dot : DagFormat::Json, {show_negative});
                if (dag_format == "json") out << "\n";
            }
            return kExitOk;
        }

        if (*learn) {
            auto task = parse_learning_task_file(task_file);
            LearnOptions options;
            options.space.cap = cap;
            auto result = learn_optimal(task, options);
            if (!result.hypothesis) {
                out << "UNSATISFIABLE\n";
                if (report) out << "\n" << result.report.to_string();
                return kExitUnsatisfiable;
            }
            out << result.hypothesis->to_string();
            if (report) out << "\n" << result.report.to_string();
            return kExitOk;
        }

        if (*verify) {
            auto kb = load_kb_dir(verify_kb);
            std::vector<JudgmentRecord> extra;
            extra.reserve(cases.size());
            std::vector<const JudgmentRecord*> targets;
            if (cases.empty()) {
                for (const auto& j : kb.judgments) targets.push_back(&j);
            } else {
                for (const auto& c : cases) targets.push_back(find_case(kb, c, extra));
            }
            VerifyOptions options;
            options.cumulative = !no_cumulative;
            options.subset_gap = gap;
            bool all_pass = true;
            nlohmann::json docs = nlohmann::json::array();
            for (const auto* j : targets) {
                auto r = verify_case(kb.program, *j, kb.verdicts, options);
                all_pass = all_pass && r.passes_gate();
                if (as_json) {
                    docs.push_back(nlohmann::json::parse(r.to_json()));
                } else {
                    out << r.summary();
                }
            }
            if (as_json) out << docs.dump(2) << "\n";
            return all_pass ? kExitOk : kExitGate;
        }

        if (*kb_list) {
            auto kb = load_kb_dir(kb_dir);
            for (const auto& a : kb.article_sets) {
                out << a.id << ": articles";
                for (const auto& n : a.articles) out << " " << n;
                out << " (" << a.program.rules.size() << " rules)\n";
            }
            for (const auto& j : kb.judgments) {
                out << j.id << ": " << j.citation << ", " << j.date << ", " << j.facts.size() << " facts, "
                    << j.learned_rules.size() << " learned rule(s)" << (j.synthetic ? ", synthetic" : "") << "\n";
            }
            return kExitOk;
        }

        if (*kb_lint) {
            Program program = lint_files.empty() ? load_kb_dir(kb_dir).program : load_kb({lint_files.begin(), lint_files.end()});
            bool errors = false;
            for (const auto& f : lint_program(program)) {
                bool is_error = f.severity == LintFinding::Severity::Error;
                errors = errors || is_error;
                out << (is_error ? "error: " : "warning: ") << f.message << "\n";
            }
            return errors ? kExitParse : kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const LearningError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitUsage;
}

} // namespace lexasp
