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

#ifndef LEXASP_PARSER_HPP
#define LEXASP_PARSER_HPP

#include <lexasp/syntax.hpp>
#include <lexasp/task.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace lexasp {

struct ParseOptions {
    // Used in diagnostics and default rule ids (`source:line`).
    std::string source = "<input>";
    Origin origin = Origin::Article;
};

// Parses `.lp` text. Throws SyntaxError, SafetyError or DuplicateIdError.
//
// Recognised comment pragmas:
//   %!trace "template"   annotation for the next statement
//   %#id name            explicit id for the next statement
//   %#article 624 bis    ids of following statements are namespaced `art624bis`
// Any other `%#name args` line is kept in Program::directives.
Program parse_program(std::string_view text, const ParseOptions& options = {});

Program parse_program_file(const std::filesystem::path& path, Origin origin = Origin::Article);

// Parses `.task` text: background rules, `N ~ rule.` entries, mode
// declarations, `#maxv`, `#constant` and `#pos`/`#neg` examples.
LearningTaskSource parse_learning_task(std::string_view text, const ParseOptions& options = {});

LearningTaskSource parse_learning_task_file(const std::filesystem::path& path);

// A single ground atom such as `robbery("Giulio","Veronica")`.
Atom parse_ground_atom(std::string_view text);

// Exactly one statement (rule, fact, denial or choice rule).
Rule parse_rule(std::string_view text, const ParseOptions& options = {});

std::string read_file(const std::filesystem::path& path);

} // namespace lexasp

#endif
