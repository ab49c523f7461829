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

#ifndef LEXASP_CLI_HPP
#define LEXASP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lexasp {

// Exit codes of run_cli.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitUnsatisfiable = 3,
    kExitGate = 4,
};

// Runs one `lexasp` subcommand (solve, explain, learn, verify, kb). `args`
// excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lexasp

#endif
