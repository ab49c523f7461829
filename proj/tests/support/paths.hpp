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

#ifndef LEXASP_TESTS_PATHS_HPP
#define LEXASP_TESTS_PATHS_HPP

#include <filesystem>
#include <string>

namespace lexasp::testing {

inline std::filesystem::path source_path(const std::string& relative) {
    return std::filesystem::path(LEXASP_SOURCE_DIR) / relative;
}

} // namespace lexasp::testing

#endif
