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

#ifndef LEXASP_ERROR_HPP
#define LEXASP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexasp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lexical or grammatical error; line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SafetyError : public Error {
public:
    SafetyError(const std::string& rule_id, const std::string& variable);

    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

class DuplicateIdError : public Error {
public:
    explicit DuplicateIdError(const std::string& id);

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

// Raised by the grounder when a program violates a grounding precondition,
// e.g. a choice condition over a predicate that is not fact-defined.
class GroundingError : public Error {
public:
    using Error::Error;
};

class LearningError : public Error {
public:
    using Error::Error;
};

class KbError : public Error {
public:
    using Error::Error;
};

} // namespace lexasp

#endif
