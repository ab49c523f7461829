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

// Source-level representation of an inductive learning task.

#ifndef LEXASP_TASK_HPP
#define LEXASP_TASK_HPP

#include <lexasp/syntax.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lexasp {

// Placeholder inside a mode schema: var(t), const(t) or a fixed term.
struct ModeArg {
    enum class Kind { Var, Const, Fixed };
    Kind kind = Kind::Var;
    std::string type;  // Var / Const
    Term fixed;        // Fixed

    std::string to_string() const;
    friend bool operator==(const ModeArg&, const ModeArg&) = default;
};

struct ModeAtom {
    std::string predicate;
    std::vector<ModeArg> args;

    std::string to_string() const;
    friend bool operator==(const ModeAtom&, const ModeAtom&) = default;
};

enum class ModeKind { Head, HeadAggregate, Body, Condition };

enum class ModeFlag { Positive, Symmetric, AntiReflexive };

struct ModeDecl {
    ModeKind kind = ModeKind::Head;
    int recall = 1;
    ModeAtom schema;  // Head / HeadAggregate / Body
    // Condition schemas: lhs op rhs over placeholders.
    ModeArg lhs;
    CompareOp op = CompareOp::Ne;
    ModeArg rhs;
    std::set<ModeFlag> flags;

    bool has(ModeFlag f) const { return flags.contains(f); }
};

struct ExampleSource {
    enum class Polarity { Positive, Negative };
    Polarity polarity = Polarity::Positive;
    std::string id;
    std::vector<Atom> inclusions;
    std::vector<Atom> exclusions;
    Program context;
};

struct ExplicitCandidate {
    std::size_t length = 0;
    Rule rule;
};

struct LearningTaskSource {
    Program background;
    std::vector<ExplicitCandidate> explicit_space;
    std::vector<ModeDecl> modes;
    std::optional<int> maxv;
    // Constant pools for const(t) placeholders, from `#constant(t, c).`
    std::map<std::string, std::vector<Term>> constants;
    std::vector<ExampleSource> examples;
};

} // namespace lexasp

#endif
