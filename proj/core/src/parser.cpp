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

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace lexasp {

std::string ModeArg::to_string() const {
    switch (kind) {
        case Kind::Var: return "var(" + type + ")";
        case Kind::Const: return "const(" + type + ")";
        case Kind::Fixed: return fixed.to_string();
    }
    return {};
}

std::string ModeAtom::to_string() const {
    if (args.empty()) return predicate;
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += args[i].to_string();
    }
    return out + ")";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    End,
    Ident,
    Variable,
    String,
    Integer,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semicolon,
    Dot,
    DotDot,
    If,
    Colon,
    Tilde,
    Op,
    Hash,
    Not,
    Pragma,
};

enum class PragmaKind { Trace, Id, Article, Other };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0;
    CompareOp op = CompareOp::Eq;
    PragmaKind pragma = PragmaKind::Other;
    std::string pragma_arg;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    Lexer(std::string_view text, const std::string& source) : text_(text), source_(source) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            Token t = next();
            bool end = t.kind == Tok::End;
            out.push_back(std::move(t));
            if (end) break;
        }
        return out;
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char get() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(source_, line_, column_, what); }

    std::string read_string_body() {
        // Opening quote already consumed.
        std::string out;
        for (;;) {
            if (pos_ >= text_.size() || peek() == '\n') fail("unterminated string");
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) fail("unterminated string");
                char e = get();
                switch (e) {
                    case 'n': out.push_back('\n'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    default: fail(std::string("invalid escape \\") + e);
                }
                continue;
            }
            out.push_back(c);
        }
        return out;
    }

    Token pragma(Token t) {
        // At '%' followed by '!' or '#'.
        get();
        char marker = get();
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-') name.push_back(get());
        std::string rest;
        while (pos_ < text_.size() && peek() != '\n') rest.push_back(get());
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        rest = trim(rest);
        t.kind = Tok::Pragma;
        if (marker == '!' && name == "trace") {
            t.pragma = PragmaKind::Trace;
            if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"') fail("%!trace expects a quoted template");
            std::string body;
            for (std::size_t i = 1; i + 1 < rest.size(); ++i) {
                if (rest[i] == '\\' && i + 2 < rest.size()) {
                    char e = rest[++i];
                    body.push_back(e == 'n' ? '\n' : e);
                } else {
                    body.push_back(rest[i]);
                }
            }
            t.pragma_arg = body;
        } else if (marker == '#' && name == "id") {
            t.pragma = PragmaKind::Id;
            if (rest.empty()) fail("%#id expects a name");
            t.pragma_arg = rest;
        } else if (marker == '#' && name == "article") {
            t.pragma = PragmaKind::Article;
            std::string compact;
            for (char c : rest)
                if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
            if (compact.empty()) fail("%#article expects an article number");
            t.pragma_arg = compact;
            t.text = rest;
        } else {
            t.pragma = PragmaKind::Other;
            t.text = name;
            t.pragma_arg = rest;
        }
        return t;
    }

    Token next() {
        for (;;) {
            while (std::isspace(static_cast<unsigned char>(peek()))) get();
            if (peek() == '%') {
                if ((peek(1) == '!' || peek(1) == '#') && std::isalpha(static_cast<unsigned char>(peek(2)))) {
                    Token t;
                    t.line = line_;
                    t.column = column_;
                    return pragma(t);
                }
                while (pos_ < text_.size() && peek() != '\n') get();
                continue;
            }
            break;
        }
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) return t;

        char c = peek();
        auto ident_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
        if (std::islower(static_cast<unsigned char>(c))) {
            while (ident_char(peek())) t.text.push_back(get());
            t.kind = t.text == "not" ? Tok::Not : Tok::Ident;
            return t;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            while (ident_char(peek())) t.text.push_back(get());
            if (t.text == "_") fail("anonymous variables are not supported");
            t.kind = Tok::Variable;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            if (c == '-') t.text.push_back(get());
            while (std::isdigit(static_cast<unsigned char>(peek()))) t.text.push_back(get());
            try {
                t.value = std::stoll(t.text);
            } catch (const std::out_of_range&) {
                fail("integer out of range");
            }
            t.kind = Tok::Integer;
            return t;
        }
        if (c == '"') {
            get();
            t.text = read_string_body();
            t.kind = Tok::String;
            return t;
        }
        if (c == '#') {
            get();
            while (ident_char(peek())) t.text.push_back(get());
            if (t.text.empty()) fail("expected directive name after '#'");
            t.kind = Tok::Hash;
            return t;
        }
        get();
        switch (c) {
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case '{': t.kind = Tok::LBrace; return t;
            case '}': t.kind = Tok::RBrace; return t;
            case ',': t.kind = Tok::Comma; return t;
            case ';': t.kind = Tok::Semicolon; return t;
            case '~': t.kind = Tok::Tilde; return t;
            case '.':
                if (peek() == '.') {
                    get();
                    t.kind = Tok::DotDot;
                } else {
                    t.kind = Tok::Dot;
                }
                return t;
            case ':':
                if (peek() == '-') {
                    get();
                    t.kind = Tok::If;
                } else {
                    t.kind = Tok::Colon;
                }
                return t;
            case '=':
                if (peek() == '=') get();
                t.kind = Tok::Op;
                t.op = CompareOp::Eq;
                return t;
            case '!':
                if (peek() != '=') fail("expected '!='");
                get();
                t.kind = Tok::Op;
                t.op = CompareOp::Ne;
                return t;
            case '<':
                t.kind = Tok::Op;
                if (peek() == '=') {
                    get();
                    t.op = CompareOp::Le;
                } else if (peek() == '>') {
                    get();
                    t.op = CompareOp::Ne;
                } else {
                    t.op = CompareOp::Lt;
                }
                return t;
            case '>':
                t.kind = Tok::Op;
                if (peek() == '=') {
                    get();
                    t.op = CompareOp::Ge;
                } else {
                    t.op = CompareOp::Gt;
                }
                return t;
            default: break;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    const std::string& source_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

const char* describe(Tok k) {
    switch (k) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::Variable: return "variable";
        case Tok::String: return "string";
        case Tok::Integer: return "integer";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Semicolon: return "';'";
        case Tok::Dot: return "'.'";
        case Tok::DotDot: return "'..'";
        case Tok::If: return "':-'";
        case Tok::Colon: return "':'";
        case Tok::Tilde: return "'~'";
        case Tok::Op: return "comparison operator";
        case Tok::Hash: return "directive";
        case Tok::Not: return "'not'";
        case Tok::Pragma: return "pragma";
    }
    return "token";
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Interval {
    std::size_t position;
    std::int64_t low;
    std::int64_t high;
};

struct IdScope {
    std::unordered_set<std::string> ids;
};

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options, bool task_mode)
        : options_(options), task_mode_(task_mode), tokens_(Lexer(text, options_.source).run()) {}

    Program parse_program() {
        Program out;
        IdScope scope;
        parse_statements(out, scope, nullptr, false);
        expect(Tok::End);
        return out;
    }

    LearningTaskSource parse_task() {
        LearningTaskSource task;
        IdScope scope;
        parse_statements(task.background, scope, &task, false);
        expect(Tok::End);
        return task;
    }

    Atom parse_single_ground_atom() {
        Atom a = parse_atom(nullptr);
        if (peek().kind == Tok::Dot) advance();
        expect(Tok::End);
        if (!a.is_ground()) fail_at(tokens_.front(), "atom must be ground");
        return a;
    }

private:
    // -- token access -------------------------------------------------------

    const Token& peek(std::size_t ahead = 0) {
        skip_pragmas();
        std::size_t i = pos_;
        while (ahead > 0) {
            ++i;
            while (i < tokens_.size() && tokens_[i].kind == Tok::Pragma) ++i;
            --ahead;
        }
        return tokens_[std::min(i, tokens_.size() - 1)];
    }

    const Token& advance() {
        skip_pragmas();
        const Token& t = tokens_[pos_];
        if (t.kind != Tok::End) ++pos_;
        return t;
    }

    bool accept(Tok k) {
        if (peek().kind != k) return false;
        advance();
        return true;
    }

    const Token& expect(Tok k, const char* context = nullptr) {
        const Token& t = peek();
        if (t.kind != k) {
            std::string msg = std::string("expected ") + describe(k) + ", found " + describe(t.kind);
            if (!t.text.empty() && t.kind != Tok::String) msg += " '" + t.text + "'";
            if (context) msg += std::string(" in ") + context;
            fail_at(t, msg);
        }
        return advance();
    }

    [[noreturn]] void fail_at(const Token& t, const std::string& what) const {
        throw SyntaxError(options_.source, t.line, t.column, what);
    }

    // Pragmas are applied at statement boundaries; those met inside a
    // statement are deferred to the following one.
    void skip_pragmas() {
        while (pos_ < tokens_.size() && tokens_[pos_].kind == Tok::Pragma) {
            if (in_statement_) {
                deferred_.push_back(tokens_[pos_]);
            } else {
                apply_pragma(tokens_[pos_]);
            }
            ++pos_;
        }
    }

    void apply_pragma(const Token& t) {
        switch (t.pragma) {
            case PragmaKind::Trace: pending_annotation_ = t.pragma_arg; break;
            case PragmaKind::Id: pending_id_ = t.pragma_arg; break;
            case PragmaKind::Article:
                article_ = t.pragma_arg;
                if (current_program_) current_program_->directives.push_back({"article", t.text, t.line});
                break;
            case PragmaKind::Other:
                if (current_program_) current_program_->directives.push_back({t.text, t.pragma_arg, t.line});
                break;
        }
    }

    void begin_statement() {
        skip_pragmas();
        in_statement_ = true;
    }

    void end_statement() {
        in_statement_ = false;
        pending_annotation_.reset();
        pending_id_.reset();
        auto deferred = std::move(deferred_);
        deferred_.clear();
        for (const auto& t : deferred) apply_pragma(t);
    }

    // -- statements ---------------------------------------------------------

    void parse_statements(Program& out, IdScope& scope, LearningTaskSource* task, bool until_brace) {
        Program* saved = current_program_;
        current_program_ = &out;
        for (;;) {
            skip_pragmas();
            Tok k = peek().kind;
            if (k == Tok::End || (until_brace && k == Tok::RBrace)) break;
            const Token& start = peek();
            begin_statement();
            if (k == Tok::Hash) {
                if (!task) fail_at(start, "directive #" + start.text + " is only allowed in learning tasks");
                parse_task_directive(*task);
            } else if (k == Tok::Integer && peek(1).kind == Tok::Tilde) {
                if (!task) fail_at(start, "hypothesis space entries are only allowed in learning tasks");
                parse_explicit_candidate(*task, scope);
            } else {
                auto rules = parse_rule_statement();
                for (auto& r : rules) finish_rule(out, scope, std::move(r), start);
            }
            end_statement();
        }
        current_program_ = saved;
    }

    void finish_rule(Program& out, IdScope& scope, Rule r, const Token& start) {
        finish_rule_common(r, scope, start);
        out.rules.push_back(std::move(r));
    }

    void finish_rule_common(Rule& r, IdScope& scope, const Token& start) {
        r.origin = options_.origin;
        if (pending_annotation_) r.annotation = pending_annotation_;
        std::string base;
        bool explicit_id = pending_id_.has_value();
        if (explicit_id) {
            base = article_.empty() ? *pending_id_ : "art" + article_ + "." + *pending_id_;
        } else {
            base = (article_.empty() ? options_.source : "art" + article_) + ":" + std::to_string(start.line);
        }
        std::string id = base;
        if (!r.id.empty()) id = base + r.id;  // interval expansion suffix
        if (explicit_id && r.id.empty()) {
            if (!scope.ids.insert(id).second) throw DuplicateIdError(id);
        } else {
            for (int n = 2; !scope.ids.insert(id).second; ++n) id = base + r.id + "." + std::to_string(n);
        }
        r.id = id;
        check_safety(r);
    }

    std::vector<Rule> parse_rule_statement() {
        const Token& start = peek();
        if (accept(Tok::If)) {
            Rule r;
            r.kind = RuleKind::Denial;
            r.body = parse_body();
            expect(Tok::Dot, "denial");
            return {std::move(r)};
        }
        if (start.kind == Tok::LBrace || (start.kind == Tok::Integer && peek(1).kind == Tok::LBrace)) {
            Rule r;
            r.kind = RuleKind::Choice;
            r.choice = parse_choice_head();
            if (accept(Tok::If)) r.body = parse_body();
            expect(Tok::Dot, "choice rule");
            return {std::move(r)};
        }
        if (start.kind != Tok::Ident) fail_at(start, std::string("expected a rule, found ") + describe(start.kind));

        std::vector<Interval> intervals;
        Rule r;
        r.kind = RuleKind::Normal;
        r.head = parse_atom(&intervals);
        if (accept(Tok::If)) {
            if (!intervals.empty()) fail_at(start, "intervals are only allowed in facts");
            r.body = parse_body();
        }
        expect(Tok::Dot, "rule");
        if (intervals.empty()) return {std::move(r)};
        return expand_intervals(r, intervals);
    }

    static std::vector<Rule> expand_intervals(const Rule& r, const std::vector<Interval>& intervals) {
        std::vector<Rule> out{r};
        for (const auto& iv : intervals) {
            std::vector<Rule> next;
            for (const auto& partial : out) {
                for (std::int64_t v = iv.low; v <= iv.high; ++v) {
                    Rule copy = partial;
                    copy.head.args[iv.position] = Term::integer(v);
                    next.push_back(std::move(copy));
                }
            }
            out = std::move(next);
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i].id = "#" + std::to_string(i + 1);
        return out;
    }

    ChoiceHead parse_choice_head() {
        ChoiceHead head;
        if (peek().kind == Tok::Integer) {
            const Token& t = advance();
            if (t.value < 0) fail_at(t, "choice lower bound must be non-negative");
            head.lower = static_cast<int>(t.value);
        }
        expect(Tok::LBrace, "choice head");
        if (peek().kind != Tok::RBrace) {
            for (;;) {
                ChoiceElement e;
                e.atom = parse_atom(nullptr);
                if (accept(Tok::Colon)) {
                    for (;;) {
                        const Token& at = peek();
                        Literal l = parse_literal();
                        if (!l.is_positive()) fail_at(at, "choice conditions must be positive atoms");
                        e.condition.push_back(std::move(l));
                        if (!accept(Tok::Comma)) break;
                    }
                }
                head.elements.push_back(std::move(e));
                if (!accept(Tok::Semicolon)) break;
            }
        }
        expect(Tok::RBrace, "choice head");
        if (peek().kind == Tok::Integer) {
            const Token& t = advance();
            if (t.value < head.lower) fail_at(t, "choice upper bound below lower bound");
            head.upper = static_cast<int>(t.value);
        }
        return head;
    }

    std::vector<Literal> parse_body() {
        std::vector<Literal> body;
        for (;;) {
            body.push_back(parse_literal());
            if (!accept(Tok::Comma) && !accept(Tok::Semicolon)) break;
        }
        return body;
    }

    Literal parse_literal() {
        const Token& t = peek();
        if (accept(Tok::Not)) {
            const Token& at = peek();
            if (at.kind != Tok::Ident) fail_at(at, "default negation applies only to atoms");
            Atom a = parse_atom(nullptr);
            if (peek().kind == Tok::Op) fail_at(peek(), "default negation applies only to atoms");
            return Literal::negative(std::move(a));
        }
        if (t.kind == Tok::Ident) {
            if (peek(1).kind == Tok::Op) {
                Term lhs = Term::constant(advance().text);
                CompareOp op = advance().op;
                Term rhs = parse_term(nullptr, 0);
                return Literal::compare(std::move(lhs), op, std::move(rhs));
            }
            return Literal::positive(parse_atom(nullptr));
        }
        if (t.kind == Tok::Variable || t.kind == Tok::String || t.kind == Tok::Integer) {
            Term lhs = parse_term(nullptr, 0);
            const Token& op = expect(Tok::Op, "comparison");
            Term rhs = parse_term(nullptr, 0);
            return Literal::compare(std::move(lhs), op.op, std::move(rhs));
        }
        fail_at(t, std::string("expected a literal, found ") + describe(t.kind));
    }

    Atom parse_atom(std::vector<Interval>* intervals) {
        const Token& name = expect(Tok::Ident, "atom");
        Atom a;
        a.predicate = name.text;
        if (accept(Tok::LParen)) {
            for (;;) {
                a.args.push_back(parse_term(intervals, a.args.size()));
                if (!accept(Tok::Comma)) break;
            }
            expect(Tok::RParen, "atom arguments");
        }
        return a;
    }

    Term parse_term(std::vector<Interval>* intervals, std::size_t position) {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Variable: advance(); return Term::variable(t.text);
            case Tok::String: advance(); return Term::string(t.text);
            case Tok::Ident:
                advance();
                if (peek().kind == Tok::LParen) fail_at(t, "function symbols are not supported");
                return Term::constant(t.text);
            case Tok::Integer: {
                std::int64_t low = advance().value;
                if (peek().kind == Tok::DotDot) {
                    if (!intervals) fail_at(t, "intervals are only allowed in facts");
                    advance();
                    const Token& hi = expect(Tok::Integer, "interval");
                    if (hi.value < low) fail_at(hi, "empty interval");
                    intervals->push_back({position, low, hi.value});
                    return Term::integer(low);
                }
                return Term::integer(low);
            }
            default: break;
        }
        fail_at(t, std::string("expected a term, found ") + describe(t.kind));
    }

    // -- learning tasks -----------------------------------------------------

    void parse_explicit_candidate(LearningTaskSource& task, IdScope& scope) {
        const Token& len = advance();
        expect(Tok::Tilde);
        const Token& start = peek();
        auto rules = parse_rule_statement();
        if (rules.size() != 1) fail_at(start, "hypothesis space entries cannot use intervals");
        Rule r = std::move(rules.front());
        finish_rule_common(r, scope, start);
        if (len.value < 0 || static_cast<std::size_t>(len.value) != r.length())
            fail_at(len, "declared length " + std::to_string(len.value) + " does not match rule length " +
                             std::to_string(r.length()));
        task.explicit_space.push_back({static_cast<std::size_t>(len.value), std::move(r)});
    }

    void parse_task_directive(LearningTaskSource& task) {
        const Token& d = advance();
        const std::string& name = d.text;
        if (name == "modeh" || name == "modeha" || name == "modeb") {
            ModeDecl m;
            m.kind = name == "modeh" ? ModeKind::Head : name == "modeha" ? ModeKind::HeadAggregate : ModeKind::Body;
            expect(Tok::LParen, "mode declaration");
            if (m.kind == ModeKind::Body && peek().kind == Tok::Integer) {
                const Token& n = advance();
                if (n.value < 1) fail_at(n, "mode recall must be at least 1");
                m.recall = static_cast<int>(n.value);
                expect(Tok::Comma, "mode declaration");
            }
            m.schema = parse_mode_atom();
            if (accept(Tok::Comma)) m.flags = parse_mode_flags();
            expect(Tok::RParen, "mode declaration");
            expect(Tok::Dot, "mode declaration");
            bool binary_flag = m.has(ModeFlag::Symmetric) || m.has(ModeFlag::AntiReflexive);
            if (binary_flag && m.schema.args.size() != 2)
                fail_at(d, "malformed mode schema: symmetric/anti_reflexive require a binary predicate");
            task.modes.push_back(std::move(m));
            return;
        }
        if (name == "modec") {
            ModeDecl m;
            m.kind = ModeKind::Condition;
            expect(Tok::LParen, "mode declaration");
            m.lhs = parse_mode_arg();
            m.op = expect(Tok::Op, "#modec condition").op;
            m.rhs = parse_mode_arg();
            if (accept(Tok::Comma)) m.flags = parse_mode_flags();
            expect(Tok::RParen, "mode declaration");
            expect(Tok::Dot, "mode declaration");
            if (m.lhs.kind == ModeArg::Kind::Fixed && m.rhs.kind == ModeArg::Kind::Fixed)
                fail_at(d, "malformed mode schema: #modec needs a placeholder");
            task.modes.push_back(std::move(m));
            return;
        }
        if (name == "maxv") {
            expect(Tok::LParen, "#maxv");
            const Token& n = expect(Tok::Integer, "#maxv");
            if (n.value < 0) fail_at(n, "#maxv must be non-negative");
            task.maxv = static_cast<int>(n.value);
            expect(Tok::RParen, "#maxv");
            expect(Tok::Dot, "#maxv");
            return;
        }
        if (name == "constant") {
            expect(Tok::LParen, "#constant");
            std::string type = expect(Tok::Ident, "#constant").text;
            expect(Tok::Comma, "#constant");
            Term value = parse_term(nullptr, 0);
            expect(Tok::RParen, "#constant");
            expect(Tok::Dot, "#constant");
            task.constants[type].push_back(std::move(value));
            return;
        }
        if (name == "pos" || name == "neg") {
            ExampleSource ex;
            ex.polarity = name == "pos" ? ExampleSource::Polarity::Positive : ExampleSource::Polarity::Negative;
            expect(Tok::LParen, "example");
            if (peek().kind == Tok::Ident) {
                ex.id = advance().text;
                expect(Tok::Comma, "example");
            } else {
                ex.id = "e" + std::to_string(task.examples.size() + 1);
            }
            ex.inclusions = parse_ground_atom_set();
            expect(Tok::Comma, "example");
            ex.exclusions = parse_ground_atom_set();
            if (accept(Tok::Comma)) {
                const Token& brace = expect(Tok::LBrace, "example context");
                IdScope ctx_scope;
                ParseOptions saved = options_;
                options_.source = options_.source + "#" + ex.id;
                bool was_in = in_statement_;
                std::string saved_article = article_;
                article_.clear();
                in_statement_ = false;
                parse_statements(ex.context, ctx_scope, nullptr, true);
                in_statement_ = was_in;
                article_ = saved_article;
                options_ = saved;
                expect(Tok::RBrace, "example context");
                (void)brace;
            }
            expect(Tok::RParen, "example");
            expect(Tok::Dot, "example");
            for (const auto& a : ex.inclusions)
                for (const auto& b : ex.exclusions)
                    if (a == b) fail_at(d, "atom " + a.to_string() + " is both included and excluded");
            task.examples.push_back(std::move(ex));
            return;
        }
        fail_at(d, "unknown directive #" + name);
    }

    std::vector<Atom> parse_ground_atom_set() {
        std::vector<Atom> out;
        expect(Tok::LBrace, "example");
        if (peek().kind != Tok::RBrace) {
            for (;;) {
                const Token& at = peek();
                Atom a = parse_atom(nullptr);
                if (!a.is_ground()) fail_at(at, "non-ground atom " + a.to_string() + " in example");
                out.push_back(std::move(a));
                if (!accept(Tok::Comma) && !accept(Tok::Semicolon)) break;
            }
        }
        expect(Tok::RBrace, "example");
        return out;
    }

    ModeArg parse_mode_arg() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && (t.text == "var" || t.text == "const") && peek(1).kind == Tok::LParen) {
            ModeArg a;
            a.kind = t.text == "var" ? ModeArg::Kind::Var : ModeArg::Kind::Const;
            advance();
            advance();
            a.type = expect(Tok::Ident, "mode placeholder").text;
            expect(Tok::RParen, "mode placeholder");
            return a;
        }
        if (t.kind == Tok::Variable) fail_at(t, "malformed mode schema: variables are not allowed, use var(t)");
        ModeArg a;
        a.kind = ModeArg::Kind::Fixed;
        a.fixed = parse_term(nullptr, 0);
        return a;
    }

    ModeAtom parse_mode_atom() {
        const Token& name = expect(Tok::Ident, "mode schema");
        ModeAtom m;
        m.predicate = name.text;
        if (accept(Tok::LParen)) {
            for (;;) {
                m.args.push_back(parse_mode_arg());
                if (!accept(Tok::Comma)) break;
            }
            expect(Tok::RParen, "mode schema");
        }
        return m;
    }

    std::set<ModeFlag> parse_mode_flags() {
        std::set<ModeFlag> flags;
        expect(Tok::LParen, "mode flags");
        for (;;) {
            const Token& f = expect(Tok::Ident, "mode flags");
            if (f.text == "positive") {
                flags.insert(ModeFlag::Positive);
            } else if (f.text == "symmetric") {
                flags.insert(ModeFlag::Symmetric);
            } else if (f.text == "anti_reflexive") {
                flags.insert(ModeFlag::AntiReflexive);
            } else {
                fail_at(f, "unknown mode flag '" + f.text + "'");
            }
            if (!accept(Tok::Comma)) break;
        }
        expect(Tok::RParen, "mode flags");
        return flags;
    }

    ParseOptions options_;
    bool task_mode_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    bool in_statement_ = false;
    std::vector<Token> deferred_;
    std::optional<std::string> pending_annotation_;
    std::optional<std::string> pending_id_;
    std::string article_;
    Program* current_program_ = nullptr;
};

} // namespace

Program parse_program(std::string_view text, const ParseOptions& options) {
    return Parser(text, options, false).parse_program();
}

Program parse_program_file(const std::filesystem::path& path, Origin origin) {
    ParseOptions opts;
    opts.source = path.filename().string();
    opts.origin = origin;
    return parse_program(read_file(path), opts);
}

LearningTaskSource parse_learning_task(std::string_view text, const ParseOptions& options) {
    return Parser(text, options, true).parse_task();
}

LearningTaskSource parse_learning_task_file(const std::filesystem::path& path) {
    ParseOptions opts;
    opts.source = path.filename().string();
    return parse_learning_task(read_file(path), opts);
}

Atom parse_ground_atom(std::string_view text) {
    ParseOptions opts;
    opts.source = "<atom>";
    return Parser(text, opts, false).parse_single_ground_atom();
}

Rule parse_rule(std::string_view text, const ParseOptions& options) {
    Program p = parse_program(text, options);
    if (p.rules.size() != 1)
        throw SyntaxError(options.source, 1, 1, "expected exactly one statement, found " + std::to_string(p.rules.size()));
    return std::move(p.rules.front());
}

} // namespace lexasp
