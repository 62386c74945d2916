#include "caudex/parser.hpp"

#include "caudex/errors.hpp"

#include <cctype>
#include <set>

namespace caudex {

namespace {

const char* kModule = "query-lang";

enum class Tok { Ident, Quoted, Number, LParen, RParen, Comma, Dot, ColonDash, Arrow, Colon, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        SourcePos pos{line_, col_};
        if (at_end()) return {Tok::End, "", pos};
        char c = peek();
        if (c == '(') return advance(), Token{Tok::LParen, "(", pos};
        if (c == ')') return advance(), Token{Tok::RParen, ")", pos};
        if (c == ',') return advance(), Token{Tok::Comma, ",", pos};
        if (c == '.') return advance(), Token{Tok::Dot, ".", pos};
        if (c == ':') {
            advance();
            if (!at_end() && peek() == '-') return advance(), Token{Tok::ColonDash, ":-", pos};
            return {Tok::Colon, ":", pos};
        }
        if (c == '-') {
            advance();
            if (!at_end() && peek() == '>') return advance(), Token{Tok::Arrow, "->", pos};
            fail(pos, "stray '-'");
        }
        if (c == '\'') {
            advance();
            std::string s;
            while (!at_end() && peek() != '\'') {
                if (peek() == '\n') fail(pos, "unterminated quoted constant");
                s += peek();
                advance();
            }
            if (at_end()) fail(pos, "unterminated quoted constant");
            advance();
            return {Tok::Quoted, s, pos};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                s += peek();
                advance();
            }
            return {Tok::Number, s, pos};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                s += peek();
                advance();
            }
            return {Tok::Ident, s, pos};
        }
        fail(pos, std::string("unexpected character '") + c + "'");
        return {};
    }

    [[noreturn]] static void fail(SourcePos pos, const std::string& msg) {
        throw Error(kModule, "line " + std::to_string(pos.line) + ", column " +
                                 std::to_string(pos.column) + ": " + msg);
    }

private:
    bool at_end() const { return i_ >= text_.size(); }
    char peek() const { return text_[i_]; }
    void advance() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }
    void skip_ws() {
        while (!at_end()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == '%') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { shift(); }

    Program parse_program() {
        Program p;
        while (cur_.kind != Tok::End) p.statements.push_back(parse_statement());
        return p;
    }

private:
    void shift() { cur_ = lex_.next(); }

    Token expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) Lexer::fail(cur_.pos, "expected " + what);
        Token t = cur_;
        shift();
        return t;
    }

    static bool is_var_name(const std::string& s) {
        return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
    }

    Term parse_term() {
        if (cur_.kind == Tok::Quoted || cur_.kind == Tok::Number) {
            Term t = Term::constant(cur_.text);
            shift();
            return t;
        }
        Token t = expect(Tok::Ident, "a term");
        return is_var_name(t.text) ? Term::var(t.text) : Term::constant(t.text);
    }

    Atom parse_atom() {
        Token name = expect(Tok::Ident, "a predicate name");
        Atom a;
        a.pred = name.text;
        a.pos = name.pos;
        expect(Tok::LParen, "'('");
        if (cur_.kind != Tok::RParen) {
            a.args.push_back(parse_term());
            while (cur_.kind == Tok::Comma) {
                shift();
                a.args.push_back(parse_term());
            }
        }
        expect(Tok::RParen, "')'");
        return a;
    }

    std::vector<Atom> parse_body() {
        std::vector<Atom> body;
        body.push_back(parse_atom());
        while (cur_.kind == Tok::Comma) {
            shift();
            body.push_back(parse_atom());
        }
        return body;
    }

    Statement parse_statement() {
        SourcePos start = cur_.pos;
        if (cur_.kind == Tok::ColonDash) {
            shift();
            DenialConstraint dc;
            dc.pos = start;
            dc.body = parse_body();
            expect(Tok::Dot, "'.'");
            return dc;
        }
        Atom first = parse_atom();
        if (cur_.kind == Tok::Arrow) {
            shift();
            InclusionDependency ind;
            ind.pos = start;
            ind.source = first;
            if (cur_.kind == Tok::Ident && cur_.text == "exists") {
                shift();
                do {
                    Token v = expect(Tok::Ident, "a variable");
                    if (!is_var_name(v.text))
                        Lexer::fail(v.pos, "existential names must be variables");
                    ind.exists_vars.push_back(v.text);
                    if (cur_.kind != Tok::Comma) break;
                    shift();
                } while (true);
                expect(Tok::Colon, "':'");
            }
            ind.target = parse_atom();
            expect(Tok::Dot, "'.'");
            validate_ind(ind);
            return ind;
        }
        // Conjunctive query rule.
        CQ q;
        q.pos = start;
        q.head_name = first.pred;
        for (const Term& t : first.args) {
            if (!t.is_var())
                Lexer::fail(first.pos, "head arguments must be variables");
            q.head_vars.push_back(t.text);
        }
        expect(Tok::ColonDash, "':-'");
        q.body = parse_body();
        expect(Tok::Dot, "'.'");
        std::set<std::string> body_vars;
        for (const Atom& a : q.body)
            for (const Term& t : a.args)
                if (t.is_var()) body_vars.insert(t.text);
        for (const std::string& v : q.head_vars)
            if (!body_vars.count(v))
                Lexer::fail(q.pos, "unbound head variable " + v);
        return q;
    }

    void validate_ind(const InclusionDependency& ind) {
        std::set<std::string> source_vars, exists_vars(ind.exists_vars.begin(), ind.exists_vars.end());
        for (const Term& t : ind.source.args)
            if (t.is_var()) source_vars.insert(t.text);
        for (const std::string& v : ind.exists_vars)
            if (source_vars.count(v))
                Lexer::fail(ind.pos, "existential variable " + v + " already bound by the premise");
        for (const Term& t : ind.target.args)
            if (t.is_var() && !source_vars.count(t.text) && !exists_vars.count(t.text))
                Lexer::fail(ind.target.pos, "target variable " + t.text +
                                                " is neither shared nor existential");
    }

    Lexer lex_;
    Token cur_;
};

} // namespace

Program parse(std::string_view text) { return Parser(text).parse_program(); }

} // namespace caudex
