#pragma once

#include "caudex/value.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace caudex {

struct SourcePos {
    int line = 0;
    int column = 0;
};

// A term in an atom: an uppercase variable or a constant symbol.
struct Term {
    enum class Kind { Var, Const };
    Kind kind = Kind::Var;
    std::string text; // variable name or constant symbol
    static Term var(std::string v) { return {Kind::Var, std::move(v)}; }
    static Term constant(std::string c) { return {Kind::Const, std::move(c)}; }
    bool is_var() const { return kind == Kind::Var; }
    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    std::string pred;
    std::vector<Term> args;
    SourcePos pos;
    friend bool operator==(const Atom& a, const Atom& b) {
        return a.pred == b.pred && a.args == b.args;
    }
};

// One conjunctive rule: head(X,...) :- body. Boolean when the head
// has no variables.
struct CQ {
    std::string head_name;
    std::vector<std::string> head_vars;
    std::vector<Atom> body;
    SourcePos pos;
    bool is_boolean() const { return head_vars.empty(); }
};

// Disjunction of CQs sharing a head signature.
struct UCQ {
    std::string head_name;
    std::size_t head_arity = 0;
    std::vector<CQ> disjuncts;
    bool is_boolean() const { return head_arity == 0; }
};

inline UCQ as_ucq(const CQ& q) {
    return UCQ{q.head_name, q.head_vars.size(), {q}};
}

// ":- body." — the body must never be satisfied.
struct DenialConstraint {
    std::vector<Atom> body;
    SourcePos pos;
};

// "R(X,Y) -> exists U: S(U,Y,X)." with a single-atom premise.
struct InclusionDependency {
    Atom source;
    std::vector<std::string> exists_vars;
    Atom target;
    SourcePos pos;
};

using Statement = std::variant<CQ, DenialConstraint, InclusionDependency>;

struct Program {
    std::vector<Statement> statements;

    std::vector<UCQ> queries() const;            // grouped by head name
    std::vector<DenialConstraint> dcs() const;
    std::vector<InclusionDependency> inds() const;
    UCQ single_query() const;                    // errors unless exactly one
};

// Canonical printing: one statement per line, ", " between atoms,
// no space inside argument lists.
std::string print(const Term& t);
std::string print(const Atom& a);
std::string print(const CQ& q);
std::string print(const UCQ& q);
std::string print(const DenialConstraint& dc);
std::string print(const InclusionDependency& ind);
std::string print(const Program& p);

} // namespace caudex
