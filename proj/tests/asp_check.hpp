#pragma once

// A reference interpreter for the emitted solver programs, used only
// by the tests. It parses the rule text, grounds it against the
// derivable-atom universe, and enumerates stable models by guessing
// over the negatively referenced atoms. Covered fragment: facts,
// disjunctive rules, default negation, =/!= builtins, constraints,
// and weak constraints. Statements using set terms or #-builtins are
// collected as `skipped`. Disjunction is handled by shifting, which
// is sound only when no two head atoms of a ground rule depend on
// each other positively; stable_models verifies that and throws
// otherwise.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace aspcheck {

struct AtomLit {
    std::string pred;
    std::vector<std::string> args; // leading uppercase = variable
    bool negated = false;
};

struct Builtin {
    std::string lhs, rhs;
    bool equal = true; // false: "!="
};

struct Rule {
    std::vector<AtomLit> heads; // empty for a constraint
    std::vector<AtomLit> body;
    std::vector<Builtin> builtins;
    bool weak = false;
};

struct Program {
    std::vector<Rule> rules;
    std::vector<std::string> skipped;
};

Program parse(const std::string& text);

struct Models {
    std::vector<std::set<std::string>> all;  // ground atoms "p(a,b)"
    std::vector<std::size_t> costs;          // weak violations, parallel
    std::vector<std::set<std::string>> best; // minimum-cost models
};

Models stable_models(const Program& p);

// Tids (first argument) of ground atoms whose last argument is `ann`.
std::set<std::int64_t> annotated_tids(const std::set<std::string>& model, const std::string& ann);

// (tid, 1-based value position) pairs where an atom with last
// argument `ann` carries "null".
std::set<std::pair<std::int64_t, int>> null_positions(const std::set<std::string>& model,
                                                      const std::string& ann);

} // namespace aspcheck
