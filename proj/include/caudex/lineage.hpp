#pragma once

#include <map>
#include <string>
#include <vector>

#include "caudex/database.hpp"
#include "caudex/eval.hpp"
#include "caudex/rat.hpp"

namespace caudex {

// Positive propositional lineage of a Boolean query in disjunctive
// normal form: one conjunct of tuple variables per minimal witness.
// Interventions pin a variable to true or false and simplify; the pin
// history is kept for reporting.
class LineageFormula {
public:
    static LineageFormula constant(bool value);
    static LineageFormula of_witnesses(std::vector<Witness> ws);

    bool is_constant() const;
    bool constant_value() const; // only when is_constant()

    const std::vector<Witness>& disjuncts() const { return disjuncts_; }
    const std::map<TupleId, bool>& pinned() const { return pinned_; }

    std::vector<TupleId> free_vars() const; // sorted

    std::string to_string() const;

private:
    // Invariant: no disjunct is empty unless the formula is the single
    // empty disjunct (constant true); no disjuncts at all is constant
    // false. Disjuncts sorted, deduplicated, inclusion-minimal.
    std::vector<Witness> disjuncts_;
    std::map<TupleId, bool> pinned_;

    void normalize();
    friend LineageFormula intervene(const LineageFormula& f, TupleId tid, bool value);
};

LineageFormula lineage(const DatabaseInstance& db, const UCQ& q);

LineageFormula intervene(const LineageFormula& f, TupleId tid, bool value);

// Probability that the formula evaluates true when each free variable
// is independently true with probability p (or its own probability in
// the per-tuple overload; missing tuples default to `fallback`).
Rat prob_true(const LineageFormula& f, const Rat& p);
Rat prob_true(const LineageFormula& f, const std::map<TupleId, Rat>& probs,
              const Rat& fallback);

// Causal effect of a tuple on a Boolean query under independent
// tuple probability p: E[q | do(t)=1] - E[q | do(t)=0].
Rat causal_effect(const DatabaseInstance& db, const UCQ& q, TupleId tid, const Rat& p);

} // namespace caudex
