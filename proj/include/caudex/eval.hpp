#pragma once

#include "caudex/database.hpp"
#include "caudex/query.hpp"

#include <set>
#include <vector>

namespace caudex {

// A witness: sorted set of tuple ids jointly supporting the query.
using Witness = std::vector<TupleId>;

// Tuples listed in `deleted` (when non-null) are invisible to
// evaluation; used for counterfactual sub-instances.
using TidSet = std::set<TupleId>;

// All answers to the query: bindings of the head variables, in head
// order. A Boolean query yields the empty binding when true.
std::set<std::vector<Value>> eval_query(const DatabaseInstance& db, const UCQ& q,
                                        const TidSet* deleted = nullptr);

bool eval_boolean(const DatabaseInstance& db, const UCQ& q, const TidSet* deleted = nullptr);

// Inclusion-minimal supporting tid sets of a Boolean query.
std::vector<Witness> witnesses(const DatabaseInstance& db, const CQ& q);
std::vector<Witness> witnesses(const DatabaseInstance& db, const UCQ& q);

// Violation witnesses of a denial constraint: inclusion-minimal tid
// sets that jointly satisfy its body.
std::vector<Witness> dc_witnesses(const DatabaseInstance& db, const DenialConstraint& dc);

bool satisfies_dc(const DatabaseInstance& db, const DenialConstraint& dc,
                  const TidSet* deleted = nullptr);
bool satisfies_ind(const DatabaseInstance& db, const InclusionDependency& ind,
                   const TidSet* deleted = nullptr);

struct Constraints {
    std::vector<DenialConstraint> dcs;
    std::vector<InclusionDependency> inds;
    bool empty() const { return dcs.empty() && inds.empty(); }
};

bool satisfies_all(const DatabaseInstance& db, const Constraints& ics,
                   const TidSet* deleted = nullptr);

} // namespace caudex
