#pragma once

#include <vector>

#include "caudex/database.hpp"
#include "caudex/eval.hpp"
#include "caudex/query.hpp"

namespace caudex {

// Conflict hypergraph of a database w.r.t. a set of denial constraints.
// Nodes are all tuple ids of the instance; hyperedges are the
// inclusion-minimal tuple sets whose joint presence violates some
// constraint (minimality is enforced across constraints, not per
// constraint).
struct ConflictHypergraph {
    std::vector<TupleId> nodes;     // every tid of the instance, ascending
    std::vector<Witness> edges;     // minimal violation sets, sorted

    // Tids that participate in at least one edge, ascending.
    std::vector<TupleId> conflicting() const;

    bool consistent() const { return edges.empty(); }
};

ConflictHypergraph conflict_hypergraph(const DatabaseInstance& db,
                                       const std::vector<DenialConstraint>& dcs);

// Keep only set-inclusion-minimal sets among `sets` (each set must be
// sorted ascending); result ordered by size then lexicographically.
std::vector<Witness> minimalize(std::vector<Witness> sets);

} // namespace caudex
