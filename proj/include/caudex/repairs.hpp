#pragma once

#include <vector>

#include "caudex/database.hpp"
#include "caudex/hypergraph.hpp"
#include "caudex/rat.hpp"

namespace caudex {

enum class RepairSemantics { Subset, Cardinality };

// A deletion repair: the surviving instance is identified by the kept
// and deleted tuple ids (both sorted ascending).
struct Repair {
    std::vector<TupleId> kept;
    std::vector<TupleId> deleted;

    friend bool operator==(const Repair&, const Repair&) = default;
};

// All inclusion-minimal hitting sets of `edges` drawn from `universe`
// (both sorted ascending). Results ordered by size, then
// lexicographically. Throws when |universe| exceeds the search cap.
std::vector<std::vector<TupleId>> minimal_hitting_sets(const std::vector<TupleId>& universe,
                                                       const std::vector<Witness>& edges);

// Subset repairs: maximal consistent sub-instances. Cardinality
// repairs keep as many tuples as possible. Ordered by deleted set
// (size, then lexicographic).
std::vector<Repair> s_repairs(const DatabaseInstance& db,
                              const std::vector<DenialConstraint>& dcs);
std::vector<Repair> c_repairs(const DatabaseInstance& db,
                              const std::vector<DenialConstraint>& dcs);
std::vector<Repair> repairs(const DatabaseInstance& db, const std::vector<DenialConstraint>& dcs,
                            RepairSemantics sem);

// Inconsistency degree: fraction of tuples that must be deleted to
// restore consistency (identical under subset and cardinality
// semantics). 0/1 for a consistent or empty instance.
Rat inc_degree(const DatabaseInstance& db, const std::vector<DenialConstraint>& dcs);

// An attribute repair is identified by its intervention: the minimal
// set of attribute positions replaced by NULL to restore consistency.
std::vector<AttrInterventionSet> attr_repairs(const DatabaseInstance& db,
                                              const std::vector<DenialConstraint>& dcs,
                                              RepairSemantics sem = RepairSemantics::Subset);

} // namespace caudex
