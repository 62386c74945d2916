#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caudex/database.hpp"
#include "caudex/eval.hpp"
#include "caudex/query.hpp"
#include "caudex/rat.hpp"

namespace caudex {

enum class CauseKind { None, Actual, Counterfactual };

std::string to_string(CauseKind k);

// Verdict for one tuple: its kind, responsibility 1/(1+|G|) for a
// smallest contingency set G (0 for non-causes), and all smallest
// contingency sets (just {} for counterfactual causes).
struct CauseReport {
    TupleId tid = 0;
    CauseKind kind = CauseKind::None;
    Rat responsibility{0};
    std::vector<std::vector<TupleId>> min_contingencies;

    friend bool operator==(const CauseReport&, const CauseReport&) = default;
};

// All actual causes of a true Boolean query, sorted by tid. Tuples
// that are no cause are omitted. Throws if the query is false.
std::vector<CauseReport> actual_causes(const DatabaseInstance& db, const UCQ& q);

// Verdict for a single tuple; kind None with responsibility 0 when it
// is no cause at all.
CauseReport cause_report(const DatabaseInstance& db, const UCQ& q, TupleId tid);

Rat responsibility(const DatabaseInstance& db, const UCQ& q, TupleId tid);

// Causes of a true Boolean query in the presence of hard integrity
// constraints: contingency sets G must keep the constraints satisfied
// both before and after removing the candidate tuple, the query true
// before and false after. With no constraints this coincides with
// actual_causes.
std::vector<CauseReport> causes_under_ics(const DatabaseInstance& db, const UCQ& q,
                                          const Constraints& ics);

// Attribute-level verdicts: positions whose change to NULL (together
// with a smallest set of companion positions) falsifies the query.
struct AttrCauseReport {
    AttrPos pos;
    std::string value; // printable original value at the position
    CauseKind kind = CauseKind::None;
    Rat responsibility{0};
    std::vector<AttrInterventionSet> min_contingencies; // companions, may include {}

    friend bool operator==(const AttrCauseReport&, const AttrCauseReport&) = default;
};

std::vector<AttrCauseReport> attr_causes(const DatabaseInstance& db, const UCQ& q);

} // namespace caudex
