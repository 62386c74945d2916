#pragma once

#include "caudex/query.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace caudex {

// Turns a Boolean CQ into the denial constraint with the same body.
DenialConstraint negate_to_dc(const CQ& q);

// One DC per disjunct of a Boolean UCQ.
std::vector<DenialConstraint> negate_to_dcs(const UCQ& q);

struct HierarchyReport {
    bool hierarchical = false;
    // Present when not hierarchical: a pair of variables whose atom
    // sets properly overlap.
    std::optional<std::pair<std::string, std::string>> offending;
};

// Defined for self-join-free Boolean CQs only; anything else throws
// with "dichotomy precondition violated".
HierarchyReport is_hierarchical(const CQ& q);

bool has_self_join(const CQ& q);

} // namespace caudex
