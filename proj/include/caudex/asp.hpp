#pragma once

#include <string>
#include <utility>
#include <vector>

#include "caudex/classifier.hpp"
#include "caudex/database.hpp"
#include "caudex/query.hpp"

namespace caudex {

// Emitters for DLV / DLV-Complex program text. Pure functions of
// their inputs; the output is meant for an external solver and is
// never executed here.

struct RepairProgramOptions {
    bool weak = false;            // keep only minimum-size deletion models
    bool causes = false;          // cause/cauCont rules
    bool responsibility = false;  // contingency-set + preRho rules (implies causes)
};

std::string emit_repair_program(const DatabaseInstance& db,
                                const std::vector<DenialConstraint>& dcs,
                                const RepairProgramOptions& opts = {});

std::string emit_attr_repair_program(const DatabaseInstance& db,
                                     const std::vector<DenialConstraint>& dcs);

std::string emit_inc_measure_program(const DatabaseInstance& db,
                                     const std::vector<DenialConstraint>& dcs);

struct CipOptions {
    bool weak = false;          // minimize the number of changed features
    std::string entity_id = "e";
    int max_features = 8;
    // Hard domain-knowledge constraints: each entry is a partial
    // assignment (feature name, value) that no transitional entity may
    // satisfy.
    std::vector<std::vector<std::pair<std::string, std::string>>> forbid;
};

std::string emit_cip(const FeatureSpace& fs, const DecisionTree& tree, const Entity& e,
                     const CipOptions& opts = {});

} // namespace caudex
