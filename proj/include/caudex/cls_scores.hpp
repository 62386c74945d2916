#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caudex/classifier.hpp"
#include "caudex/rat.hpp"

namespace caudex {

// A counterfactual version of an entity: same space, different label.
struct Cfv {
    Entity entity;
    int distance = 0;                  // number of changed features
    std::vector<std::string> changed;  // feature names, in feature order
};

// All entities of the product space with the opposite label at
// Hamming distance <= max_distance, ordered by distance then
// lexicographically by domain-value index.
std::vector<Cfv> counterfactual_versions(const Classifier& clf, const FeatureSpace& fs,
                                         const Entity& e, int max_distance);

// x-Resp of a feature: 1/(1+|Y|) for a smallest contingency Y of
// other features whose re-assignment keeps the label, after which some
// new value for the feature flips it; 0 when no such Y exists.
Rat x_resp(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
           const std::string& feature, std::optional<int> max_contingency = std::nullopt);

// Counter score: L(e) minus the expected label when every other
// feature stays fixed and the feature of interest is resampled.
Rat counter_score(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
                  const std::string& feature, const Distribution& dist);

struct RespOptions {
    bool exclude_original = false;      // drop the actual value when resampling
    std::optional<int> max_contingency; // cap on |Gamma|
};

struct RespResult {
    Rat score{0};
    // A best witness: contingency features with their new values.
    std::vector<std::pair<std::string, std::string>> contingency;
};

// Generalized responsibility: over contingency assignments of minimum
// size with a positive expected label drop, the maximum of
// (L(e') - E[L(e'')]) / (1 + |Gamma|).
RespResult resp_score(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
                      const std::string& feature, const Distribution& dist,
                      const RespOptions& opts = {});

// Shap score of a feature: Shapley value of the game whose coalition
// value is the expected label with the coalition's features fixed to
// the entity's values.
Rat shap_score(const Classifier& clf, const FeatureSpace& fs, const Entity& e,
               const std::string& feature, const Distribution& dist);

} // namespace caudex
