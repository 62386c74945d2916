#pragma once

#include <cstdint>

// Hard caps for the exhaustive searches. Exceeding one raises an
// error naming the cap rather than silently degrading.
namespace caudex::limits {

inline constexpr int kMaxHittingSetNodes = 24;  // conflict-hypergraph nodes searched
inline constexpr int kMaxAttrPool = 24;         // candidate attribute positions
inline constexpr int kMaxContingencyPool = 24;  // candidate tuples for IC-aware search
inline constexpr int kMaxLineageVars = 24;      // exact probability enumeration
inline constexpr int kMaxGamePlayers = 22;      // exact Shapley/Banzhaf players
inline constexpr int kMaxShapFeatures = 16;     // classifier Shap features
inline constexpr std::int64_t kMaxEnumeratedEntities = 1 << 20; // expectation sums

} // namespace caudex::limits
