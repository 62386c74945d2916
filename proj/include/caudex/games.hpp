#pragma once

#include <cstdint>
#include <vector>

#include "caudex/database.hpp"
#include "caudex/query.hpp"
#include "caudex/rat.hpp"

namespace caudex {

// Exact wealth-distribution scores for the game whose players are the
// database tuples and whose value on a coalition S is q(S), 0 or 1.
// With support_only the player set shrinks to the tuples occurring in
// some witness plus the tuple of interest (dummies contribute nothing
// and only slow the sum down).
Rat shapley(const DatabaseInstance& db, const UCQ& q, TupleId tid, bool support_only = false);
Rat banzhaf(const DatabaseInstance& db, const UCQ& q, TupleId tid, bool support_only = false);

struct SampleEstimate {
    double estimate = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

// Monte-Carlo Shapley over uniformly random permutations. The sample
// count ceil(ln(2/delta) / (2 eps^2)) gives an additive eps guarantee
// with confidence 1-delta. Deterministic for a fixed seed.
SampleEstimate shapley_sampled(const DatabaseInstance& db, const UCQ& q, TupleId tid,
                               double eps, double delta, std::uint64_t seed);

} // namespace caudex
