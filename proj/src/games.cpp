#include "caudex/games.hpp"

#include "caudex/errors.hpp"
#include "caudex/eval.hpp"
#include "caudex/limits.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

namespace caudex {

namespace {

const char* kModule = "score-engine";

struct Game {
    std::vector<TupleId> players;      // sorted
    std::vector<TupleId> support;      // players occurring in witnesses, minus tid
    std::vector<std::uint32_t> edges;  // witness masks over `support` bits
    std::vector<bool> needs_tau;       // witness also contains tid
    bool tau_in_support = false;
};

Game build_game(const DatabaseInstance& db, const UCQ& q, TupleId tid, bool support_only) {
    if (!db.has_tid(tid))
        throw Error(kModule, "unknown tuple id " + std::to_string(tid));
    auto ws = witnesses(db, q);

    std::vector<TupleId> sup;
    for (const Witness& w : ws) sup.insert(sup.end(), w.begin(), w.end());
    std::sort(sup.begin(), sup.end());
    sup.erase(std::unique(sup.begin(), sup.end()), sup.end());

    Game g;
    g.tau_in_support = std::binary_search(sup.begin(), sup.end(), tid);
    if (support_only) {
        g.players = sup;
        if (!g.tau_in_support) {
            g.players.push_back(tid);
            std::sort(g.players.begin(), g.players.end());
        }
    } else {
        g.players = db.all_tids();
    }
    if (static_cast<int>(g.players.size()) > limits::kMaxGamePlayers)
        throw Error(kModule, "game has " + std::to_string(g.players.size()) +
                                 " players, exceeding the cap of " +
                                 std::to_string(limits::kMaxGamePlayers) +
                                 "; use the sampled estimator or support-only players");
    for (TupleId t : sup)
        if (t != tid) g.support.push_back(t);
    for (const Witness& w : ws) {
        std::uint32_t m = 0;
        bool tau = false;
        for (TupleId t : w) {
            if (t == tid) {
                tau = true;
                continue;
            }
            auto it = std::lower_bound(g.support.begin(), g.support.end(), t);
            m |= 1u << (it - g.support.begin());
        }
        g.edges.push_back(m);
        g.needs_tau.push_back(tau);
    }
    return g;
}

} // namespace

Rat shapley(const DatabaseInstance& db, const UCQ& q, TupleId tid, bool support_only) {
    Game g = build_game(db, q, tid, support_only);
    if (!g.tau_in_support) return Rat(0); // dummy player
    const int n = static_cast<int>(g.players.size());
    const int m = static_cast<int>(g.support.size());
    const int rest = n - 1 - m; // players outside the support, excluding tid

    // For each subset T of the support the marginal of tid is constant
    // over every coalition S with S ^ support == T, so count, per
    // coalition size, how many coalitions improve.
    std::vector<Int> improving(static_cast<std::size_t>(n), Int(0));
    const std::uint64_t total = 1ull << m;
    for (std::uint64_t sub = 0; sub < total; ++sub) {
        auto t = static_cast<std::uint32_t>(sub);
        bool with_tau = false, without_tau = false;
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if ((t & g.edges[i]) == g.edges[i]) {
                with_tau = true;
                if (!g.needs_tau[i]) {
                    without_tau = true;
                    break;
                }
            }
        }
        if (!with_tau || without_tau) continue;
        const int base = std::popcount(t);
        for (int extra = 0; extra <= rest; ++extra)
            improving[static_cast<std::size_t>(base + extra)] += binomial(rest, extra);
    }
    Rat sum(0);
    const Int n_fact = factorial(n);
    for (int k = 0; k < n; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        if (improving[ks] != 0)
            sum += Rat(improving[ks] * factorial(k) * factorial(n - 1 - k), n_fact);
    }
    return sum;
}

Rat banzhaf(const DatabaseInstance& db, const UCQ& q, TupleId tid, bool support_only) {
    Game g = build_game(db, q, tid, support_only);
    if (!g.tau_in_support) return Rat(0);
    const int m = static_cast<int>(g.support.size());
    Int improving(0);
    const std::uint64_t total = 1ull << m;
    for (std::uint64_t sub = 0; sub < total; ++sub) {
        auto t = static_cast<std::uint32_t>(sub);
        bool with_tau = false, without_tau = false;
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if ((t & g.edges[i]) == g.edges[i]) {
                with_tau = true;
                if (!g.needs_tau[i]) {
                    without_tau = true;
                    break;
                }
            }
        }
        if (with_tau && !without_tau) ++improving;
    }
    // Marginals are insensitive to players outside the support, so the
    // 2^(n-1) coalitions collapse onto the 2^m support subsets.
    Int denom = Int(1) << m;
    return Rat(improving, denom);
}

SampleEstimate shapley_sampled(const DatabaseInstance& db, const UCQ& q, TupleId tid,
                               double eps, double delta, std::uint64_t seed) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw Error(kModule, "eps and delta must lie in (0,1)");
    if (!db.has_tid(tid))
        throw Error(kModule, "unknown tuple id " + std::to_string(tid));
    const auto samples =
        static_cast<std::int64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
    SampleEstimate est;
    est.samples = samples;
    est.seed = seed;

    // No player cap here: permutations are walked with per-witness
    // missing-member counts instead of bitmasks.
    const std::vector<TupleId> players = db.all_tids();
    const auto n = players.size();
    std::map<TupleId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(players[i], i);
    const std::size_t tau_idx = index.at(tid);

    const auto ws = witnesses(db, q);
    bool tau_in_support = false;
    std::vector<std::vector<std::size_t>> witnesses_of(n);
    std::vector<std::size_t> missing0(ws.size());
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
        missing0[wi] = ws[wi].size();
        for (TupleId t : ws[wi]) {
            witnesses_of[index.at(t)].push_back(wi);
            if (t == tid) tau_in_support = true;
        }
    }
    if (!tau_in_support) return est; // dummy player: exact value 0

    std::int64_t improving = 0;
    std::vector<std::size_t> perm(n);
    std::vector<std::size_t> missing;
    for (std::int64_t s = 0; s < samples; ++s) {
        // A self-contained generator per sample keeps the estimate
        // reproducible regardless of how samples are batched.
        std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(s) + 1);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(perm[i - 1], perm[j]);
        }
        // Walk the permutation; the marginal of tid is 1 exactly when
        // tid is the player completing the first witness.
        missing = missing0;
        for (std::size_t i = 0; i < n; ++i) {
            bool complete = false;
            for (std::size_t wi : witnesses_of[perm[i]])
                if (--missing[wi] == 0) complete = true;
            if (complete) {
                if (perm[i] == tau_idx) ++improving;
                break;
            }
        }
    }
    est.estimate = samples == 0 ? 0.0 : static_cast<double>(improving) / static_cast<double>(samples);
    return est;
}

} // namespace caudex
