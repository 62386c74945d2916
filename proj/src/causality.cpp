#include "caudex/causality.hpp"

#include "caudex/analysis.hpp"
#include "caudex/errors.hpp"
#include "caudex/hypergraph.hpp"
#include "caudex/limits.hpp"
#include "caudex/repairs.hpp"

#include <algorithm>
#include <map>

namespace caudex {

namespace {

const char* kModule = "causality-engine";

void require_true(const DatabaseInstance& db, const UCQ& q) {
    if (!eval_boolean(db, q))
        throw Error(kModule, "query " + q.head_name + " is false; causes are undefined");
}

} // namespace

std::string to_string(CauseKind k) {
    switch (k) {
        case CauseKind::None: return "none";
        case CauseKind::Actual: return "actual";
        case CauseKind::Counterfactual: return "counterfactual";
    }
    return "none";
}

std::vector<CauseReport> actual_causes(const DatabaseInstance& db, const UCQ& q) {
    require_true(db, q);
    // A tuple is an actual cause with contingency G exactly when
    // G + {t} is a hitting set of the witness hyperedges; smallest
    // such sets are the minimal ways to falsify the query.
    ConflictHypergraph g = conflict_hypergraph(db, negate_to_dcs(q));
    auto hs = minimal_hitting_sets(g.conflicting(), g.edges);

    std::map<TupleId, CauseReport> by_tid;
    for (const auto& s : hs) {
        for (TupleId t : s) {
            CauseReport& r = by_tid.try_emplace(t, CauseReport{t, CauseKind::Actual, Rat(0), {}})
                                 .first->second;
            std::vector<TupleId> gamma;
            for (TupleId u : s)
                if (u != t) gamma.push_back(u);
            std::size_t best =
                r.min_contingencies.empty() ? SIZE_MAX : r.min_contingencies.front().size();
            if (gamma.size() < best) {
                r.min_contingencies.clear();
                r.min_contingencies.push_back(std::move(gamma));
            } else if (gamma.size() == best) {
                r.min_contingencies.push_back(std::move(gamma));
            }
        }
    }
    std::vector<CauseReport> out;
    for (auto& [tid, r] : by_tid) {
        std::sort(r.min_contingencies.begin(), r.min_contingencies.end());
        r.responsibility = Rat(1, Int(1 + r.min_contingencies.front().size()));
        if (r.min_contingencies.front().empty()) r.kind = CauseKind::Counterfactual;
        out.push_back(std::move(r));
    }
    return out;
}

CauseReport cause_report(const DatabaseInstance& db, const UCQ& q, TupleId tid) {
    if (!db.has_tid(tid))
        throw Error(kModule, "unknown tuple id " + std::to_string(tid));
    for (CauseReport& r : actual_causes(db, q))
        if (r.tid == tid) return std::move(r);
    return CauseReport{tid, CauseKind::None, Rat(0), {}};
}

Rat responsibility(const DatabaseInstance& db, const UCQ& q, TupleId tid) {
    return cause_report(db, q, tid).responsibility;
}

std::vector<CauseReport> causes_under_ics(const DatabaseInstance& db, const UCQ& q,
                                          const Constraints& ics) {
    require_true(db, q);
    if (!satisfies_all(db, ics))
        throw Error(kModule, "database violates the hard constraints; causes are undefined");

    std::vector<TupleId> all = db.all_tids();
    const int pool = static_cast<int>(all.size()) - 1;
    if (pool > limits::kMaxContingencyPool)
        throw Error(kModule, "contingency pool has " + std::to_string(pool) +
                                 " tuples, exceeding the cap of " +
                                 std::to_string(limits::kMaxContingencyPool));

    std::vector<CauseReport> out;
    for (TupleId tau : all) {
        std::vector<TupleId> others;
        for (TupleId t : all)
            if (t != tau) others.push_back(t);
        const std::size_t n = others.size();

        std::vector<std::vector<TupleId>> best;
        for (std::size_t k = 0; k <= n && best.empty(); ++k) {
            std::vector<std::size_t> pick(k);
            for (std::size_t i = 0; i < k; ++i) pick[i] = i;
            bool more = true;
            while (more) {
                TidSet gamma;
                for (std::size_t i : pick) gamma.insert(others[i]);
                bool ok_before = satisfies_all(db, ics, &gamma) && eval_boolean(db, q, &gamma);
                if (ok_before) {
                    gamma.insert(tau);
                    if (satisfies_all(db, ics, &gamma) && !eval_boolean(db, q, &gamma)) {
                        std::vector<TupleId> g;
                        for (std::size_t i : pick) g.push_back(others[i]);
                        best.push_back(std::move(g));
                    }
                }
                // next k-combination of {0..n-1}
                more = false;
                for (std::size_t i = k; i-- > 0;) {
                    if (pick[i] < n - (k - i)) {
                        ++pick[i];
                        for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                        more = true;
                        break;
                    }
                }
            }
            if (!best.empty()) {
                CauseReport r;
                r.tid = tau;
                r.min_contingencies = best;
                r.responsibility = Rat(1, Int(1 + best.front().size()));
                r.kind = best.front().empty() ? CauseKind::Counterfactual : CauseKind::Actual;
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

std::vector<AttrCauseReport> attr_causes(const DatabaseInstance& db, const UCQ& q) {
    require_true(db, q);
    auto family = attr_repairs(db, negate_to_dcs(q), RepairSemantics::Subset);

    std::map<AttrPos, AttrCauseReport> by_pos;
    for (const AttrInterventionSet& iv : family) {
        for (const AttrPos& p : iv) {
            auto it = by_pos.find(p);
            if (it == by_pos.end()) {
                AttrCauseReport r;
                r.pos = p;
                auto loc = db.locate(p.tid);
                r.value = loc.tuple->values[static_cast<std::size_t>(p.pos - 1)].to_string();
                r.kind = CauseKind::Actual;
                it = by_pos.emplace(p, std::move(r)).first;
            }
            AttrCauseReport& r = it->second;
            AttrInterventionSet gamma;
            for (const AttrPos& o : iv)
                if (!(o == p)) gamma.push_back(o);
            std::size_t best =
                r.min_contingencies.empty() ? SIZE_MAX : r.min_contingencies.front().size();
            if (gamma.size() < best) {
                r.min_contingencies.clear();
                r.min_contingencies.push_back(std::move(gamma));
            } else if (gamma.size() == best) {
                r.min_contingencies.push_back(std::move(gamma));
            }
        }
    }
    std::vector<AttrCauseReport> out;
    for (auto& [p, r] : by_pos) {
        std::sort(r.min_contingencies.begin(), r.min_contingencies.end());
        r.responsibility = Rat(1, Int(1 + r.min_contingencies.front().size()));
        if (r.min_contingencies.front().empty()) r.kind = CauseKind::Counterfactual;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace caudex
