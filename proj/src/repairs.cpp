#include "caudex/repairs.hpp"

#include "caudex/errors.hpp"
#include "caudex/eval.hpp"
#include "caudex/limits.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace caudex {

namespace {

const char* kModule = "repair-engine";

// Next bitmask with the same popcount (Gosper's hack).
std::uint32_t next_same_popcount(std::uint32_t v) {
    std::uint32_t c = v & (0u - v);
    std::uint32_t r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

// Enumerates subsets of {0,..,n-1} by increasing size (lexicographic
// within a size), skipping supersets of already-accepted masks, and
// accepts those satisfying `hits`. Sound for minimal-set enumeration:
// any proper subset of a candidate has already been visited.
template <typename HitsFn>
std::vector<std::uint32_t> minimal_masks_by_size(int n, HitsFn hits) {
    std::vector<std::uint32_t> found;
    if (hits(0u)) {
        found.push_back(0u);
        return found;
    }
    for (int k = 1; k <= n; ++k) {
        std::uint32_t mask = (k == 32) ? ~0u : ((1u << k) - 1);
        std::uint32_t limit = (n == 32) ? ~0u : (1u << n);
        while (mask < limit) {
            bool pruned = false;
            for (std::uint32_t m : found) {
                if ((m & ~mask) == 0) {
                    pruned = true;
                    break;
                }
            }
            if (!pruned && hits(mask)) found.push_back(mask);
            if (mask == 0) break;
            std::uint32_t next = next_same_popcount(mask);
            if (next <= mask) break; // overflow wrap
            mask = next;
        }
    }
    std::sort(found.begin(), found.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    return found;
}

} // namespace

std::vector<std::vector<TupleId>> minimal_hitting_sets(const std::vector<TupleId>& universe,
                                                       const std::vector<Witness>& edges) {
    const int n = static_cast<int>(universe.size());
    if (n > limits::kMaxHittingSetNodes)
        throw Error(kModule, "conflict hypergraph has " + std::to_string(n) +
                                 " conflicting tuples, exceeding the cap of " +
                                 std::to_string(limits::kMaxHittingSetNodes));
    std::map<TupleId, int> idx;
    for (int i = 0; i < n; ++i) idx.emplace(universe[i], i);

    std::vector<std::uint32_t> edge_masks;
    edge_masks.reserve(edges.size());
    for (const Witness& e : edges) {
        std::uint32_t m = 0;
        for (TupleId t : e) {
            auto it = idx.find(t);
            if (it == idx.end())
                throw Error(kModule, "hyperedge mentions tuple " + std::to_string(t) +
                                         " outside the given universe");
            m |= 1u << it->second;
        }
        edge_masks.push_back(m);
    }

    auto hits_all = [&](std::uint32_t mask) {
        for (std::uint32_t e : edge_masks)
            if ((mask & e) == 0) return false;
        return true;
    };

    std::vector<std::vector<TupleId>> out;
    for (std::uint32_t m : minimal_masks_by_size(n, hits_all)) {
        std::vector<TupleId> s;
        for (int i = 0; i < n; ++i)
            if (m & (1u << i)) s.push_back(universe[i]);
        out.push_back(std::move(s));
    }
    // Masks enumerate by numeric value; the promised order is size,
    // then element-wise lexicographic.
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

namespace {

std::vector<Repair> repairs_from_deletions(const DatabaseInstance& db,
                                           const std::vector<std::vector<TupleId>>& deletions) {
    std::vector<TupleId> all = db.all_tids();
    std::vector<Repair> out;
    out.reserve(deletions.size());
    for (const auto& del : deletions) {
        Repair r;
        r.deleted = del;
        std::set_difference(all.begin(), all.end(), del.begin(), del.end(),
                            std::back_inserter(r.kept));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

std::vector<Repair> s_repairs(const DatabaseInstance& db,
                              const std::vector<DenialConstraint>& dcs) {
    ConflictHypergraph g = conflict_hypergraph(db, dcs);
    return repairs_from_deletions(db, minimal_hitting_sets(g.conflicting(), g.edges));
}

std::vector<Repair> c_repairs(const DatabaseInstance& db,
                              const std::vector<DenialConstraint>& dcs) {
    std::vector<Repair> all = s_repairs(db, dcs);
    std::size_t best = SIZE_MAX;
    for (const Repair& r : all) best = std::min(best, r.deleted.size());
    std::vector<Repair> out;
    for (Repair& r : all)
        if (r.deleted.size() == best) out.push_back(std::move(r));
    return out;
}

std::vector<Repair> repairs(const DatabaseInstance& db, const std::vector<DenialConstraint>& dcs,
                            RepairSemantics sem) {
    return sem == RepairSemantics::Subset ? s_repairs(db, dcs) : c_repairs(db, dcs);
}

Rat inc_degree(const DatabaseInstance& db, const std::vector<DenialConstraint>& dcs) {
    if (db.size() == 0) return Rat(0);
    ConflictHypergraph g = conflict_hypergraph(db, dcs);
    if (g.edges.empty()) return Rat(0);
    auto hs = minimal_hitting_sets(g.conflicting(), g.edges);
    std::size_t best = SIZE_MAX;
    for (const auto& h : hs) best = std::min(best, h.size());
    return Rat(Int(best), Int(db.size()));
}

namespace {

// Candidate positions for NULL interventions: a position can matter
// only if some constraint atom over its relation holds, at that
// position, a constant or a variable with a second occurrence in the
// same constraint body. A NULL never matches a constant and never
// joins, so those matches break; a variable occurring once binds NULL
// just as well, so such positions never appear in a minimal
// intervention.
std::set<int> useful_positions(const std::string& relation,
                               const std::vector<DenialConstraint>& dcs) {
    std::set<int> out;
    for (const DenialConstraint& dc : dcs) {
        std::map<std::string, int> var_count;
        for (const Atom& a : dc.body)
            for (const Term& t : a.args)
                if (t.is_var()) ++var_count[t.text];
        for (const Atom& a : dc.body) {
            if (a.pred != relation) continue;
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                const Term& t = a.args[i];
                if (!t.is_var() || var_count[t.text] >= 2) out.insert(static_cast<int>(i) + 1);
            }
        }
    }
    return out;
}

} // namespace

std::vector<AttrInterventionSet> attr_repairs(const DatabaseInstance& db,
                                              const std::vector<DenialConstraint>& dcs,
                                              RepairSemantics sem) {
    ConflictHypergraph g = conflict_hypergraph(db, dcs);
    if (g.edges.empty()) return {AttrInterventionSet{}};

    std::vector<AttrPos> pool;
    for (TupleId tid : g.conflicting()) {
        auto loc = db.locate(tid);
        for (int p : useful_positions(*loc.relation, dcs)) {
            if (!loc.tuple->values[static_cast<std::size_t>(p - 1)].is_null())
                pool.push_back(AttrPos{tid, p});
        }
    }
    std::sort(pool.begin(), pool.end());
    const int n = static_cast<int>(pool.size());
    if (n > limits::kMaxAttrPool)
        throw Error(kModule, "attribute intervention pool has " + std::to_string(n) +
                                 " positions, exceeding the cap of " +
                                 std::to_string(limits::kMaxAttrPool));

    auto consistent = [&](std::uint32_t mask) {
        AttrInterventionSet iv;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) iv.push_back(pool[static_cast<std::size_t>(i)]);
        DatabaseInstance patched = db.with_nulls(iv);
        for (const DenialConstraint& dc : dcs)
            if (!satisfies_dc(patched, dc)) return false;
        return true;
    };

    std::vector<AttrInterventionSet> out;
    for (std::uint32_t m : minimal_masks_by_size(n, consistent)) {
        AttrInterventionSet iv;
        for (int i = 0; i < n; ++i)
            if (m & (1u << i)) iv.push_back(pool[static_cast<std::size_t>(i)]);
        out.push_back(std::move(iv));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    if (sem == RepairSemantics::Cardinality) {
        std::size_t best = SIZE_MAX;
        for (const auto& iv : out) best = std::min(best, iv.size());
        std::vector<AttrInterventionSet> filtered;
        for (auto& iv : out)
            if (iv.size() == best) filtered.push_back(std::move(iv));
        out = std::move(filtered);
    }
    return out;
}

} // namespace caudex
