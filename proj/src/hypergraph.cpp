#include "caudex/hypergraph.hpp"

#include <algorithm>

namespace caudex {

std::vector<Witness> minimalize(std::vector<Witness> sets) {
    std::sort(sets.begin(), sets.end(), [](const Witness& a, const Witness& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Witness> out;
    for (const Witness& w : sets) {
        bool dominated = false;
        for (const Witness& m : out) {
            if (std::includes(w.begin(), w.end(), m.begin(), m.end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(w);
    }
    std::sort(out.begin(), out.end(), [](const Witness& a, const Witness& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

ConflictHypergraph conflict_hypergraph(const DatabaseInstance& db,
                                       const std::vector<DenialConstraint>& dcs) {
    ConflictHypergraph g;
    g.nodes = db.all_tids();
    std::vector<Witness> edges;
    for (const DenialConstraint& dc : dcs) {
        auto ws = dc_witnesses(db, dc);
        edges.insert(edges.end(), ws.begin(), ws.end());
    }
    g.edges = minimalize(std::move(edges));
    return g;
}

std::vector<TupleId> ConflictHypergraph::conflicting() const {
    std::vector<TupleId> out;
    for (const Witness& e : edges) out.insert(out.end(), e.begin(), e.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace caudex
