#include "caudex/analysis.hpp"

#include "caudex/errors.hpp"

#include <map>
#include <set>

namespace caudex {

static const char* kModule = "query-lang";

DenialConstraint negate_to_dc(const CQ& q) {
    if (!q.is_boolean())
        throw Error(kModule, "negate_to_dc requires a Boolean query, but " + q.head_name +
                                 " has free variables");
    DenialConstraint dc;
    dc.body = q.body;
    dc.pos = q.pos;
    return dc;
}

std::vector<DenialConstraint> negate_to_dcs(const UCQ& q) {
    if (!q.is_boolean())
        throw Error(kModule, "negate_to_dcs requires a Boolean query, but " + q.head_name +
                                 " has free variables");
    std::vector<DenialConstraint> out;
    out.reserve(q.disjuncts.size());
    for (const CQ& d : q.disjuncts) out.push_back(negate_to_dc(d));
    return out;
}

bool has_self_join(const CQ& q) {
    std::set<std::string> seen;
    for (const Atom& a : q.body)
        if (!seen.insert(a.pred).second) return true;
    return false;
}

HierarchyReport is_hierarchical(const CQ& q) {
    if (!q.is_boolean())
        throw Error(kModule, "dichotomy precondition violated: " + q.head_name +
                                 " has free variables");
    if (has_self_join(q))
        throw Error(kModule, "dichotomy precondition violated: " + q.head_name +
                                 " has a self-join");
    // Atoms(x): the set of body-atom indices where x occurs.
    std::map<std::string, std::set<std::size_t>> atoms_of;
    for (std::size_t i = 0; i < q.body.size(); ++i)
        for (const Term& t : q.body[i].args)
            if (t.is_var()) atoms_of[t.text].insert(i);

    for (auto it = atoms_of.begin(); it != atoms_of.end(); ++it) {
        for (auto jt = std::next(it); jt != atoms_of.end(); ++jt) {
            const auto& a = it->second;
            const auto& b = jt->second;
            bool a_in_b = std::includes(b.begin(), b.end(), a.begin(), a.end());
            bool b_in_a = std::includes(a.begin(), a.end(), b.begin(), b.end());
            if (a_in_b || b_in_a) continue;
            bool disjoint = true;
            for (std::size_t x : a)
                if (b.count(x)) disjoint = false;
            if (!disjoint)
                return {false, std::make_pair(it->first, jt->first)};
        }
    }
    return {true, std::nullopt};
}

} // namespace caudex
