#include "caudex/eval.hpp"

#include "caudex/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace caudex {

namespace {

const char* kModule = "relational-core";

struct Matcher {
    const DatabaseInstance& db;
    const std::vector<Atom>& atoms;
    const TidSet* deleted;
    std::map<std::string, Value> env;
    std::vector<TupleId> used;
    // Returns true to keep enumerating, false to stop early.
    std::function<bool(const std::map<std::string, Value>&, const std::vector<TupleId>&)> on_match;

    bool run() { return descend(0); }

    bool descend(std::size_t idx) {
        if (idx == atoms.size()) return on_match(env, used);
        const Atom& atom = atoms[idx];
        const Relation* rel = db.find(atom.pred);
        if (!rel)
            throw Error(kModule, "unknown relation " + atom.pred);
        if (rel->arity() != atom.args.size())
            throw Error(kModule, "relation " + atom.pred + " has arity " +
                                     std::to_string(rel->arity()) + ", atom uses " +
                                     std::to_string(atom.args.size()));
        for (const Tuple& t : rel->tuples()) {
            if (deleted && deleted->count(t.tid)) continue;
            std::vector<std::string> bound_here;
            bool ok = true;
            for (std::size_t i = 0; i < atom.args.size() && ok; ++i) {
                const Term& a = atom.args[i];
                const Value& v = t.values[i];
                if (!a.is_var()) {
                    ok = joins(v, Value::symbol(a.text));
                } else if (auto it = env.find(a.text); it != env.end()) {
                    ok = joins(it->second, v);
                } else {
                    env.emplace(a.text, v);
                    bound_here.push_back(a.text);
                }
            }
            if (ok) {
                used.push_back(t.tid);
                bool keep = descend(idx + 1);
                used.pop_back();
                if (!keep) {
                    for (const auto& v : bound_here) env.erase(v);
                    return false;
                }
            }
            for (const auto& v : bound_here) env.erase(v);
        }
        return true;
    }
};

std::vector<Witness> minimal_sets(std::vector<Witness> sets) {
    std::sort(sets.begin(), sets.end(),
              [](const Witness& a, const Witness& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
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
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Witness> body_witnesses(const DatabaseInstance& db, const std::vector<Atom>& body,
                                    std::vector<Witness> acc = {}) {
    Matcher m{db, body, nullptr, {}, {}, {}};
    m.on_match = [&](const auto&, const std::vector<TupleId>& used) {
        Witness w(used.begin(), used.end());
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
        acc.push_back(std::move(w));
        return true;
    };
    m.run();
    return acc;
}

} // namespace

std::set<std::vector<Value>> eval_query(const DatabaseInstance& db, const UCQ& q,
                                        const TidSet* deleted) {
    std::set<std::vector<Value>> answers;
    for (const CQ& d : q.disjuncts) {
        if (d.head_vars.size() != q.head_arity)
            throw Error("query-lang", "disjunct of " + q.head_name + " has mismatched head arity");
        Matcher m{db, d.body, deleted, {}, {}, {}};
        m.on_match = [&](const std::map<std::string, Value>& env, const auto&) {
            std::vector<Value> row;
            row.reserve(d.head_vars.size());
            for (const std::string& v : d.head_vars) row.push_back(env.at(v));
            answers.insert(std::move(row));
            return true;
        };
        m.run();
    }
    return answers;
}

bool eval_boolean(const DatabaseInstance& db, const UCQ& q, const TidSet* deleted) {
    if (!q.is_boolean())
        throw Error("query-lang", "expected a Boolean query, but " + q.head_name +
                                      " has free variables");
    for (const CQ& d : q.disjuncts) {
        bool found = false;
        Matcher m{db, d.body, deleted, {}, {}, {}};
        m.on_match = [&](const auto&, const auto&) {
            found = true;
            return false;
        };
        m.run();
        if (found) return true;
    }
    return false;
}

std::vector<Witness> witnesses(const DatabaseInstance& db, const CQ& q) {
    if (!q.is_boolean())
        throw Error("query-lang", "witnesses require a Boolean query, but " + q.head_name +
                                      " has free variables");
    return minimal_sets(body_witnesses(db, q.body));
}

std::vector<Witness> witnesses(const DatabaseInstance& db, const UCQ& q) {
    if (!q.is_boolean())
        throw Error("query-lang", "witnesses require a Boolean query, but " + q.head_name +
                                      " has free variables");
    std::vector<Witness> all;
    for (const CQ& d : q.disjuncts) all = body_witnesses(db, d.body, std::move(all));
    return minimal_sets(std::move(all));
}

std::vector<Witness> dc_witnesses(const DatabaseInstance& db, const DenialConstraint& dc) {
    return minimal_sets(body_witnesses(db, dc.body));
}

bool satisfies_dc(const DatabaseInstance& db, const DenialConstraint& dc, const TidSet* deleted) {
    bool violated = false;
    Matcher m{db, dc.body, deleted, {}, {}, {}};
    m.on_match = [&](const auto&, const auto&) {
        violated = true;
        return false;
    };
    m.run();
    return !violated;
}

bool satisfies_ind(const DatabaseInstance& db, const InclusionDependency& ind,
                   const TidSet* deleted) {
    const std::vector<Atom> premise{ind.source};
    bool ok = true;
    Matcher outer{db, premise, deleted, {}, {}, {}};
    outer.on_match = [&](const std::map<std::string, Value>& env, const auto&) {
        // Shared variables stay bound while we look for a target match;
        // existential variables are free in the inner search.
        std::vector<Atom> target{ind.target};
        Matcher inner{db, target, deleted, {}, {}, {}};
        for (const auto& [var, val] : env) {
            bool existential = std::find(ind.exists_vars.begin(), ind.exists_vars.end(), var) !=
                               ind.exists_vars.end();
            if (!existential) inner.env.emplace(var, val);
        }
        bool found = false;
        inner.on_match = [&](const auto&, const auto&) {
            found = true;
            return false;
        };
        inner.run();
        if (!found) {
            ok = false;
            return false;
        }
        return true;
    };
    outer.run();
    return ok;
}

bool satisfies_all(const DatabaseInstance& db, const Constraints& ics, const TidSet* deleted) {
    for (const auto& dc : ics.dcs)
        if (!satisfies_dc(db, dc, deleted)) return false;
    for (const auto& ind : ics.inds)
        if (!satisfies_ind(db, ind, deleted)) return false;
    return true;
}

} // namespace caudex
