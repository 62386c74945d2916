#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "caudex/analysis.hpp"
#include "caudex/causality.hpp"
#include "caudex/database.hpp"
#include "caudex/eval.hpp"
#include "caudex/games.hpp"
#include "caudex/lineage.hpp"
#include "caudex/parser.hpp"
#include "caudex/repairs.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using caudex::DatabaseInstance;
using caudex::Rat;
using caudex::TupleId;
using caudex::UCQ;
using caudex::Witness;

namespace {

// Deterministic generator: mt19937's output sequence is pinned by the
// standard, so these suites replay identically everywhere.
struct Rng {
    std::mt19937 g;
    explicit Rng(unsigned seed) : g(seed) {}
    std::size_t pick(std::size_t k) { return static_cast<std::size_t>(g() % k); }
};

// A small random instance over R/2, S/1, T/2 with sequential tids.
DatabaseInstance random_instance(Rng& rng) {
    std::size_t dom = 2 + rng.pick(3);
    auto sym = [&] { return caudex::Value::symbol(std::string(1, static_cast<char>('a' + rng.pick(dom)))); };

    DatabaseInstance db;
    TupleId tid = 1;
    caudex::Relation r("R", 2);
    std::size_t nr = 1 + rng.pick(4);
    for (std::size_t i = 0; i < nr; ++i) r.add(caudex::Tuple{tid++, {sym(), sym()}});
    db.add_relation(std::move(r));

    caudex::Relation s("S", 1);
    std::size_t ns = 1 + rng.pick(3);
    for (std::size_t i = 0; i < ns; ++i) s.add(caudex::Tuple{tid++, {sym()}});
    db.add_relation(std::move(s));

    caudex::Relation t("T", 2);
    std::size_t nt = rng.pick(3);
    for (std::size_t i = 0; i < nt; ++i) t.add(caudex::Tuple{tid++, {sym(), sym()}});
    db.add_relation(std::move(t));
    return db;
}

const std::vector<UCQ>& query_pool() {
    static const std::vector<UCQ> pool = [] {
        std::vector<UCQ> qs;
        for (const char* text : {
                 "q() :- R(X,Y), S(Y).",
                 "q() :- S(X), R(X,Y), S(Y).",
                 "q() :- R(X,Y).",
                 "q() :- R(X,X). q() :- S(X), T(X,Y).",
                 "q() :- R(X,Y), T(Y,Z).",
             })
            qs.push_back(caudex::parse(text).single_query());
        return qs;
    }();
    return pool;
}

const std::vector<std::vector<caudex::DenialConstraint>>& dc_pool() {
    static const std::vector<std::vector<caudex::DenialConstraint>> pool = [] {
        std::vector<std::vector<caudex::DenialConstraint>> out;
        for (const char* text : {
                 ":- R(X,Y), S(Y).",
                 ":- S(X), R(X,Y), S(Y).",
                 ":- R(X,X).",
                 ":- R(X,Y), R(Y,X).",
                 ":- S(X), T(X,Y). :- R(X,X).",
             })
            out.push_back(caudex::parse(text).dcs());
        return out;
    }();
    return pool;
}

std::vector<std::set<TupleId>> as_sets(const std::vector<std::vector<TupleId>>& v) {
    std::vector<std::set<TupleId>> out;
    for (const auto& x : v) out.emplace_back(x.begin(), x.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// Coalition value of the monotone game induced by the minimal
// witnesses: 1 when the coalition covers a witness.
bool wins(const std::vector<Witness>& ws, const std::vector<TupleId>& coalition) {
    for (const Witness& w : ws)
        if (std::includes(coalition.begin(), coalition.end(), w.begin(), w.end())) return true;
    return false;
}

} // namespace

TEST_SUITE("prop-cause-repair-duality") {
    TEST_CASE("causes and responsibilities line up with the repairs of the negated query") {
        Rng rng(9001);
        int checked = 0;
        for (int trial = 0; trial < 600 && checked < 200; ++trial) {
            auto db = random_instance(rng);
            const UCQ& q = query_pool()[trial % query_pool().size()];
            if (!caudex::eval_boolean(db, q)) continue;
            ++checked;

            auto engine = caudex::actual_causes(db, q);
            auto expected = oracle::causes(db, q);
            REQUIRE(engine.size() == expected.size());
            for (std::size_t i = 0; i < engine.size(); ++i) {
                CHECK(engine[i].tid == expected[i].tid);
                CHECK((engine[i].kind == caudex::CauseKind::Counterfactual) ==
                      expected[i].counterfactual);
                CHECK(engine[i].responsibility == expected[i].responsibility);
                CHECK(helpers::canon(engine[i].min_contingencies) ==
                      helpers::canon(expected[i].min_contingencies));
            }

            // Duality: deleting a subset-repair of the negated query is
            // exactly how a cause (plus its contingency) disappears.
            auto dcs = caudex::negate_to_dcs(q);
            auto reps = caudex::s_repairs(db, dcs);
            std::vector<std::vector<TupleId>> deleted;
            for (const auto& r : reps) deleted.push_back(r.deleted);
            CHECK(as_sets(deleted) == as_sets(oracle::repairs(db, dcs).s_deleted));

            for (TupleId tid : db.all_tids()) {
                std::size_t smallest = 0;
                for (const auto& d : deleted)
                    if (std::find(d.begin(), d.end(), tid) != d.end())
                        if (smallest == 0 || d.size() < smallest) smallest = d.size();
                bool is_cause = std::any_of(engine.begin(), engine.end(),
                                            [&](const auto& c) { return c.tid == tid; });
                CHECK(is_cause == (smallest > 0));
                if (smallest > 0) {
                    Rat rho = Rat(1) / Rat(static_cast<int>(smallest));
                    auto it = std::find_if(engine.begin(), engine.end(),
                                           [&](const auto& c) { return c.tid == tid; });
                    CHECK(it->responsibility == rho);
                    CHECK((it->kind == caudex::CauseKind::Counterfactual) == (smallest == 1));
                }
            }
        }
        CHECK(checked >= 200);
    }
}

TEST_SUITE("prop-banzhaf-causal-effect") {
    TEST_CASE("the Banzhaf value is the causal effect at tuple probability one half") {
        Rng rng(9002);
        const Rat half = Rat(1) / Rat(2);
        for (int trial = 0; trial < 220; ++trial) {
            auto db = random_instance(rng);
            const UCQ& q = query_pool()[trial % query_pool().size()];
            for (TupleId tid : db.all_tids()) {
                Rat b = caudex::banzhaf(db, q, tid);
                CHECK(b == caudex::causal_effect(db, q, tid, half));
                if (trial % 4 == 0) {
                    CHECK(b == oracle::banzhaf(db, q, tid));
                    CHECK(b == oracle::causal_effect(db, q, tid, half));
                }
            }
        }
    }
}

TEST_SUITE("prop-shapley-axioms") {
    TEST_CASE("efficiency, dummy, symmetry, and the permutation definition") {
        Rng rng(9003);
        for (int trial = 0; trial < 220; ++trial) {
            auto db = random_instance(rng);
            const UCQ& q = query_pool()[trial % query_pool().size()];
            auto tids = db.all_tids();

            std::map<TupleId, Rat> phi;
            Rat sum(0);
            for (TupleId tid : tids) {
                phi[tid] = caudex::shapley(db, q, tid);
                sum += phi[tid];
            }

            // Efficiency: the shares exhaust the grand coalition's value.
            CHECK(sum == Rat(caudex::eval_boolean(db, q) ? 1 : 0));

            auto ws = caudex::witnesses(db, q);
            std::set<TupleId> support;
            for (const auto& w : ws) support.insert(w.begin(), w.end());

            // Dummy: a tuple in no minimal witness never changes the value.
            for (TupleId tid : tids)
                if (!support.count(tid)) CHECK(phi[tid] == Rat(0));

            // Symmetry: interchangeable players earn the same share.
            std::vector<TupleId> sup(support.begin(), support.end());
            for (std::size_t i = 0; i < sup.size(); ++i)
                for (std::size_t j = i + 1; j < sup.size(); ++j) {
                    std::vector<TupleId> others;
                    for (TupleId t : tids)
                        if (t != sup[i] && t != sup[j]) others.push_back(t);
                    bool interchangeable = true;
                    for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
                        std::vector<TupleId> with_i, with_j;
                        for (std::size_t k = 0; k < others.size(); ++k)
                            if (mask & (1u << k)) {
                                with_i.push_back(others[k]);
                                with_j.push_back(others[k]);
                            }
                        with_i.push_back(sup[i]);
                        with_j.push_back(sup[j]);
                        std::sort(with_i.begin(), with_i.end());
                        std::sort(with_j.begin(), with_j.end());
                        if (wins(ws, with_i) != wins(ws, with_j)) {
                            interchangeable = false;
                            break;
                        }
                    }
                    if (interchangeable) CHECK(phi[sup[i]] == phi[sup[j]]);
                }

            // Spot-check the closed form against the permutation scan.
            if (trial % 8 == 0 && tids.size() <= 6) {
                TupleId tid = tids[rng.pick(tids.size())];
                CHECK(phi[tid] == oracle::shapley(db, q, tid));
            }
        }
    }
}

TEST_SUITE("prop-inc-degree") {
    TEST_CASE("subset and cardinality semantics agree, and match the scan") {
        Rng rng(9004);
        for (int trial = 0; trial < 220; ++trial) {
            auto db = random_instance(rng);
            const auto& dcs = dc_pool()[trial % dc_pool().size()];

            Rat eng = caudex::inc_degree(db, dcs);
            CHECK(eng == oracle::inc_degree(db, dcs));

            auto srep = caudex::s_repairs(db, dcs);
            auto crep = caudex::c_repairs(db, dcs);
            REQUIRE(!srep.empty());
            REQUIRE(!crep.empty());
            std::size_t s_min = srep.front().deleted.size();
            for (const auto& r : srep) s_min = std::min(s_min, r.deleted.size());
            for (const auto& r : crep) CHECK(r.deleted.size() == s_min);

            Rat via_card = Rat(static_cast<int>(s_min)) / Rat(static_cast<int>(db.size()));
            CHECK(eng == via_card);
            CHECK((eng == Rat(0)) == oracle::consistent(db, dcs));
        }
    }
}

TEST_SUITE("prop-probability") {
    TEST_CASE("query probability is monotone in the tuple probabilities") {
        Rng rng(9005);
        const std::vector<Rat> levels = {Rat(0),          Rat(1) / Rat(4), Rat(1) / Rat(3),
                                         Rat(1) / Rat(2), Rat(2) / Rat(3), Rat(1)};
        for (int trial = 0; trial < 220; ++trial) {
            auto db = random_instance(rng);
            const UCQ& q = query_pool()[trial % query_pool().size()];
            auto f = caudex::lineage(db, q);

            std::map<TupleId, Rat> lo, hi;
            for (TupleId tid : db.all_tids()) {
                Rat p = levels[rng.pick(levels.size())];
                lo[tid] = p;
                // Raise by a random fraction of the headroom.
                switch (rng.pick(3)) {
                    case 0: hi[tid] = p; break;
                    case 1: hi[tid] = p + (Rat(1) - p) / Rat(2); break;
                    default: hi[tid] = Rat(1); break;
                }
            }

            Rat pr_lo = caudex::prob_true(f, lo, Rat(0));
            Rat pr_hi = caudex::prob_true(f, hi, Rat(0));
            CHECK(pr_lo >= Rat(0));
            CHECK(pr_hi <= Rat(1));
            CHECK(pr_lo <= pr_hi);

            std::map<TupleId, Rat> ones, zeros;
            for (TupleId tid : db.all_tids()) {
                ones[tid] = Rat(1);
                zeros[tid] = Rat(0);
            }
            CHECK(caudex::prob_true(f, ones, Rat(0)) ==
                  Rat(caudex::eval_boolean(db, q) ? 1 : 0));
            CHECK(caudex::prob_true(f, zeros, Rat(0)) == Rat(0));

            // Interventions: forcing a tuple in never hurts a monotone
            // query, and their gap is the causal effect.
            const Rat third = Rat(1) / Rat(3);
            for (TupleId tid : f.free_vars()) {
                Rat on = caudex::prob_true(caudex::intervene(f, tid, true), third);
                Rat off = caudex::prob_true(caudex::intervene(f, tid, false), third);
                CHECK(on >= off);
                CHECK(caudex::causal_effect(db, q, tid, third) == on - off);
            }
        }
    }
}
