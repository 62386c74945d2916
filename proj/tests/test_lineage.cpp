#include "doctest.h"

#include "caudex/errors.hpp"
#include "caudex/lineage.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using caudex::causal_effect;
using caudex::intervene;
using caudex::lineage;
using caudex::LineageFormula;
using caudex::prob_true;
using caudex::Rat;
using caudex::TupleId;
using caudex::Witness;

TEST_SUITE("lineage") {
    TEST_CASE("lineage of the path query is the witness DNF") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        auto f = lineage(db, q);
        CHECK(f.disjuncts() == std::vector<Witness>{{1}, {2, 3}, {4, 5, 6}});
        CHECK(f.free_vars() == std::vector<TupleId>{1, 2, 3, 4, 5, 6});
        CHECK_FALSE(f.is_constant());
        CHECK(f.to_string() == "x1 | (x2 & x3) | (x4 & x5 & x6)");
    }

    TEST_CASE("lineage of the join query") {
        auto db = helpers::db("rs2");
        auto q = helpers::query("rs2/q.cq");
        auto f = lineage(db, q);
        CHECK(f.disjuncts() == std::vector<Witness>{{1, 4}, {2, 5}, {3, 4}});
    }

    TEST_CASE("constants and absorption") {
        auto t = LineageFormula::constant(true);
        CHECK(t.is_constant());
        CHECK(t.constant_value());
        CHECK(t.to_string() == "true");
        CHECK(prob_true(t, Rat(1, 3)) == Rat(1));

        auto fls = LineageFormula::constant(false);
        CHECK(fls.is_constant());
        CHECK_FALSE(fls.constant_value());
        CHECK(prob_true(fls, Rat(1, 3)) == Rat(0));

        // A subsumed disjunct disappears; duplicates collapse.
        auto f = LineageFormula::of_witnesses({{1, 2}, {1}, {2, 1}, {1}});
        CHECK(f.disjuncts() == std::vector<Witness>{{1}});
    }

    TEST_CASE("intervening pins variables and simplifies") {
        auto db = helpers::db("graph");
        auto f = lineage(db, helpers::query("graph/path.ucq"));

        auto on = intervene(f, 1, true);
        CHECK(on.is_constant());
        CHECK(on.constant_value());
        CHECK(on.pinned().at(1) == true);

        auto off = intervene(f, 1, false);
        CHECK(off.disjuncts() == std::vector<Witness>{{2, 3}, {4, 5, 6}});
        CHECK(off.pinned().at(1) == false);
        CHECK(off.free_vars() == std::vector<TupleId>{2, 3, 4, 5, 6});

        auto off23 = intervene(intervene(off, 2, false), 4, false);
        CHECK(off23.is_constant());
        CHECK_FALSE(off23.constant_value());

        // Pinning an absent variable only records the pin.
        auto noop = intervene(f, 42, false);
        CHECK(noop.disjuncts() == f.disjuncts());
        CHECK(noop.pinned().at(42) == false);
    }

    TEST_CASE("uniform probability of the path query") {
        auto db = helpers::db("graph");
        auto f = lineage(db, helpers::query("graph/path.ucq"));
        CHECK(prob_true(f, Rat(1, 2)) == Rat(43, 64));
        CHECK(prob_true(f, Rat(1)) == Rat(1));
        CHECK(prob_true(f, Rat(0)) == Rat(0));
    }

    TEST_CASE("per-tuple probabilities with fallback") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        auto f = lineage(db, q);

        std::map<TupleId, Rat> probs{{1, Rat(1, 2)}, {2, Rat(1, 3)}, {3, Rat(1, 4)},
                                     {4, Rat(1, 5)}, {5, Rat(1, 6)}, {6, Rat(1, 7)}};
        CHECK(prob_true(f, probs, Rat(1, 2)) == oracle::prob_query(db, q, probs));

        // Missing entries fall back.
        std::map<TupleId, Rat> partial{{1, Rat(1, 3)}};
        std::map<TupleId, Rat> filled{{1, Rat(1, 3)}, {2, Rat(1, 2)}, {3, Rat(1, 2)},
                                      {4, Rat(1, 2)}, {5, Rat(1, 2)}, {6, Rat(1, 2)}};
        CHECK(prob_true(f, partial, Rat(1, 2)) == oracle::prob_query(db, q, filled));
    }

    TEST_CASE("probabilities outside the unit interval are rejected") {
        auto db = helpers::db("graph");
        auto f = lineage(db, helpers::query("graph/path.ucq"));
        CHECK_THROWS_AS(prob_true(f, Rat(3, 2)), caudex::Error);
        CHECK_THROWS_AS(prob_true(f, Rat(-1, 2)), caudex::Error);
        std::map<TupleId, Rat> bad{{1, Rat(2)}};
        CHECK_THROWS_AS(prob_true(f, bad, Rat(1, 2)), caudex::Error);
        CHECK_THROWS_AS(causal_effect(db, helpers::query("graph/path.ucq"), 1, Rat(2)),
                        caudex::Error);
    }

    TEST_CASE("causal effects on the path query") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        CHECK(causal_effect(db, q, 1, Rat(1, 2)) == Rat(21, 32));
        CHECK(causal_effect(db, q, 2, Rat(1, 2)) == Rat(7, 32));
        CHECK(causal_effect(db, q, 3, Rat(1, 2)) == Rat(7, 32));
        CHECK(causal_effect(db, q, 4, Rat(1, 2)) == Rat(3, 32));
        CHECK(causal_effect(db, q, 5, Rat(1, 2)) == Rat(3, 32));
        CHECK(causal_effect(db, q, 6, Rat(1, 2)) == Rat(3, 32));
    }

    TEST_CASE("causal effect distinguishes the endogenous join tuple") {
        auto db = helpers::db("rs2");
        auto q = helpers::query("rs2/q.cq");
        CHECK(causal_effect(db, q, 4, Rat(1, 2)) == Rat(9, 16));
    }

    TEST_CASE("causal effect of an unknown tuple is an error") {
        auto db = helpers::db("rs2");
        auto q = helpers::query("rs2/q.cq");
        CHECK_THROWS_AS(causal_effect(db, q, 99, Rat(1, 2)), caudex::Error);
    }

    TEST_CASE("causal effects agree with the exhaustive oracle") {
        for (const char* fix : {"graph", "rs2"}) {
            auto db = helpers::db(fix);
            auto q = helpers::query(std::string(fix) +
                                    (std::string(fix) == "graph" ? "/path.ucq" : "/q.cq"));
            for (TupleId t : db.all_tids()) {
                CHECK(causal_effect(db, q, t, Rat(1, 2)) ==
                      oracle::causal_effect(db, q, t, Rat(1, 2)));
                CHECK(causal_effect(db, q, t, Rat(1, 3)) ==
                      oracle::causal_effect(db, q, t, Rat(1, 3)));
            }
        }
    }
}
