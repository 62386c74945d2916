#include "doctest.h"

#include "caudex/errors.hpp"
#include "caudex/eval.hpp"
#include "caudex/value.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using caudex::eval_boolean;
using caudex::eval_query;
using caudex::TidSet;
using caudex::Value;
using caudex::Witness;

TEST_SUITE("eval") {
    TEST_CASE("witnesses of the reach query") {
        auto db = helpers::db("rs");
        auto q = helpers::query("rs/q.cq");
        auto ws = caudex::witnesses(db, q);
        CHECK(ws == std::vector<Witness>{{1, 4, 6}, {3, 6}});
        CHECK(eval_boolean(db, q));
    }

    TEST_CASE("witnesses of the three-hop path query") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        auto ws = caudex::witnesses(db, q);
        CHECK(ws == std::vector<Witness>{{1}, {2, 3}, {4, 5, 6}});
    }

    TEST_CASE("deleting tuples flips the query exactly when all witnesses die") {
        auto db = helpers::db("rs");
        auto q = helpers::query("rs/q.cq");
        TidSet kill6{6};
        CHECK_FALSE(eval_boolean(db, q, &kill6));
        TidSet kill1{1};
        CHECK(eval_boolean(db, q, &kill1));
        TidSet kill13{1, 3};
        CHECK_FALSE(eval_boolean(db, q, &kill13));
        TidSet kill14{1, 4};
        CHECK(eval_boolean(db, q, &kill14));
    }

    TEST_CASE("open query answers") {
        auto db = helpers::db("depcourse");
        auto q = helpers::query("depcourse/q1_open.cq");
        auto ans = eval_query(db, q);
        std::set<std::vector<Value>> expect{{Value::symbol("john")},
                                            {Value::symbol("kevin")},
                                            {Value::symbol("patrick")}};
        CHECK(ans == expect);
    }

    TEST_CASE("boolean query answers are the empty binding when true") {
        auto db = helpers::db("rs");
        auto q = helpers::query("rs/q.cq");
        auto ans = eval_query(db, q);
        REQUIRE(ans.size() == 1);
        CHECK(ans.begin()->empty());

        TidSet all{1, 2, 3, 4, 5, 6};
        CHECK(eval_query(db, q, &all).empty());
    }

    TEST_CASE("NULL never joins: a null attribute kills reuse matches") {
        auto db = helpers::db("rs").with_nulls({{6, 1}});
        auto q = helpers::query("rs/q.cq");
        // Both witnesses needed S(b) = tid 6; with its value nulled the
        // S(X)..S(Y) reuse fails.
        CHECK_FALSE(eval_boolean(db, q));
    }

    TEST_CASE("constants must match non-null values exactly") {
        auto db = helpers::db("graph");
        auto q = caudex::parse("q() :- E(a,b).").single_query();
        CHECK(eval_boolean(db, q));
        auto q2 = caudex::parse("q() :- E(b,a).").single_query();
        CHECK_FALSE(eval_boolean(db, q2));

        auto nulled = db.with_nulls({{1, 1}});
        CHECK_FALSE(eval_boolean(nulled, q));
    }

    TEST_CASE("queries over unknown relations are errors") {
        auto db = helpers::db("rs");
        auto q = caudex::parse("q() :- Zebra(X).").single_query();
        CHECK_THROWS_AS(eval_boolean(db, q), caudex::Error);
    }

    TEST_CASE("denial constraint witnesses and satisfaction") {
        auto db = helpers::db("pqr");
        auto dcs = helpers::program("pqr/constraints.dc").dcs();
        REQUIRE(dcs.size() == 2);
        CHECK(caudex::dc_witnesses(db, dcs[0]) == std::vector<Witness>{{1, 3}});
        CHECK(caudex::dc_witnesses(db, dcs[1]) == std::vector<Witness>{{1, 4}});
        CHECK_FALSE(caudex::satisfies_dc(db, dcs[0]));
        TidSet kill1{1};
        CHECK(caudex::satisfies_dc(db, dcs[0], &kill1));
        CHECK(caudex::satisfies_dc(db, dcs[1], &kill1));
    }

    TEST_CASE("inclusion dependency satisfaction") {
        auto db = helpers::db("depcourse");
        auto ind = helpers::program("depcourse/psi.ind").inds().at(0);
        CHECK(caudex::satisfies_ind(db, ind));
        CHECK(oracle::ind_holds(db, ind));

        // com08 gone: john still heads a course via com01.
        TidSet kill4{4};
        CHECK(caudex::satisfies_ind(db, ind, &kill4));
        // Both of john's courses gone: the dependency breaks.
        TidSet kill48{4, 8};
        CHECK_FALSE(caudex::satisfies_ind(db, ind, &kill48));
        // Dropping john's department row restores it vacuously.
        TidSet kill148{1, 4, 8};
        CHECK(caudex::satisfies_ind(db, ind, &kill148));

        caudex::Constraints ics{{}, {ind}};
        CHECK(caudex::satisfies_all(db, ics));
        CHECK_FALSE(caudex::satisfies_all(db, ics, &kill48));
    }

    TEST_CASE("library evaluation agrees with the oracle on the fixtures") {
        for (const char* fix : {"rs", "graph", "depcourse"}) {
            auto db = helpers::db(fix);
            std::string qfile = std::string(fix) + (std::string(fix) == "graph" ? "/path.ucq" : "/q.cq");
            if (std::string(fix) == "depcourse") qfile = "depcourse/q_john.cq";
            auto q = helpers::query(qfile);
            CHECK(eval_boolean(db, q) == oracle::holds(db, q));
            auto lib = caudex::witnesses(db, q);
            CHECK(helpers::canon(lib) == helpers::canon(oracle::witnesses(db, q)));
        }
    }
}
