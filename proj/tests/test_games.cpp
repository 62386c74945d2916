#include "doctest.h"

#include <cmath>

#include "caudex/errors.hpp"
#include "caudex/games.hpp"
#include "caudex/lineage.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using caudex::banzhaf;
using caudex::Rat;
using caudex::shapley;
using caudex::shapley_sampled;
using caudex::TupleId;

TEST_SUITE("games") {
    TEST_CASE("Shapley values of the reach query") {
        auto db = helpers::db("rs");
        auto q = helpers::query("rs/q.cq");
        CHECK(shapley(db, q, 1) == Rat(1, 12));
        CHECK(shapley(db, q, 2) == Rat(0));
        CHECK(shapley(db, q, 3) == Rat(1, 4));
        CHECK(shapley(db, q, 4) == Rat(1, 12));
        CHECK(shapley(db, q, 5) == Rat(0));
        CHECK(shapley(db, q, 6) == Rat(7, 12));

        // Efficiency: the values sum to the grand-coalition value 1.
        Rat sum(0);
        for (TupleId t : db.all_tids()) sum += shapley(db, q, t);
        CHECK(sum == Rat(1));
    }

    TEST_CASE("Banzhaf values of the reach query") {
        auto db = helpers::db("rs");
        auto q = helpers::query("rs/q.cq");
        CHECK(banzhaf(db, q, 1) == Rat(1, 8));
        CHECK(banzhaf(db, q, 2) == Rat(0));
        CHECK(banzhaf(db, q, 3) == Rat(3, 8));
        CHECK(banzhaf(db, q, 4) == Rat(1, 8));
        CHECK(banzhaf(db, q, 5) == Rat(0));
        CHECK(banzhaf(db, q, 6) == Rat(5, 8));
    }

    TEST_CASE("Shapley values of the path query") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        CHECK(shapley(db, q, 1) == Rat(7, 12));
        CHECK(shapley(db, q, 2) == Rat(2, 15));
        CHECK(shapley(db, q, 3) == Rat(2, 15));
        CHECK(shapley(db, q, 4) == Rat(1, 20));
        CHECK(shapley(db, q, 5) == Rat(1, 20));
        CHECK(shapley(db, q, 6) == Rat(1, 20));
    }

    TEST_CASE("Banzhaf equals the uniform causal effect at one half") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        for (TupleId t : db.all_tids())
            CHECK(banzhaf(db, q, t) == caudex::causal_effect(db, q, t, Rat(1, 2)));
    }

    TEST_CASE("support-only restriction changes nothing") {
        auto db = helpers::db("rs");
        auto q = helpers::query("rs/q.cq");
        for (TupleId t : db.all_tids()) {
            CHECK(shapley(db, q, t, true) == shapley(db, q, t, false));
            CHECK(banzhaf(db, q, t, true) == banzhaf(db, q, t, false));
        }
    }

    TEST_CASE("exact scores agree with the definitional oracle") {
        struct Case {
            const char* fix;
            const char* qfile;
        };
        for (auto [fix, qfile] :
             {Case{"rs", "rs/q.cq"}, Case{"graph", "graph/path.ucq"}, Case{"rs2", "rs2/q.cq"}}) {
            auto db = helpers::db(fix);
            auto q = helpers::query(qfile);
            for (TupleId t : db.all_tids()) {
                CHECK(shapley(db, q, t) == oracle::shapley(db, q, t));
                CHECK(banzhaf(db, q, t) == oracle::banzhaf(db, q, t));
            }
        }
    }

    TEST_CASE("the exact-player cap points at the sampled estimator") {
        caudex::DatabaseInstance big;
        caudex::Relation r("R", 1);
        for (int i = 1; i <= 23; ++i)
            r.add(caudex::Tuple{i, {caudex::Value::symbol("v" + std::to_string(i))}});
        big.add_relation(std::move(r));
        auto q = caudex::parse("q() :- R(X).").single_query();
        CHECK_THROWS_WITH_AS(shapley(big, q, 1), doctest::Contains("sampled"), caudex::Error);
        // Restricting to support does not help here: every tuple is a
        // witness on its own.
        CHECK_THROWS_AS(shapley(big, q, 1, true), caudex::Error);
    }

    TEST_CASE("unknown tuples are rejected") {
        auto db = helpers::db("rs");
        auto q = helpers::query("rs/q.cq");
        CHECK_THROWS_AS(shapley(db, q, 99), caudex::Error);
        CHECK_THROWS_AS(banzhaf(db, q, 99), caudex::Error);
        CHECK_THROWS_AS(shapley_sampled(db, q, 99, 0.05, 0.05, 1), caudex::Error);
    }
}

TEST_SUITE("sampled-shapley") {
    TEST_CASE("sample count follows the additive-error bound") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        auto est = shapley_sampled(db, q, 1, 0.05, 0.05, 7);
        // ceil(ln(2/0.05) / (2 * 0.05^2)) = ceil(737.77...) = 738.
        CHECK(est.samples == 738);
        CHECK(est.seed == 7);
        CHECK(est.estimate >= 0.0);
        CHECK(est.estimate <= 1.0);
    }

    TEST_CASE("estimates are deterministic per seed") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        auto a = shapley_sampled(db, q, 1, 0.1, 0.1, 42);
        auto b = shapley_sampled(db, q, 1, 0.1, 0.1, 42);
        CHECK(a.estimate == b.estimate);
        CHECK(a.samples == b.samples);
    }

    TEST_CASE("a dummy player estimates exactly zero") {
        auto db = helpers::db("rs");
        auto q = helpers::query("rs/q.cq");
        // Tuple 2 joins nothing; every marginal contribution is 0.
        auto est = shapley_sampled(db, q, 2, 0.1, 0.1, 3);
        CHECK(est.estimate == 0.0);
    }

    TEST_CASE("a tight-tolerance run lands near the exact value") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        double exact = caudex::to_double(shapley(db, q, 1));
        auto est = shapley_sampled(db, q, 1, 0.05, 0.05, 1);
        CHECK(std::fabs(est.estimate - exact) <= 0.05);
    }

    TEST_CASE("invalid tolerances are rejected") {
        auto db = helpers::db("graph");
        auto q = helpers::query("graph/path.ucq");
        CHECK_THROWS_AS(shapley_sampled(db, q, 1, 0.0, 0.05, 1), caudex::Error);
        CHECK_THROWS_AS(shapley_sampled(db, q, 1, 0.05, 1.5, 1), caudex::Error);
    }
}
