#include "doctest.h"

#include "caudex/analysis.hpp"
#include "caudex/errors.hpp"
#include "caudex/repairs.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using caudex::AttrInterventionSet;
using caudex::AttrPos;
using caudex::minimal_hitting_sets;
using caudex::Rat;
using caudex::Repair;
using caudex::RepairSemantics;
using caudex::TupleId;
using caudex::Witness;

namespace {

std::vector<std::vector<TupleId>> deleted_sets(const std::vector<Repair>& rs) {
    std::vector<std::vector<TupleId>> out;
    for (const auto& r : rs) out.push_back(r.deleted);
    return out;
}

std::vector<std::vector<TupleId>> kept_sets(const std::vector<Repair>& rs) {
    std::vector<std::vector<TupleId>> out;
    for (const auto& r : rs) out.push_back(r.kept);
    return out;
}

} // namespace

TEST_SUITE("hitting-sets") {
    TEST_CASE("minimal hitting sets of small hypergraphs") {
        using Sets = std::vector<std::vector<TupleId>>;
        CHECK(minimal_hitting_sets({1, 2, 3}, {{1, 2}, {2, 3}}) == Sets{{2}, {1, 3}});
        CHECK(minimal_hitting_sets({1, 2, 3}, {}) == Sets{{}});
        CHECK(minimal_hitting_sets({}, {}) == Sets{{}});
        // An unhittable (empty) edge admits no hitting set at all.
        CHECK(minimal_hitting_sets({1, 2}, {Witness{}}).empty());
        // Every singleton edge forces its element.
        CHECK(minimal_hitting_sets({1, 2}, {{1}, {2}}) == Sets{{1, 2}});
        // Results come size-first, then lexicographically.
        CHECK(minimal_hitting_sets({1, 2, 3, 4}, {{1, 2}, {3, 4}}) ==
              Sets{{1, 3}, {1, 4}, {2, 3}, {2, 4}});
    }

    TEST_CASE("edges outside the universe are rejected") {
        CHECK_THROWS_AS(minimal_hitting_sets({1, 2}, {{3}}), caudex::Error);
    }
}

TEST_SUITE("repairs") {
    TEST_CASE("two-constraint instance: subset and cardinality repairs") {
        auto db = helpers::db("pqr");
        auto dcs = helpers::program("pqr/constraints.dc").dcs();

        auto s = caudex::s_repairs(db, dcs);
        REQUIRE(s.size() == 2);
        CHECK(deleted_sets(s) == std::vector<std::vector<TupleId>>{{1}, {3, 4}});
        CHECK(kept_sets(s) == std::vector<std::vector<TupleId>>{{2, 3, 4}, {1, 2}});

        auto c = caudex::c_repairs(db, dcs);
        REQUIRE(c.size() == 1);
        CHECK(c[0].kept == std::vector<TupleId>{2, 3, 4});
        CHECK(c[0].deleted == std::vector<TupleId>{1});

        CHECK(caudex::repairs(db, dcs, RepairSemantics::Subset) == s);
        CHECK(caudex::repairs(db, dcs, RepairSemantics::Cardinality) == c);

        CHECK(caudex::inc_degree(db, dcs) == Rat(1, 4));
    }

    TEST_CASE("five-tuple instance with three constraints") {
        auto db = helpers::db("five");
        auto dcs = helpers::program("five/constraints.dc").dcs();

        auto s = caudex::s_repairs(db, dcs);
        CHECK(deleted_sets(s) ==
              std::vector<std::vector<TupleId>>{{1, 2}, {2, 3}, {3, 5}, {1, 4, 5}});
        CHECK(kept_sets(s) ==
              std::vector<std::vector<TupleId>>{{3, 4, 5}, {1, 4, 5}, {1, 2, 4}, {2, 3}});

        auto c = caudex::c_repairs(db, dcs);
        CHECK(deleted_sets(c) == std::vector<std::vector<TupleId>>{{1, 2}, {2, 3}, {3, 5}});

        CHECK(caudex::inc_degree(db, dcs) == Rat(2, 5));
    }

    TEST_CASE("consistent instances repair to themselves") {
        auto db = helpers::db("rs");
        std::vector<caudex::DenialConstraint> none;
        auto s = caudex::s_repairs(db, none);
        REQUIRE(s.size() == 1);
        CHECK(s[0].deleted.empty());
        CHECK(s[0].kept == db.all_tids());
        CHECK(caudex::c_repairs(db, none) == s);
        CHECK(caudex::inc_degree(db, none) == Rat(0));

        // A constraint nothing violates behaves the same way.
        auto dcs = caudex::parse(":- R(a,a).").dcs();
        CHECK(caudex::inc_degree(db, dcs) == Rat(0));
        CHECK(caudex::attr_repairs(db, dcs) == std::vector<AttrInterventionSet>{{}});
        auto s2 = caudex::s_repairs(db, dcs);
        REQUIRE(s2.size() == 1);
        CHECK(s2[0].deleted.empty());
    }

    TEST_CASE("repairs agree with the exhaustive oracle on the fixtures") {
        for (const char* fix : {"pqr", "five"}) {
            auto db = helpers::db(fix);
            auto dcs = helpers::program(std::string(fix) + "/constraints.dc").dcs();
            auto want = oracle::repairs(db, dcs);
            CHECK(helpers::canon(deleted_sets(caudex::s_repairs(db, dcs))) ==
                  helpers::canon(want.s_deleted));
            CHECK(helpers::canon(deleted_sets(caudex::c_repairs(db, dcs))) ==
                  helpers::canon(want.c_deleted));
            CHECK(caudex::inc_degree(db, dcs) == oracle::inc_degree(db, dcs));
        }
    }
}

TEST_SUITE("attr-repairs") {
    TEST_CASE("single-join instance has the two known interventions") {
        auto db = helpers::db("sr");
        auto dcs = caudex::negate_to_dcs(helpers::query("sr/q.cq"));
        auto got = caudex::attr_repairs(db, dcs);
        std::vector<AttrInterventionSet> want{
            {AttrPos{2, 1}},
            {AttrPos{3, 1}, AttrPos{4, 1}, AttrPos{5, 1}},
        };
        CHECK(got == want);

        auto card = caudex::attr_repairs(db, dcs, RepairSemantics::Cardinality);
        CHECK(card == std::vector<AttrInterventionSet>{{AttrPos{2, 1}}});
    }

    TEST_CASE("self-join query yields all seven minimal interventions") {
        auto db = helpers::db("rs");
        auto dcs = caudex::negate_to_dcs(helpers::query("rs/q.cq"));
        auto got = caudex::attr_repairs(db, dcs);
        std::vector<AttrInterventionSet> want{
            {AttrPos{6, 1}},
            {AttrPos{1, 1}, AttrPos{3, 1}},
            {AttrPos{1, 1}, AttrPos{3, 2}},
            {AttrPos{1, 2}, AttrPos{3, 1}},
            {AttrPos{1, 2}, AttrPos{3, 2}},
            {AttrPos{3, 1}, AttrPos{4, 1}},
            {AttrPos{3, 2}, AttrPos{4, 1}},
        };
        CHECK(got == want);

        auto card = caudex::attr_repairs(db, dcs, RepairSemantics::Cardinality);
        CHECK(card == std::vector<AttrInterventionSet>{{AttrPos{6, 1}}});
    }

    TEST_CASE("every intervention restores consistency minimally") {
        for (const char* fix : {"sr", "rs"}) {
            auto db = helpers::db(fix);
            auto dcs = caudex::negate_to_dcs(helpers::query(std::string(fix) + "/q.cq"));
            auto got = caudex::attr_repairs(db, dcs);
            auto want = oracle::attr_interventions(db, dcs);
            CHECK(got == want);
            for (const auto& iv : got) {
                CHECK(oracle::consistent(db.with_nulls(iv), dcs));
                // Dropping any one position breaks consistency again.
                for (std::size_t i = 0; i < iv.size(); ++i) {
                    AttrInterventionSet smaller = iv;
                    smaller.erase(smaller.begin() + i);
                    CHECK_FALSE(oracle::consistent(db.with_nulls(smaller), dcs));
                }
            }
        }
    }

    TEST_CASE("attr interventions on an inconsistent pqr instance") {
        auto db = helpers::db("pqr");
        auto dcs = helpers::program("pqr/constraints.dc").dcs();
        auto got = caudex::attr_repairs(db, dcs);
        CHECK(got == oracle::attr_interventions(db, dcs));
        CHECK_FALSE(got.empty());
    }
}
