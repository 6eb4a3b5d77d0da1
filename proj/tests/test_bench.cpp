#include <doctest.h>

#include "rcds/bench.hpp"
#include "rcds/planar.hpp"
#include "rcds/solvers.hpp"

using namespace rcds;

#ifndef RCDS_SOURCE_DIR
#define RCDS_SOURCE_DIR "."
#endif

static const std::string kData = std::string(RCDS_SOURCE_DIR) + "/data/ieee";

TEST_CASE("bundled instance checksums") {
    for (const auto& exp : table1_expectations()) {
        Graph g = load_instance(kData, exp.name);
        CHECK_MESSAGE(g.n() == exp.v, exp.name, " vertex count");
        CHECK_MESSAGE(g.m() == exp.e, exp.name, " edge count");
        CHECK(g.connected());
        CHECK(planarity_embed(g).has_value() == exp.planar);
    }
}

TEST_CASE("bench record on the smallest instance") {
    Graph g = load_instance(kData, "ieee9");
    BenchRecord rec = bench_instance("ieee9", g);
    CHECK(rec.v == 9);
    CHECK(rec.e == 9);
    CHECK(rec.planar);
    CHECK(rec.dstar_scd == 3);
    REQUIRE(rec.dstar.has_value());
    CHECK(*rec.dstar == 3);
    REQUIRE(rec.ds.has_value());
    CHECK(*rec.ds == 3);
    CHECK_MESSAGE(rec.mismatches.empty(), (rec.mismatches.empty() ? std::string("ok") : rec.mismatches.front()));
}

TEST_CASE("empty suite renders an empty report") {
    auto records = bench_suite({});
    CHECK(records.empty());
    CHECK(bench_to_json(records) == "[]");
    std::string table = render_bench_table(records);
    CHECK(table.find("name") != std::string::npos);
}

TEST_CASE("missing instance file raises a parse error") {
    CHECK_THROWS_AS(load_instance(kData, "ieee0"), parse_error);
}
