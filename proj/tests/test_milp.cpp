#include <doctest.h>

#include "rcds/milp.hpp"
#include "rcds/solvers.hpp"
#include "support/graph_gen.hpp"
#include "support/lp_reader.hpp"
#include "support/milp_witness.hpp"

using namespace rcds;
using namespace rcds::testsupport;

TEST_CASE("model shape for a single edge") {
    Graph g = path_graph(2);
    MilpModel m = build_milp(g, 1);
    CHECK(m.binary_count() == 2);
    CHECK(m.flow_var_count() == 2);
    CHECK(m.conservation_row_count() == 1);
    CHECK(m.capacity_row_count() == 1);
    CHECK(m.capacity_constant() == 1);
}

TEST_CASE("model shape for the six-ring") {
    MilpModel m = build_milp(cycle_graph(6));
    CHECK(m.source == 1); // defaults to smallest id
    CHECK(m.binary_count() == 6);
    CHECK(m.flow_var_count() == 12);
    CHECK(m.conservation_row_count() == 5);
    CHECK(m.capacity_row_count() == 6);
    CHECK(m.capacity_constant() == 5);

    Graph disconnected({1, 2, 3, 4}, {{1, 2}, {3, 4}});
    CHECK_THROWS_AS(build_milp(disconnected), domain_error);
}

TEST_CASE("lp export text") {
    std::string lp = export_lp(build_milp(path_graph(2), 1));
    CHECK(lp.find("x_1 + x_2") != std::string::npos);
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find("Subject To") != std::string::npos);
    CHECK(lp.find("Bounds") != std::string::npos);
    CHECK(lp.find("Binary") != std::string::npos);

    LpSummary s = read_lp(export_lp(build_milp(cycle_graph(6))));
    CHECK(s.binaries == 6);
    CHECK(s.has_minimize);
    CHECK(s.has_end);
}

TEST_CASE("lp round trip preserves row and column counts") {
    std::mt19937 rng(41);
    for (int t = 0; t < 15; ++t) {
        Graph g = random_connected_graph(rng, 5 + t % 5, t % 5);
        MilpModel m = build_milp(g);
        LpSummary s = read_lp(export_lp(m));
        CHECK(s.constraint_rows == m.conservation_row_count() + m.capacity_row_count());
        CHECK(static_cast<int>(s.columns.size()) == m.binary_count() + m.flow_var_count());
        CHECK(s.binaries == m.binary_count());
    }
}

TEST_CASE("optimal sets admit feasible flow witnesses") {
    Graph ring = cycle_graph(6);
    MilpModel m = build_milp(ring);
    auto witness = build_witness(ring, {1, 2, 4}, m.source);
    std::string why;
    CHECK_MESSAGE(check_witness(m, witness, 3, &why), why);

    std::mt19937 rng(43);
    for (int t = 0; t < 25; ++t) {
        Graph g = random_connected_graph(rng, 5 + t % 6, t % 5);
        auto r = bnb_min_rcds(g);
        MilpModel model = build_milp(g);
        auto w = build_witness(g, r.optimum, model.source);
        CHECK_MESSAGE(check_witness(model, w, r.cardinality, &why), why);
    }
}

TEST_CASE("witness checker rejects infeasible assignments") {
    Graph ring = cycle_graph(6);
    MilpModel m = build_milp(ring);
    auto w = build_witness(ring, {1, 4}, m.source); // not perfect: BFS tree cannot reach everyone
    CHECK_FALSE(check_witness(m, w, 2));
}
