#include <doctest.h>

#include "rcds/protection.hpp"
#include "rcds/solvers.hpp"
#include "support/graph_gen.hpp"

using namespace rcds;
using namespace rcds::testsupport;

TEST_CASE("brute force on small shapes") {
    auto ring = brute_force_min_rcds(cycle_graph(6));
    REQUIRE(ring.has_value());
    CHECK(ring->cardinality == 3);
    CHECK(ring->optimum == VertexSet{1, 2, 4}); // first in cardinality-then-lex order

    auto edge = brute_force_min_rcds(path_graph(2));
    CHECK(edge->cardinality == 1);
    CHECK(edge->optimum == VertexSet{1});

    auto star = brute_force_min_rcds(star_graph(5));
    CHECK(star->cardinality == 1);
    CHECK(star->optimum == VertexSet{1});

    CHECK_FALSE(brute_force_min_rcds(cycle_graph(6), 2).has_value());
    std::mt19937 rng(1);
    CHECK_THROWS_AS(brute_force_min_rcds(random_connected_graph(rng, 21, 3)), domain_error);
}

TEST_CASE("bnb equals brute force on small graphs") {
    std::mt19937 rng(23);
    for (int t = 0; t < 120; ++t) {
        Graph g = random_connected_graph(rng, 4 + t % 6, t % 5);
        auto bf = brute_force_min_rcds(g);
        auto bb = bnb_min_rcds(g);
        CHECK(bb.cardinality == bf->cardinality);
        CHECK(is_rcds(g, bb.optimum));
        CHECK(is_perfect_protection(g, bb.optimum));
        CHECK(static_cast<int>(bb.optimum.size()) == bb.cardinality);
    }
}

TEST_CASE("bnb determinism") {
    std::mt19937 rng(29);
    Graph g = random_connected_graph(rng, 12, 8);
    auto a = bnb_min_rcds(g);
    auto b = bnb_min_rcds(g);
    CHECK(a.optimum == b.optimum);
}

TEST_CASE("dominating set baselines") {
    Graph ring = cycle_graph(6);
    CHECK(min_dominating_set(ring).cardinality == 2);
    CHECK(min_dominating_set(star_graph(5)).cardinality == 1);
    CHECK(min_connected_dominating_set(ring).cardinality == 4);
    CHECK(min_connected_dominating_set(path_graph(2)).cardinality == 1);
    CHECK(min_connected_dominating_set(path_graph(5)).cardinality == 3);
}

TEST_CASE("sandwich property on random graphs") {
    std::mt19937 rng(31);
    for (int t = 0; t < 60; ++t) {
        Graph g = random_connected_graph(rng, 5 + t % 7, t % 6);
        int ds = min_dominating_set(g).cardinality;
        int rcds = bnb_min_rcds(g).cardinality;
        int cds = min_connected_dominating_set(g).cardinality;
        CHECK(ds <= rcds);
        CHECK(rcds <= cds);
    }
}

TEST_CASE("cds oracle by brute force") {
    std::mt19937 rng(37);
    for (int t = 0; t < 40; ++t) {
        Graph g = random_connected_graph(rng, 4 + t % 4, t % 4);
        // brute-force CDS
        int n = g.n();
        int best = n;
        for (unsigned int m = 1; m < (1u << n); ++m) {
            VertexSet d;
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) d.push_back(g.vertices()[static_cast<size_t>(i)]);
            bool dominating = true;
            for (VertexId v : g.vertices()) {
                if (contains(d, v)) continue;
                bool dom = false;
                for (VertexId w : g.neighbors(v)) dom |= contains(d, w);
                if (!dom) dominating = false;
            }
            if (!dominating) continue;
            EdgeSet induced;
            for (const auto& e : g.edges())
                if (contains(d, e.first) && contains(d, e.second)) induced.push_back(e);
            Graph sub(d, induced);
            if (sub.connected()) best = std::min<int>(best, static_cast<int>(d.size()));
        }
        CHECK(min_connected_dominating_set(g).cardinality == best);
    }
}

TEST_CASE("solve result json") {
    auto r = bnb_min_rcds(cycle_graph(6));
    auto j = solve_result_to_json(r);
    CHECK(j.find("\"cardinality\":3") != std::string::npos);
    CHECK(j.find("\"method\":\"bnb\"") != std::string::npos);
}
