#include <doctest.h>

#include "rcds/planar.hpp"
#include "rcds/solvers.hpp"
#include "support/graph_gen.hpp"

using namespace rcds;
using namespace rcds::testsupport;

namespace {

void check_embedding_valid(const PlaneEmbedding& e) {
    CHECK(e.euler_ok());
    // every directed edge on exactly one face
    size_t total = 0;
    for (const auto& f : e.face_cycles) total += f.size();
    CHECK(total == 2 * static_cast<size_t>(e.graph.m()));
}

} // namespace

TEST_CASE("embedding of cycles, trees and cliques") {
    auto ring = planarity_embed(cycle_graph(6));
    REQUIRE(ring.has_value());
    CHECK(ring->face_count() == 2);
    check_embedding_valid(*ring);

    auto edge = planarity_embed(path_graph(2));
    REQUIRE(edge.has_value());
    CHECK(edge->face_count() == 1);

    auto k4 = planarity_embed(complete_graph(4));
    REQUIRE(k4.has_value());
    CHECK(k4->face_count() == 4);
    check_embedding_valid(*k4);

    CHECK_FALSE(planarity_embed(complete_graph(5)).has_value());
    CHECK_FALSE(planarity_embed(complete_graph(6)).has_value());

    // K3,3
    Graph k33({1, 2, 3, 4, 5, 6},
              {{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}});
    CHECK_FALSE(planarity_embed(k33).has_value());

    Graph disconnected({1, 2, 3, 4}, {{1, 2}, {3, 4}});
    CHECK_THROWS_AS(planarity_embed(disconnected), domain_error);
}

TEST_CASE("embedding handles cut vertices and bridges") {
    // two triangles joined by a bridge
    Graph g({1, 2, 3, 4, 5, 6}, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}});
    auto e = planarity_embed(g);
    REQUIRE(e.has_value());
    check_embedding_valid(*e);
    CHECK(e->face_count() == 3);

    auto star = planarity_embed(star_graph(4));
    REQUIRE(star.has_value());
    CHECK(star->face_count() == 1);
}

TEST_CASE("random planar graphs embed, dense-enough graphs reject") {
    std::mt19937 rng(47);
    int planar_count = 0;
    for (int t = 0; t < 80; ++t) {
        Graph g = random_connected_graph(rng, 6 + t % 6, t % 8);
        auto e = planarity_embed(g);
        if (e) {
            ++planar_count;
            check_embedding_valid(*e);
        }
    }
    CHECK(planar_count > 10);
}

TEST_CASE("radial graph counts") {
    auto ring = planarity_embed(cycle_graph(6));
    Graph r = radial_graph(*ring);
    CHECK(r.n() == 8);   // 6 vertices + 2 faces
    CHECK(r.m() == 12);  // every vertex sees both faces

    auto edge = planarity_embed(path_graph(2));
    Graph re = radial_graph(*edge);
    CHECK(re.n() == 3);
    CHECK(re.m() == 2);

    auto star = planarity_embed(star_graph(3));
    Graph rs = radial_graph(*star);
    CHECK(rs.n() == 5);
    CHECK(rs.m() == 4);
}

TEST_CASE("planarize keeps planar graphs intact") {
    Graph ring = cycle_graph(6);
    auto p = planarize(ring);
    CHECK(p.removed_edges.empty());
    CHECK(p.planar_graph.edges() == ring.edges());

    auto p2 = planarize(p.planar_graph);
    CHECK(p2.removed_edges.empty()); // idempotent on planar graphs
}

TEST_CASE("planarize K5 removes exactly one edge") {
    auto p = planarize(complete_graph(5));
    CHECK(p.removed_edges.size() == 1);
    CHECK(p.planar_graph.connected());
    CHECK(p.planar_graph.m() == 9);
    check_embedding_valid(p.embedding);
}

TEST_CASE("planarization is an upper bound for the relaxed domination number") {
    std::mt19937 rng(53);
    for (int t = 0; t < 25; ++t) {
        Graph g = random_connected_graph(rng, 7, 8);
        if (planarity_embed(g)) continue;
        auto p = planarize(g);
        auto full = brute_force_min_rcds(g);
        auto reduced = brute_force_min_rcds(p.planar_graph);
        CHECK(reduced->cardinality >= full->cardinality);
    }
}

TEST_CASE("embedding json round trip") {
    Graph ring = cycle_graph(6);
    auto e = planarity_embed(ring);
    auto e2 = embedding_from_json(ring, embedding_to_json(*e));
    CHECK(e2.rotation == e->rotation);
    CHECK(e2.face_count() == e->face_count());

    CHECK_THROWS_AS(embedding_from_json(ring, "{}"), parse_error);
    // a rotation that is not a permutation of the adjacency
    CHECK_THROWS_AS(embedding_from_rotation(ring, {{1, {2, 2}}}), validation_error);
}
