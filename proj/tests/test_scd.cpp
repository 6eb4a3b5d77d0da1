#include <doctest.h>

#include <set>

#include "rcds/scd.hpp"
#include "support/graph_gen.hpp"

using namespace rcds;
using namespace rcds::testsupport;

TEST_CASE("heuristic decomposition of the six-ring") {
    auto emb = planarity_embed(cycle_graph(6));
    REQUIRE(emb.has_value());
    ScDecomposition d = heuristic_sphere_cut(*emb);
    CHECK(d.width == 2); // cycles have branchwidth 2

    int leaves = 0;
    for (int e : d.leaf_edge) leaves += e >= 0 ? 1 : 0;
    CHECK(leaves == 6);

    ValidationReport rep = validate(*emb, d);
    CHECK_MESSAGE(rep.ok, (rep.failures.empty() ? std::string("ok") : rep.failures.front()));
    CHECK(rep.width == 2);
}

TEST_CASE("trees decompose with width at most two") {
    std::mt19937 rng(59);
    for (int t = 0; t < 20; ++t) {
        Graph g = random_connected_graph(rng, 4 + t % 8, 0); // spanning tree only
        if (g.m() < 3) continue;
        auto emb = planarity_embed(g);
        REQUIRE(emb.has_value());
        ScDecomposition d = heuristic_sphere_cut(*emb);
        CHECK(d.width <= 2);
        CHECK(validate(*emb, d).ok);
    }
}

TEST_CASE("heuristic output validates on random plane graphs") {
    std::mt19937 rng(61);
    for (int t = 0; t < 40; ++t) {
        Graph g = random_connected_planar_graph(rng, 5 + t % 6, 2 + t % 6);
        if (g.m() < 3) continue;
        auto emb = planarity_embed(g);
        REQUIRE(emb.has_value());
        for (int variant : {0, 1, 2}) {
            ScDecomposition d = heuristic_sphere_cut(*emb, variant);
            ValidationReport rep = validate(*emb, d);
            CHECK_MESSAGE(rep.ok, (rep.failures.empty() ? std::string("ok") : rep.failures.front()));
        }
    }
}

TEST_CASE("export/import round trip") {
    auto emb = planarity_embed(cycle_graph(6));
    ScDecomposition d = heuristic_sphere_cut(*emb);
    std::string j = export_decomposition(d, *emb);
    ScDecomposition d2 = import_decomposition(*emb, j);
    CHECK(d2.tree_adj == d.tree_adj);
    CHECK(d2.leaf_edge == d.leaf_edge);
    CHECK(d2.omega == d.omega);
    CHECK(d2.pi == d.pi);
    CHECK(d2.width == d.width);
}

TEST_CASE("hand-built decomposition of the six-ring via text import") {
    // Caterpillar splitting the ring into 1-2,2-3,3-4 and 4-5,5-6,6-1.
    auto emb = planarity_embed(cycle_graph(6));
    std::string text = R"(
# leaves 0..5, spine 6..9
leaf 0 1 2
leaf 1 2 3
leaf 2 3 4
leaf 3 4 5
leaf 4 5 6
leaf 5 6 1
edge 6 0
edge 6 1
edge 6 7
edge 7 2
edge 7 8
edge 8 3
edge 8 9
edge 9 4
edge 9 5
)";
    ScDecomposition d = import_decomposition(*emb, text);
    CHECK(d.width == 2);
    // the central spine edge 7-8 separates two 3-edge paths; its middle set
    // is the pair of path boundary vertices
    int t = d.tree_edge_index(7, 8);
    CHECK(d.omega[static_cast<size_t>(t)] == VertexSet{1, 4});
}

TEST_CASE("import rejects malformed decompositions") {
    auto emb = planarity_embed(cycle_graph(6));
    // duplicate leaf assignment
    std::string dup = R"(
leaf 0 1 2
leaf 1 1 2
leaf 2 3 4
leaf 3 4 5
leaf 4 5 6
leaf 5 6 1
edge 6 0
edge 6 1
edge 6 7
edge 7 2
edge 7 8
edge 8 3
edge 8 9
edge 9 4
edge 9 5
)";
    CHECK_THROWS_AS(import_decomposition(*emb, dup), validation_error);
    CHECK_THROWS_AS(import_decomposition(*emb, "leaf 0 9 9"), std::exception);
    CHECK_THROWS_AS(import_decomposition(*emb, ""), parse_error);
}

TEST_CASE("rooting inserts two nodes and an empty root middle set") {
    auto emb = planarity_embed(cycle_graph(6));
    ScDecomposition d = heuristic_sphere_cut(*emb);
    RootedScd r = root_decomposition(d, *emb);
    CHECK(r.edges.size() == d.tree_edges.size() + 2);
    CHECK(r.root_edge == static_cast<int>(r.edges.size()) - 1);
    CHECK(r.edges[static_cast<size_t>(r.root_edge)].omega.empty());
    // the two root children share the attach edge's middle set
    const auto& root = r.edges[static_cast<size_t>(r.root_edge)];
    auto w1 = normalize_vertex_set(r.edges[static_cast<size_t>(root.child1)].omega);
    auto w2 = normalize_vertex_set(r.edges[static_cast<size_t>(root.child2)].omega);
    CHECK(w1 == w2);
    // children listed before parents (post-order)
    for (size_t i = 0; i < r.edges.size(); ++i) {
        const auto& e = r.edges[i];
        if (e.child1 >= 0) {
            CHECK(e.child1 < static_cast<int>(i));
            CHECK(e.child2 < static_cast<int>(i));
        }
    }
}

TEST_CASE("merge context classes") {
    // the worked example: omega(e)={1,4,3,5}, omega(e1)={1,2,3,4},
    // omega(e2)={1,2,3,5} gives X1={4}, X2={5}, X3={1,3}, X4={2}
    RootedScd r;
    r.edges.resize(3);
    r.edges[0].omega = {1, 2, 3, 4};
    r.edges[1].omega = {1, 2, 3, 5};
    r.edges[2].omega = {1, 4, 3, 5};
    r.edges[2].child1 = 0;
    r.edges[2].child2 = 1;
    r.root_edge = 2;
    MergeContext ctx = merge_context(r, 2);
    CHECK(ctx.x1 == VertexSet{4});
    CHECK(ctx.x2 == VertexSet{5});
    CHECK(ctx.x3 == VertexSet{1, 3});
    CHECK(ctx.x4 == VertexSet{2});

    // root-style: identical children middle sets, empty parent
    RootedScd rr;
    rr.edges.resize(3);
    rr.edges[0].omega = {1, 2};
    rr.edges[1].omega = {1, 2};
    rr.edges[2].omega = {};
    rr.edges[2].child1 = 0;
    rr.edges[2].child2 = 1;
    rr.root_edge = 2;
    MergeContext rctx = merge_context(rr, 2);
    CHECK(rctx.x1.empty());
    CHECK(rctx.x2.empty());
    CHECK(rctx.x3.empty());
    CHECK(rctx.x4 == VertexSet{1, 2});

    CHECK_THROWS_AS(merge_context(r, 0), domain_error);
}

TEST_CASE("middle sets recomputed from leaves match stored ones") {
    std::mt19937 rng(67);
    for (int t = 0; t < 15; ++t) {
        Graph g = random_connected_planar_graph(rng, 6, 4);
        if (g.m() < 3) continue;
        auto emb = planarity_embed(g);
        ScDecomposition d = heuristic_sphere_cut(*emb);
        // no vertex may sit in exactly one of omega(e), omega(e1), omega(e2)
        RootedScd r = root_decomposition(d, *emb);
        for (size_t ei = 0; ei < r.edges.size(); ++ei) {
            if (r.edges[ei].child1 < 0) continue;
            MergeContext ctx = merge_context(r, static_cast<int>(ei));
            auto we = normalize_vertex_set(r.edges[ei].omega);
            auto w1 = normalize_vertex_set(r.edges[static_cast<size_t>(r.edges[ei].child1)].omega);
            auto w2 = normalize_vertex_set(r.edges[static_cast<size_t>(r.edges[ei].child2)].omega);
            for (VertexId v : set_union(we, set_union(w1, w2))) {
                int count = contains(we, v) + contains(w1, v) + contains(w2, v);
                CHECK(count != 1);
            }
            CHECK(set_union(ctx.x3, ctx.x4) == set_intersection(w1, w2));
            CHECK(set_intersection(ctx.x3, ctx.x4).empty());
        }
    }
}
