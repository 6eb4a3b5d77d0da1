#ifndef RCDS_SCD_HPP
#define RCDS_SCD_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rcds/graph.hpp"
#include "rcds/planar.hpp"

namespace rcds {

// Branch decomposition of a plane graph with the sphere-cut property:
// every tree edge's middle set lies on a noose of the embedding, giving a
// cyclic order pi per tree edge. Tree nodes are 0..N-1; leaves map
// bijectively onto graph edges.
struct ScDecomposition {
    std::vector<std::vector<int>> tree_adj;        // node -> neighbor nodes
    std::vector<int> leaf_edge;                    // node -> graph edge index, -1 internal
    std::vector<std::pair<int, int>> tree_edges;   // canonical (min,max), sorted
    std::vector<VertexSet> omega;                  // per tree edge, sorted vertex ids
    std::vector<std::vector<VertexId>> pi;         // per tree edge, canonical cyclic order
    int width = 0;

    int tree_edge_index(int a, int b) const;
};

struct ValidationReport {
    bool ok = true;
    int width = 0;
    std::vector<std::string> failures;
};

// Heuristic construction by recursive bisection: each split keeps both
// sides connected in the medial graph, so every cut is realized by a single
// closed alternating walk (a noose) in the radial graph. Width is valid but
// not guaranteed optimal. Requires a connected plane graph with >= 3 edges.
//
// `variant` selects a split-scoring strategy (0 balanced, 1 skewed, 2 peel);
// all variants produce valid decompositions, usually distinct trees.
ScDecomposition heuristic_sphere_cut(const PlaneEmbedding& embedding, int variant = 0);

// Structural + sphere-cut validation: binary tree shape, leaf bijection,
// recomputed middle sets, and per tree edge the noose check (exactly one
// closed alternating walk through the cut corners). Failures are reported,
// not thrown.
ValidationReport validate(const PlaneEmbedding& embedding, const ScDecomposition& d);

// JSON round-trip; import recomputes middle sets and validates nooses.
std::string export_decomposition(const ScDecomposition& d, const PlaneEmbedding& embedding);
ScDecomposition import_decomposition(const PlaneEmbedding& embedding, const std::string& text);

// Rooted form per the dynamic program: node z subdivides the attach edge,
// root r hangs off z. Edges are listed in post-order; the root edge {z,r}
// is last and has an empty middle set.
struct RootedScd {
    struct EdgeInfo {
        std::vector<VertexId> omega;  // in noose (pi) order
        int child1 = -1, child2 = -1; // edge indices in post-order array
        VertexId leaf_u = 0, leaf_v = 0;
        bool is_leaf = false;         // incident to a leaf node of T'
    };
    std::vector<EdgeInfo> edges;
    int root_edge = -1;
    int graph_n = 0;
};

RootedScd root_decomposition(const ScDecomposition& d, const PlaneEmbedding& embedding,
                             std::optional<std::pair<int, int>> attach_edge = std::nullopt);

// Appendix-A vertex classes for a parent edge and its two children.
struct MergeContext {
    VertexSet x1, x2, x3, x4;
};

MergeContext merge_context(const RootedScd& r, int edge_index);

} // namespace rcds

#endif
