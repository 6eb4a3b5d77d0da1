#ifndef RCDS_PLANAR_HPP
#define RCDS_PLANAR_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcds/graph.hpp"

namespace rcds {

// One face as the cyclic sequence of directed edges on its boundary walk.
using FaceCycle = std::vector<std::pair<VertexId, VertexId>>;

// Combinatorial plane embedding: a rotation system whose face traversal
// satisfies Euler's formula. Immutable after construction.
struct PlaneEmbedding {
    Graph graph;
    std::map<VertexId, std::vector<VertexId>> rotation; // cyclic neighbor order per vertex
    std::vector<FaceCycle> face_cycles;                 // derived, deterministic order

    int face_count() const { return static_cast<int>(face_cycles.size()); }
    bool euler_ok() const {
        return graph.n() - graph.m() + face_count() == 2;
    }
};

// Embedding of a connected planar graph, or nullopt when not planar.
std::optional<PlaneEmbedding> planarity_embed(const Graph& g);

// Face cycles by next-edge-in-rotation traversal.
const std::vector<FaceCycle>& faces(const PlaneEmbedding& e);

// Bipartite vertex-face incidence graph. Face k gets id max_vertex_id + 1 + k.
Graph radial_graph(const PlaneEmbedding& e);

struct PlanarizationResult {
    Graph planar_graph;
    EdgeSet removed_edges;
    PlaneEmbedding embedding;
};

// Greedy planarization: spanning tree first, then remaining edges in sorted
// order, skipping any edge whose addition breaks planarity.
PlanarizationResult planarize(const Graph& g);

// {"rotation":{v:[neighbors in cyclic order]}}
std::string embedding_to_json(const PlaneEmbedding& e);
PlaneEmbedding embedding_from_json(const Graph& g, const std::string& json_text);

// Rebuild faces for a given rotation system; throws validation_error if the
// rotation is not a permutation of the adjacency or Euler's formula fails.
PlaneEmbedding embedding_from_rotation(const Graph& g, std::map<VertexId, std::vector<VertexId>> rotation);

} // namespace rcds

#endif
