#ifndef RCDS_GRAPH_HPP
#define RCDS_GRAPH_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rcds/errors.hpp"

namespace rcds {

// Vertex ids are arbitrary positive integers preserved from the input
// (IEEE files use bus numbers). Sets are kept sorted so every iteration
// order is deterministic.
using VertexId = int;
using VertexSet = std::vector<VertexId>;              // sorted, unique
using Edge = std::pair<VertexId, VertexId>;           // canonical: first < second
using EdgeSet = std::vector<Edge>;                    // sorted, unique

Edge make_edge(VertexId u, VertexId v);

// Simple undirected graph. Immutable after construction; all derived
// structures index vertices densely (0..n-1) but the public surface
// speaks in original ids.
class Graph {
  public:
    Graph() = default;
    Graph(VertexSet vertices, EdgeSet edges);

    int n() const { return static_cast<int>(ids_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }
    const VertexSet& vertices() const { return ids_; }
    const EdgeSet& edges() const { return edges_; }

    bool has_vertex(VertexId v) const { return index_.count(v) != 0; }
    bool has_edge(VertexId u, VertexId v) const;

    // Neighbors in increasing id order.
    const std::vector<VertexId>& neighbors(VertexId v) const;
    int degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }

    int index_of(VertexId v) const;
    VertexId id_of(int idx) const { return ids_[static_cast<size_t>(idx)]; }

    bool connected() const;

  private:
    VertexSet ids_;
    std::unordered_map<VertexId, int> index_;
    EdgeSet edges_;
    std::vector<std::vector<VertexId>> adj_;
};

// Edge-list text: one "u v" pair per line, '#' starts a comment.
// Self-loops are rejected; duplicate edges collapse.
Graph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const Graph& g);

Graph graph_from_json(const std::string& json_text);
std::string graph_to_json(const Graph& g);

// I_U(E): edges with at least one endpoint in U.
EdgeSet incident_edges(const Graph& g, const VertexSet& u);

// Partition of V(G) into connected components of (V, activeEdges),
// isolated vertices as singletons. Components ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g, const EdgeSet& active_edges);

// Set helpers (all inputs/outputs sorted).
VertexSet normalize_vertex_set(std::vector<VertexId> v);
bool contains(const VertexSet& s, VertexId v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);

} // namespace rcds

#endif
