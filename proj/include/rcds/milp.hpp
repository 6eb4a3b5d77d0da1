#ifndef RCDS_MILP_HPP
#define RCDS_MILP_HPP

#include <optional>
#include <string>

#include "rcds/graph.hpp"

namespace rcds {

// Network-flow model of perfect protection: binary x_i per vertex, one
// nonnegative flow variable per edge direction, flow conservation of -1 at
// every non-source vertex and capacity (|V|-1)(x_i + x_j) per edge.
struct MilpModel {
    VertexSet vertices;
    EdgeSet edges;
    VertexId source = 0;

    int capacity_constant() const { return static_cast<int>(vertices.size()) - 1; }
    int binary_count() const { return static_cast<int>(vertices.size()); }
    int flow_var_count() const { return 2 * static_cast<int>(edges.size()); }
    int conservation_row_count() const { return static_cast<int>(vertices.size()) - 1; }
    int capacity_row_count() const { return static_cast<int>(edges.size()); }
};

// Source defaults to the smallest vertex id. Requires a connected graph.
MilpModel build_milp(const Graph& g, std::optional<VertexId> source = std::nullopt);

// CPLEX-style LP text with deterministic names x_i and y_i_j and the
// sections Minimize / Subject To / Bounds / Binary.
std::string export_lp(const MilpModel& m);

} // namespace rcds

#endif
