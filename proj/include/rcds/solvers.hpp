#ifndef RCDS_SOLVERS_HPP
#define RCDS_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "rcds/graph.hpp"

namespace rcds {

struct SolveStats {
    std::int64_t nodes = 0;    // branch-and-bound nodes explored
    std::int64_t subsets = 0;  // subsets enumerated (brute force)
    double seconds = 0.0;
};

struct SolveResult {
    VertexSet optimum;
    int cardinality = 0;
    std::string method;
    SolveStats stats;
};

std::string solve_result_to_json(const SolveResult& r);

// Independent oracle: enumerate subsets by increasing cardinality,
// lexicographic within a cardinality, and return the first RCDS.
// Refuses graphs beyond ~20 vertices unless max_card bounds the search;
// returns nullopt iff max_card is set and exceeded.
std::optional<SolveResult> brute_force_min_rcds(const Graph& g,
                                                std::optional<int> max_card = std::nullopt);

// Exact minimum RCDS by branch and bound (covering branches plus
// component-boundary branches once domination is complete).
SolveResult bnb_min_rcds(const Graph& g);

// Exact minimum dominating set (same search without the connectivity phase).
SolveResult min_dominating_set(const Graph& g);

// Exact minimum connected dominating set.
SolveResult min_connected_dominating_set(const Graph& g);

} // namespace rcds

#endif
