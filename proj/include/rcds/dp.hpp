#ifndef RCDS_DP_HPP
#define RCDS_DP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcds/graph.hpp"
#include "rcds/scd.hpp"
#include "rcds/solvers.hpp"

namespace rcds {

// Detailed colors: basic color 0 (dominated, not chosen) or 1 (chosen)
// annotated with the block-boundary mark in noose order, plus the
// undominated color "hat". Nine symbols total.
enum class Sym : std::uint8_t {
    ZeroOpen = 0,  // 0_[
    ZeroClose,     // 0_]
    ZeroMid,       // 0_*
    ZeroSingle,    // 0_s
    Hat,           // 0-hat: not chosen, not dominated, in no block
    OneOpen,       // 1_[
    OneClose,      // 1_]
    OneMid,        // 1_*
    OneSingle,     // 1_s
};

enum class Basic : std::uint8_t { Zero, Hat, One };

Basic basic_of(Sym s);
char bracket_of(Sym s); // '[' ']' '*' 's' or '.' for hat

using Coloring = std::vector<Sym>; // indexed by middle-set position in noose order

std::string coloring_to_string(const Coloring& c);

// Non-crossing block structure of a detailed coloring: block id per
// position (-1 for hat entries) and the block count. Throws internal_error
// on unbalanced brackets.
struct BlockDecoding {
    std::vector<int> block_of;
    int block_count = 0;
};
BlockDecoding decode_blocks(const Coloring& c);

// Inverse of decode_blocks: symbols from basics plus a block partition.
// Returns nullopt when the partition crosses in the given order.
std::optional<Coloring> encode_blocks(const std::vector<Basic>& basics, const std::vector<int>& block_of);

// Value table of one T' edge: finite entries only (absence means infinite),
// sorted by packed coloring key; minimizer pointers into the child tables.
struct TableEntry {
    Coloring coloring;
    int cost = 0;
    int from1 = -1, from2 = -1;
};
struct ValueTable {
    std::vector<TableEntry> entries;
    int find(const Coloring& c) const; // index or -1
};

// Leaf tables, literally: |omega|=1 has A(0_s)=A(1_s)=1; |omega|=2 has
// A(0_[,1_])=1, A(hat,hat)=0, A(1_[,0_])=1, A(1_[,1_])=2.
ValueTable leaf_table(Edge graph_edge, const std::vector<VertexId>& omega_in_pi_order);

// Appendix-A consistency of basic colorings, keyed by vertex id.
bool consistent_basic(const std::map<VertexId, Basic>& ce, const std::map<VertexId, Basic>& ce1,
                      const std::map<VertexId, Basic>& ce2, const MergeContext& ctx);

// One merge step: child colorings (over omega1/omega2 in pi order) to the
// parent coloring over omega_e, plus the double-count correction
// #1(X3,c1) + #1(X4,c1). Returns nullopt when incompatible. For the root
// edge omega_e is empty and compatibility additionally requires a single
// merged component.
struct MergeInput {
    std::vector<VertexId> omega1, omega2, omega_e;
    Coloring c1, c2;
};
std::optional<std::pair<Coloring, int>> merge_compatible(const MergeInput& in);

struct DpResult {
    std::vector<ValueTable> tables; // parallel to RootedScd::edges
    int root_value = 0;
    int root_from1 = -1, root_from2 = -1;
};

DpResult dp_recursion(const RootedScd& r);

VertexSet traceback(const DpResult& dp, const RootedScd& r);

// Full pipeline: embed, decompose, root, recurse, trace. Planarizes
// first when the graph is not planar (the result is then an upper bound);
// graphs with at most two edges are solved by enumeration.
SolveResult solve_planar_rcds(const Graph& g);

// {coloring string: cost} for one edge's table, for debugging dumps.
std::string table_to_json(const ValueTable& t);

} // namespace rcds

#endif
