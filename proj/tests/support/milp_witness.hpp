#ifndef RCDS_TESTS_MILP_WITNESS_HPP
#define RCDS_TESTS_MILP_WITNESS_HPP

#include <map>
#include <queue>

#include "rcds/graph.hpp"
#include "rcds/milp.hpp"

namespace rcds::testsupport {

struct MilpAssignment {
    std::map<VertexId, int> x;
    std::map<std::pair<VertexId, VertexId>, double> y; // directed
};

// Feasible flows for a protection set: BFS tree of (V, I_D(E)) rooted at the
// source ships one unit to every other vertex (flow on a tree dart equals
// the subtree size below it).
inline MilpAssignment build_witness(const Graph& g, const VertexSet& d, VertexId source) {
    MilpAssignment a;
    for (VertexId v : g.vertices()) a.x[v] = contains(d, v) ? 1 : 0;
    for (const auto& [u, v] : g.edges()) {
        a.y[{u, v}] = 0;
        a.y[{v, u}] = 0;
    }
    EdgeSet active = incident_edges(g, d);
    std::map<VertexId, std::vector<VertexId>> adj;
    for (const auto& [u, v] : active) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::map<VertexId, VertexId> parent;
    parent[source] = source;
    std::queue<VertexId> q;
    q.push(source);
    std::vector<VertexId> order;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        order.push_back(v);
        for (VertexId w : adj[v])
            if (!parent.count(w)) {
                parent[w] = v;
                q.push(w);
            }
    }
    std::map<VertexId, int> subtree;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        subtree[*it] += 1;
        if (*it != source) subtree[parent[*it]] += subtree[*it];
    }
    for (VertexId v : order) {
        if (v == source) continue;
        a.y[{parent[v], v}] = subtree[v];
    }
    return a;
}

// Checks every constraint of the model against an assignment and that the
// objective equals the protection set size.
inline bool check_witness(const MilpModel& m, const MilpAssignment& a, int expected_objective,
                          std::string* why = nullptr) {
    auto fail = [&why](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    int obj = 0;
    for (const auto& [v, xv] : a.x) {
        if (xv != 0 && xv != 1) return fail("x not binary");
        obj += xv;
    }
    if (obj != expected_objective) return fail("objective mismatch");
    std::map<VertexId, double> net;
    for (const auto& [uv, f] : a.y) {
        if (f < 0) return fail("negative flow");
        net[uv.first] += f;
        net[uv.second] -= f;
    }
    for (VertexId v : m.vertices) {
        if (v == m.source) continue;
        if (net[v] != -1.0) return fail("conservation violated at " + std::to_string(v));
    }
    const double cap = m.capacity_constant();
    for (const auto& [u, v] : m.edges) {
        double lhs = a.y.at({u, v}) + a.y.at({v, u});
        if (lhs > cap * (a.x.at(u) + a.x.at(v)) + 1e-9) return fail("capacity violated on edge");
    }
    return true;
}

} // namespace rcds::testsupport

#endif
