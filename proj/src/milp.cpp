#include "rcds/milp.hpp"

#include <sstream>

namespace rcds {

MilpModel build_milp(const Graph& g, std::optional<VertexId> source) {
    if (!g.connected()) throw domain_error("build_milp assumes a connected graph");
    if (g.n() == 0) throw domain_error("build_milp: empty graph");
    MilpModel m;
    m.vertices = g.vertices();
    m.edges = g.edges();
    m.source = source ? *source : m.vertices.front();
    if (!g.has_vertex(m.source)) throw domain_error("build_milp: unknown source vertex " + std::to_string(m.source));
    return m;
}

std::string export_lp(const MilpModel& m) {
    std::ostringstream out;
    auto xname = [](VertexId v) { return "x_" + std::to_string(v); };
    auto yname = [](VertexId i, VertexId j) { return "y_" + std::to_string(i) + "_" + std::to_string(j); };

    out << "Minimize\n obj:";
    bool first = true;
    for (VertexId v : m.vertices) {
        out << (first ? " " : " + ") << xname(v);
        first = false;
    }
    out << "\nSubject To\n";

    // Flow conservation at every vertex except the source: out - in = -1.
    for (VertexId i : m.vertices) {
        if (i == m.source) continue;
        out << " flow_" << i << ":";
        bool lead = true;
        for (const auto& [u, v] : m.edges) {
            if (u != i && v != i) continue;
            VertexId j = (u == i) ? v : u;
            out << (lead ? " " : " + ") << yname(i, j);
            lead = false;
        }
        for (const auto& [u, v] : m.edges) {
            if (u != i && v != i) continue;
            VertexId j = (u == i) ? v : u;
            out << " - " << yname(j, i);
        }
        out << " = -1\n";
    }

    // Edge capacity: y_ij + y_ji <= (|V|-1)(x_i + x_j).
    const int cap = m.capacity_constant();
    for (const auto& [u, v] : m.edges) {
        out << " cap_" << u << "_" << v << ": " << yname(u, v) << " + " << yname(v, u) << " - " << cap << " "
            << xname(u) << " - " << cap << " " << xname(v) << " <= 0\n";
    }

    out << "Bounds\n";
    for (const auto& [u, v] : m.edges) {
        out << " " << yname(u, v) << " >= 0\n";
        out << " " << yname(v, u) << " >= 0\n";
    }

    out << "Binary\n";
    for (VertexId v : m.vertices) out << " " << xname(v) << "\n";
    out << "End\n";
    return out.str();
}

} // namespace rcds
