#include "rcds/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace rcds {

Edge make_edge(VertexId u, VertexId v) {
    if (u == v) throw domain_error("self-loop {" + std::to_string(u) + "} is not a valid edge");
    return u < v ? Edge{u, v} : Edge{v, u};
}

Graph::Graph(VertexSet vertices, EdgeSet edges) : ids_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    for (size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = static_cast<int>(i);

    for (auto& e : edges_) {
        if (e.first == e.second) throw domain_error("self-loop at vertex " + std::to_string(e.first));
        if (e.first > e.second) std::swap(e.first, e.second);
        if (!has_vertex(e.first) || !has_vertex(e.second))
            throw domain_error("edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                               "} has an endpoint outside the vertex set");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    adj_.assign(ids_.size(), {});
    for (const auto& [u, v] : edges_) {
        adj_[static_cast<size_t>(index_.at(u))].push_back(v);
        adj_[static_cast<size_t>(index_.at(v))].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    if (!has_vertex(u) || !has_vertex(v) || u == v) return false;
    const auto& nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

const std::vector<VertexId>& Graph::neighbors(VertexId v) const {
    return adj_[static_cast<size_t>(index_of(v))];
}

int Graph::index_of(VertexId v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw domain_error("unknown vertex " + std::to_string(v));
    return it->second;
}

bool Graph::connected() const {
    if (n() <= 1) return true;
    std::vector<char> seen(static_cast<size_t>(n()), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (VertexId w : adj_[static_cast<size_t>(i)]) {
            int j = index_.at(w);
            if (!seen[static_cast<size_t>(j)]) {
                seen[static_cast<size_t>(j)] = 1;
                ++reached;
                stack.push_back(j);
            }
        }
    }
    return reached == n();
}

Graph parse_edge_list(const std::string& text) {
    VertexSet vertices;
    EdgeSet edges;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        long long u, v;
        std::string trailing;
        if (!(ls >> u >> v) || (ls >> trailing)) {
            throw parse_error("line " + std::to_string(lineno) + ": expected \"u v\", got \"" + line + "\"");
        }
        if (u <= 0 || v <= 0)
            throw parse_error("line " + std::to_string(lineno) + ": vertex ids must be positive");
        if (u == v)
            throw parse_error("line " + std::to_string(lineno) + ": self-loop at vertex " + std::to_string(u));
        vertices.push_back(static_cast<VertexId>(u));
        vertices.push_back(static_cast<VertexId>(v));
        edges.push_back(make_edge(static_cast<VertexId>(u), static_cast<VertexId>(v)));
    }
    return Graph(normalize_vertex_set(std::move(vertices)), std::move(edges));
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph graph_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad graph JSON: ") + e.what());
    }
    if (!j.contains("edges") || !j["edges"].is_array()) throw parse_error("graph JSON lacks \"edges\" array");
    VertexSet vertices;
    EdgeSet edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw parse_error("edge entries must be [u,v] pairs");
        VertexId u = e[0].get<VertexId>();
        VertexId v = e[1].get<VertexId>();
        vertices.push_back(u);
        vertices.push_back(v);
        edges.push_back(make_edge(u, v));
    }
    Graph g(normalize_vertex_set(std::move(vertices)), std::move(edges));
    if (j.contains("n") && j["n"].get<int>() != g.n())
        throw parse_error("graph JSON n=" + j["n"].dump() + " disagrees with edge list (" +
                          std::to_string(g.n()) + " vertices)");
    return g;
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.n();
    auto edges = nlohmann::json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j.dump();
}

EdgeSet incident_edges(const Graph& g, const VertexSet& u) {
    for (VertexId v : u)
        if (!g.has_vertex(v)) throw domain_error("incident_edges: unknown vertex " + std::to_string(v));
    EdgeSet out;
    for (const auto& e : g.edges())
        if (contains(u, e.first) || contains(u, e.second)) out.push_back(e);
    return out;
}

std::vector<VertexSet> connected_components(const Graph& g, const EdgeSet& active_edges) {
    std::vector<int> parent(static_cast<size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) parent[static_cast<size_t>(i)] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const auto& [u, v] : active_edges) {
        if (!g.has_edge(u, v))
            throw domain_error("active edge {" + std::to_string(u) + "," + std::to_string(v) +
                               "} is not an edge of the graph");
        int a = find(g.index_of(u)), b = find(g.index_of(v));
        if (a != b) parent[static_cast<size_t>(a)] = b;
    }
    std::unordered_map<int, VertexSet> groups;
    for (int i = 0; i < g.n(); ++i) groups[find(i)].push_back(g.id_of(i));
    std::vector<VertexSet> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
    return out;
}

VertexSet normalize_vertex_set(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool contains(const VertexSet& s, VertexId v) { return std::binary_search(s.begin(), s.end(), v); }

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace rcds
