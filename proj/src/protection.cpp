#include "rcds/protection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <json.hpp>

namespace rcds {

namespace {

constexpr double kTol = 1e-9;

bool near(double a, double b) { return std::abs(a - b) <= kTol * std::max({1.0, std::abs(a), std::abs(b)}); }

void require_subset(const Graph& g, const VertexSet& d, const char* who) {
    for (VertexId v : d)
        if (!g.has_vertex(v)) throw domain_error(std::string(who) + ": unknown vertex " + std::to_string(v));
}

void require_connected(const Graph& g, const char* who) {
    if (!g.connected()) throw domain_error(std::string(who) + " assumes a connected graph");
}

} // namespace

double Attack::h(const Edge& e) const {
    auto it = line_constants.find(e);
    return it == line_constants.end() ? 1.0 : it->second;
}

bool Attack::nonzero() const {
    for (const auto& [e, x] : flow)
        if (std::abs(x) > kTol) return true;
    for (const auto& [v, x] : injection)
        if (std::abs(x) > kTol) return true;
    return false;
}

std::string attack_to_json(const Attack& a) {
    nlohmann::json j;
    auto& ph = j["phasors"] = nlohmann::json::object();
    for (const auto& [v, x] : a.phasors) ph[std::to_string(v)] = x;
    auto& fl = j["flow"] = nlohmann::json::object();
    for (const auto& [e, x] : a.flow) fl[std::to_string(e.first) + "-" + std::to_string(e.second)] = x;
    auto& in = j["injection"] = nlohmann::json::object();
    for (const auto& [v, x] : a.injection) in[std::to_string(v)] = x;
    if (!a.line_constants.empty()) {
        auto& h = j["h"] = nlohmann::json::object();
        for (const auto& [e, x] : a.line_constants)
            h[std::to_string(e.first) + "-" + std::to_string(e.second)] = x;
    }
    return j.dump();
}

Attack attack_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad attack JSON: ") + e.what());
    }
    auto parse_edge_key = [](const std::string& key) {
        auto dash = key.find('-');
        if (dash == std::string::npos) throw parse_error("attack JSON edge key \"" + key + "\" is not \"u-v\"");
        return make_edge(std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1)));
    };
    Attack a;
    const nlohmann::json ph = j.value("phasors", nlohmann::json::object());
    const nlohmann::json fl = j.value("flow", nlohmann::json::object());
    const nlohmann::json in = j.value("injection", nlohmann::json::object());
    const nlohmann::json h = j.value("h", nlohmann::json::object());
    for (const auto& [k, v] : ph.items()) a.phasors[std::stoi(k)] = v.get<double>();
    for (const auto& [k, v] : fl.items()) a.flow[parse_edge_key(k)] = v.get<double>();
    for (const auto& [k, v] : in.items()) a.injection[std::stoi(k)] = v.get<double>();
    for (const auto& [k, v] : h.items()) a.line_constants[parse_edge_key(k)] = v.get<double>();
    return a;
}

bool is_perfect_protection(const Graph& g, const VertexSet& d) {
    require_subset(g, d, "is_perfect_protection");
    require_connected(g, "is_perfect_protection");
    if (g.n() == 1) return true; // no line, no attackable measurement
    return connected_components(g, incident_edges(g, d)).size() == 1;
}

bool is_rcds(const Graph& g, const VertexSet& d) {
    require_subset(g, d, "is_rcds");
    if (g.n() == 1) return true; // degenerate case, matches is_perfect_protection
    // Condition 1: domination.
    for (VertexId v : g.vertices()) {
        if (contains(d, v)) continue;
        bool dominated = false;
        for (VertexId w : g.neighbors(v))
            if (contains(d, w)) {
                dominated = true;
                break;
            }
        if (!dominated) return false;
    }
    if (d.size() <= 1) return true;
    // Condition 2 via the auxiliary graph on D: d1 ~ d2 iff adjacent or at
    // distance two through a vertex outside D. Relaxed paths concatenate, so
    // pairwise reachability reduces to connectivity of this graph.
    const int k = static_cast<int>(d.size());
    std::vector<int> parent(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) parent[static_cast<size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(a)] = b;
    };
    auto pos = [&](VertexId v) {
        return static_cast<int>(std::lower_bound(d.begin(), d.end(), v) - d.begin());
    };
    for (int i = 0; i < k; ++i) {
        VertexId di = d[static_cast<size_t>(i)];
        for (VertexId w : g.neighbors(di)) {
            if (contains(d, w)) {
                unite(i, pos(w));
            } else {
                for (VertexId x : g.neighbors(w))
                    if (x != di && contains(d, x)) unite(i, pos(x));
            }
        }
    }
    int root = find(0);
    for (int i = 1; i < k; ++i)
        if (find(i) != root) return false;
    return true;
}

std::optional<Attack> construct_stealth_attack(const Graph& g, const VertexSet& d,
                                               const std::map<Edge, double>& h) {
    require_subset(g, d, "construct_stealth_attack");
    require_connected(g, "construct_stealth_attack");
    auto comps = connected_components(g, incident_edges(g, d));
    if (comps.size() == 1) return std::nullopt;

    // Phasors: one on the component holding the smallest vertex, zero elsewhere.
    const VertexSet& v0 = comps.front();
    Attack a;
    a.line_constants = h;
    for (VertexId v : g.vertices()) a.phasors[v] = contains(v0, v) ? 1.0 : 0.0;
    for (const auto& e : g.edges()) a.flow[e] = a.h(e) * (a.phasors[e.first] - a.phasors[e.second]);
    for (VertexId v : g.vertices()) {
        double s = 0.0;
        for (VertexId w : g.neighbors(v)) {
            Edge e = make_edge(v, w);
            double f = a.flow[e];
            s += (v == e.first) ? f : -f;
        }
        a.injection[v] = s;
    }
    return a;
}

bool verify_attack(const Graph& g, const VertexSet& d, const Attack& a) {
    require_subset(g, d, "verify_attack");
    for (const auto& e : g.edges())
        if (!a.flow.count(e)) throw domain_error("verify_attack: attack lacks flow on edge " +
                                                 std::to_string(e.first) + "-" + std::to_string(e.second));
    for (VertexId v : g.vertices()) {
        if (!a.phasors.count(v)) throw domain_error("verify_attack: attack lacks phasor at vertex " + std::to_string(v));
        if (!a.injection.count(v))
            throw domain_error("verify_attack: attack lacks injection at vertex " + std::to_string(v));
    }
    // A1: each line's flow component is proportional to the phasor difference.
    for (const auto& e : g.edges()) {
        double expect = a.h(e) * (a.phasors.at(e.first) - a.phasors.at(e.second));
        if (!near(a.flow.at(e), expect)) return false;
    }
    // A2: Kirchhoff at every bus.
    for (VertexId v : g.vertices()) {
        double s = 0.0;
        for (VertexId w : g.neighbors(v)) {
            Edge e = make_edge(v, w);
            double f = a.flow.at(e);
            s += (v == e.first) ? f : -f;
        }
        if (!near(a.injection.at(v), s)) return false;
    }
    // P1: protected buses pin their injection and all incident flows to zero.
    for (VertexId v : d) {
        if (!near(a.injection.at(v), 0.0)) return false;
        for (VertexId w : g.neighbors(v))
            if (!near(a.flow.at(make_edge(v, w)), 0.0)) return false;
    }
    return a.nonzero();
}

} // namespace rcds
