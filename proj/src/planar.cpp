#include "rcds/planar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

namespace rcds {

namespace {

// ---------------------------------------------------------------------------
// Demoucron-Malgrange-Pertuiset embedding of one biconnected block.
// Faces are kept as oriented vertex cycles; each step routes a path of an
// unembedded fragment through a face containing all its attachments.
// ---------------------------------------------------------------------------
class DmpEmbedder {
  public:
    explicit DmpEmbedder(const std::vector<std::vector<int>>& adj) : adj_(adj), n_(static_cast<int>(adj.size())) {}

    // Rotation per vertex (cyclic neighbor order) or nullopt when nonplanar.
    std::optional<std::vector<std::vector<int>>> run() {
        int m = 0;
        for (const auto& nb : adj_) m += static_cast<int>(nb.size());
        m /= 2;
        if (n_ >= 3 && m > 3 * n_ - 6) return std::nullopt;

        in_emb_.assign(static_cast<size_t>(n_), 0);
        auto cycle = find_cycle();
        for (int v : cycle) in_emb_[static_cast<size_t>(v)] = 1;
        for (size_t i = 0; i < cycle.size(); ++i)
            mark_embedded(cycle[i], cycle[(i + 1) % cycle.size()]);
        faces_.push_back(cycle);
        std::vector<int> rev(cycle.rbegin(), cycle.rend());
        faces_.push_back(rev);

        while (embedded_edges_ < m) {
            if (!embed_one_path()) return std::nullopt;
        }
        return extract_rotation();
    }

  private:
    struct Fragment {
        std::vector<int> attachments;     // embedded vertices, sorted
        std::vector<int> interior;        // unembedded vertices, sorted (empty for a chord)
        std::pair<int, int> chord{-1, -1};
    };

    std::vector<int> find_cycle() const {
        // DFS until the first back edge closes a cycle.
        std::vector<int> parent(static_cast<size_t>(n_), -2);
        std::vector<int> order;
        std::function<std::vector<int>(int)> dfs = [&](int s) -> std::vector<int> {
            parent[static_cast<size_t>(s)] = -1;
            std::vector<std::pair<int, size_t>> stack{{s, 0}};
            while (!stack.empty()) {
                auto& [v, next] = stack.back();
                if (next >= adj_[static_cast<size_t>(v)].size()) {
                    stack.pop_back();
                    continue;
                }
                int w = adj_[static_cast<size_t>(v)][next++];
                if (parent[static_cast<size_t>(v)] == w) continue;
                if (parent[static_cast<size_t>(w)] == -2) {
                    parent[static_cast<size_t>(w)] = v;
                    stack.emplace_back(w, 0);
                } else {
                    // back edge v->w: cycle w .. v
                    std::vector<int> cyc{v};
                    int x = v;
                    while (x != w) {
                        x = parent[static_cast<size_t>(x)];
                        cyc.push_back(x);
                    }
                    return cyc;
                }
            }
            return {};
        };
        auto c = dfs(0);
        if (c.size() < 3) throw internal_error("biconnected block without a cycle");
        return c;
    }

    void mark_embedded(int u, int v) {
        embedded_.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
        ++embedded_edges_;
    }
    bool is_embedded(int u, int v) const {
        return embedded_.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)) != 0;
    }

    std::vector<Fragment> fragments() const {
        std::vector<Fragment> out;
        // Chords: unembedded edges between embedded vertices.
        for (int v = 0; v < n_; ++v) {
            if (!in_emb_[static_cast<size_t>(v)]) continue;
            for (int w : adj_[static_cast<size_t>(v)]) {
                if (w <= v || !in_emb_[static_cast<size_t>(w)] || is_embedded(v, w)) continue;
                Fragment f;
                f.attachments = {v, w};
                f.chord = {v, w};
                out.push_back(std::move(f));
            }
        }
        // Components of unembedded vertices plus their attachment edges.
        std::vector<char> seen(static_cast<size_t>(n_), 0);
        for (int s = 0; s < n_; ++s) {
            if (in_emb_[static_cast<size_t>(s)] || seen[static_cast<size_t>(s)]) continue;
            Fragment f;
            std::set<int> att;
            std::vector<int> stack{s};
            seen[static_cast<size_t>(s)] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                f.interior.push_back(v);
                for (int w : adj_[static_cast<size_t>(v)]) {
                    if (in_emb_[static_cast<size_t>(w)]) {
                        att.insert(w);
                    } else if (!seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        stack.push_back(w);
                    }
                }
            }
            f.attachments.assign(att.begin(), att.end());
            std::sort(f.interior.begin(), f.interior.end());
            out.push_back(std::move(f));
        }
        return out;
    }

    bool face_admits(const std::vector<int>& face, const std::vector<int>& attachments) const {
        for (int a : attachments)
            if (std::find(face.begin(), face.end(), a) == face.end()) return false;
        return true;
    }

    bool embed_one_path() {
        auto frags = fragments();
        if (frags.empty()) throw internal_error("edges left but no fragment found");
        int best = -1, best_count = -1;
        std::vector<int> best_faces;
        for (size_t i = 0; i < frags.size(); ++i) {
            std::vector<int> fit;
            for (size_t f = 0; f < faces_.size(); ++f)
                if (face_admits(faces_[f], frags[i].attachments)) fit.push_back(static_cast<int>(f));
            if (fit.empty()) return false; // some fragment cannot be drawn: nonplanar
            if (best < 0 || static_cast<int>(fit.size()) < best_count) {
                best = static_cast<int>(i);
                best_count = static_cast<int>(fit.size());
                best_faces = fit;
            }
        }
        const Fragment& f = frags[static_cast<size_t>(best)];
        std::vector<int> path = fragment_path(f);
        split_face(best_faces.front(), path);
        return true;
    }

    // A path between two distinct attachments whose interior lies in the
    // fragment. Biconnectivity guarantees two attachments exist.
    std::vector<int> fragment_path(const Fragment& f) const {
        if (f.chord.first >= 0) return {f.chord.first, f.chord.second};
        if (f.attachments.size() < 2) throw internal_error("fragment with fewer than two attachments");
        int a = f.attachments[0];
        std::vector<int> prev(static_cast<size_t>(n_), -1);
        std::vector<int> queue;
        // Seed with fragment vertices adjacent to `a`.
        for (int w : adj_[static_cast<size_t>(a)])
            if (!in_emb_[static_cast<size_t>(w)] && contains_int(f.interior, w)) {
                prev[static_cast<size_t>(w)] = a;
                queue.push_back(w);
            }
        for (size_t h = 0; h < queue.size(); ++h) {
            int v = queue[h];
            for (int w : adj_[static_cast<size_t>(v)]) {
                if (in_emb_[static_cast<size_t>(w)]) {
                    if (w != a) {
                        std::vector<int> path{w};
                        int x = v;
                        while (x != a) {
                            path.push_back(x);
                            x = prev[static_cast<size_t>(x)];
                        }
                        path.push_back(a);
                        std::reverse(path.begin(), path.end());
                        return path; // a ... w
                    }
                } else if (prev[static_cast<size_t>(w)] == -1 && contains_int(f.interior, w)) {
                    prev[static_cast<size_t>(w)] = v;
                    queue.push_back(w);
                }
            }
        }
        throw internal_error("fragment path search failed");
    }

    static bool contains_int(const std::vector<int>& sorted, int x) {
        return std::binary_search(sorted.begin(), sorted.end(), x);
    }

    void split_face(int face_idx, const std::vector<int>& path) {
        std::vector<int> face = faces_[static_cast<size_t>(face_idx)];
        int a = path.front(), b = path.back();
        auto ia = std::find(face.begin(), face.end(), a) - face.begin();
        auto ib = std::find(face.begin(), face.end(), b) - face.begin();
        size_t k = face.size();
        std::vector<int> arc1, arc2; // a..b and b..a along the face orientation
        for (size_t i = static_cast<size_t>(ia);; i = (i + 1) % k) {
            arc1.push_back(face[i]);
            if (i == static_cast<size_t>(ib)) break;
        }
        for (size_t i = static_cast<size_t>(ib);; i = (i + 1) % k) {
            arc2.push_back(face[i]);
            if (i == static_cast<size_t>(ia)) break;
        }
        // face1 = arc a->b plus path interior reversed, face2 = arc b->a plus interior.
        std::vector<int> f1 = arc1, f2 = arc2;
        for (size_t i = path.size() - 2; i >= 1; --i) f1.push_back(path[i]);
        for (size_t i = 1; i + 1 < path.size(); ++i) f2.push_back(path[i]);
        faces_[static_cast<size_t>(face_idx)] = std::move(f1);
        faces_.push_back(std::move(f2));

        for (size_t i = 0; i + 1 < path.size(); ++i) mark_embedded(path[i], path[i + 1]);
        for (size_t i = 1; i + 1 < path.size(); ++i) in_emb_[static_cast<size_t>(path[i])] = 1;
    }

    std::optional<std::vector<std::vector<int>>> extract_rotation() const {
        // Corner (p, v, q) of an oriented face defines succ_v(p) = q; the
        // orbit of succ_v enumerates the rotation at v.
        std::vector<std::map<int, int>> succ(static_cast<size_t>(n_));
        for (const auto& face : faces_) {
            size_t k = face.size();
            for (size_t i = 0; i < k; ++i) {
                int p = face[i], v = face[(i + 1) % k], q = face[(i + 2) % k];
                if (!succ[static_cast<size_t>(v)].emplace(p, q).second)
                    throw internal_error("face corners do not define a permutation");
            }
        }
        std::vector<std::vector<int>> rot(static_cast<size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            const auto& nb = adj_[static_cast<size_t>(v)];
            if (nb.empty()) continue;
            int start = nb.front();
            int cur = start;
            do {
                rot[static_cast<size_t>(v)].push_back(cur);
                auto it = succ[static_cast<size_t>(v)].find(cur);
                if (it == succ[static_cast<size_t>(v)].end())
                    throw internal_error("rotation extraction: missing corner");
                cur = it->second;
            } while (cur != start && rot[static_cast<size_t>(v)].size() <= nb.size());
            if (rot[static_cast<size_t>(v)].size() != nb.size())
                throw internal_error("rotation extraction: orbit does not cover the neighborhood");
        }
        return rot;
    }

    const std::vector<std::vector<int>>& adj_;
    int n_;
    std::vector<char> in_emb_;
    std::set<std::pair<int, int>> embedded_;
    int embedded_edges_ = 0;
    std::vector<std::vector<int>> faces_; // oriented vertex cycles
};

// Biconnected components as edge groups (standard lowpoint algorithm).
std::vector<std::vector<std::pair<int, int>>> biconnected_components(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<int> disc(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<std::pair<int, int>> estack;
    std::vector<std::vector<std::pair<int, int>>> comps;
    int timer = 0;

    struct Frame {
        int v, parent;
        size_t i;
    };
    for (int s = 0; s < n; ++s) {
        if (disc[static_cast<size_t>(s)] != -1) continue;
        std::vector<Frame> stack{{s, -1, 0}};
        disc[static_cast<size_t>(s)] = low[static_cast<size_t>(s)] = timer++;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            if (fr.i < adj[static_cast<size_t>(fr.v)].size()) {
                int w = adj[static_cast<size_t>(fr.v)][fr.i++];
                if (w == fr.parent) continue;
                if (disc[static_cast<size_t>(w)] == -1) {
                    estack.emplace_back(fr.v, w);
                    disc[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = timer++;
                    stack.push_back({w, fr.v, 0});
                } else if (disc[static_cast<size_t>(w)] < disc[static_cast<size_t>(fr.v)]) {
                    estack.emplace_back(fr.v, w);
                    low[static_cast<size_t>(fr.v)] = std::min(low[static_cast<size_t>(fr.v)], disc[static_cast<size_t>(w)]);
                }
            } else {
                int v = fr.v, parent = fr.parent;
                stack.pop_back();
                if (parent >= 0) {
                    low[static_cast<size_t>(parent)] = std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(v)]);
                    if (low[static_cast<size_t>(v)] >= disc[static_cast<size_t>(parent)]) {
                        std::vector<std::pair<int, int>> comp;
                        for (;;) {
                            auto e = estack.back();
                            estack.pop_back();
                            comp.push_back(e);
                            if (e == std::make_pair(parent, v)) break;
                        }
                        comps.push_back(std::move(comp));
                    }
                }
            }
        }
    }
    return comps;
}

std::vector<FaceCycle> trace_faces(const Graph& g, const std::map<VertexId, std::vector<VertexId>>& rotation) {
    // next directed edge after (u,v): (v, w) with w following u in the
    // rotation at v.
    std::map<std::pair<VertexId, VertexId>, std::pair<VertexId, VertexId>> next;
    for (const auto& [v, rot] : rotation) {
        size_t deg = rot.size();
        for (size_t i = 0; i < deg; ++i) {
            VertexId u = rot[i];
            VertexId w = rot[(i + 1) % deg];
            next[{u, v}] = {v, w};
        }
    }
    std::vector<FaceCycle> out;
    std::set<std::pair<VertexId, VertexId>> used;
    for (VertexId v : g.vertices()) {
        for (VertexId w : g.neighbors(v)) {
            std::pair<VertexId, VertexId> start{v, w};
            if (used.count(start)) continue;
            FaceCycle face;
            auto d = start;
            do {
                face.push_back(d);
                used.insert(d);
                auto it = next.find(d);
                if (it == next.end()) throw validation_error("rotation system is not closed under traversal");
                d = it->second;
            } while (d != start);
            out.push_back(std::move(face));
        }
    }
    return out;
}

} // namespace

PlaneEmbedding embedding_from_rotation(const Graph& g, std::map<VertexId, std::vector<VertexId>> rotation) {
    for (VertexId v : g.vertices()) {
        auto it = rotation.find(v);
        if (it == rotation.end()) throw validation_error("rotation missing vertex " + std::to_string(v));
        auto sorted = it->second;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != g.neighbors(v))
            throw validation_error("rotation at vertex " + std::to_string(v) +
                                   " is not a permutation of its neighborhood");
    }
    if (rotation.size() != static_cast<size_t>(g.n())) throw validation_error("rotation lists unknown vertices");
    PlaneEmbedding e;
    e.graph = g;
    e.rotation = std::move(rotation);
    e.face_cycles = trace_faces(g, e.rotation);
    if (!e.euler_ok())
        throw validation_error("rotation system is not planar: Euler count gives " +
                               std::to_string(e.face_count()) + " faces");
    return e;
}

std::optional<PlaneEmbedding> planarity_embed(const Graph& g) {
    if (g.n() == 0) throw domain_error("planarity_embed: empty graph");
    if (!g.connected()) throw domain_error("planarity_embed assumes a connected graph");

    // Split into biconnected blocks, embed each, then concatenate rotations
    // at cut vertices (each block stays contiguous in the merged rotation).
    std::vector<std::vector<int>> adj(static_cast<size_t>(g.n()));
    for (const auto& [u, v] : g.edges()) {
        adj[static_cast<size_t>(g.index_of(u))].push_back(g.index_of(v));
        adj[static_cast<size_t>(g.index_of(v))].push_back(g.index_of(u));
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    std::map<VertexId, std::vector<VertexId>> rotation;
    for (VertexId v : g.vertices()) rotation[v] = {};

    if (g.m() == 0) {
        // single vertex
        PlaneEmbedding e;
        e.graph = g;
        e.rotation = rotation;
        return e;
    }

    for (const auto& comp : biconnected_components(adj)) {
        if (comp.size() == 1) {
            auto [u, v] = comp.front();
            rotation[g.id_of(u)].push_back(g.id_of(v));
            rotation[g.id_of(v)].push_back(g.id_of(u));
            continue;
        }
        // Local dense indices for the block.
        std::vector<int> verts;
        for (auto [u, v] : comp) {
            verts.push_back(u);
            verts.push_back(v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        std::map<int, int> local;
        for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> ladj(verts.size());
        for (auto [u, v] : comp) {
            ladj[static_cast<size_t>(local[u])].push_back(local[v]);
            ladj[static_cast<size_t>(local[v])].push_back(local[u]);
        }
        for (auto& nb : ladj) std::sort(nb.begin(), nb.end());
        DmpEmbedder emb(ladj);
        auto rot = emb.run();
        if (!rot) return std::nullopt;
        for (size_t i = 0; i < verts.size(); ++i) {
            VertexId vid = g.id_of(verts[i]);
            for (int w : (*rot)[i]) rotation[vid].push_back(g.id_of(verts[static_cast<size_t>(w)]));
        }
    }

    PlaneEmbedding e;
    e.graph = g;
    e.rotation = std::move(rotation);
    e.face_cycles = trace_faces(g, e.rotation);
    if (!e.euler_ok()) throw internal_error("embedding failed Euler check after block merge");
    return e;
}

const std::vector<FaceCycle>& faces(const PlaneEmbedding& e) { return e.face_cycles; }

Graph radial_graph(const PlaneEmbedding& e) {
    VertexId base = e.graph.vertices().empty() ? 0 : e.graph.vertices().back();
    VertexSet vertices = e.graph.vertices();
    EdgeSet edges;
    for (size_t f = 0; f < e.face_cycles.size(); ++f) {
        VertexId fid = base + 1 + static_cast<VertexId>(f);
        vertices.push_back(fid);
        std::set<VertexId> seen;
        for (const auto& [u, v] : e.face_cycles[f]) seen.insert(u);
        for (VertexId v : seen) edges.push_back(make_edge(v, fid));
    }
    return Graph(normalize_vertex_set(std::move(vertices)), std::move(edges));
}

PlanarizationResult planarize(const Graph& g) {
    if (!g.connected()) throw domain_error("planarize assumes a connected graph");

    // Spanning tree in sorted edge order keeps the result connected.
    std::vector<int> parent(static_cast<size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) parent[static_cast<size_t>(i)] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    EdgeSet tree, rest;
    for (const auto& e : g.edges()) {
        int a = find(g.index_of(e.first)), b = find(g.index_of(e.second));
        if (a != b) {
            parent[static_cast<size_t>(a)] = b;
            tree.push_back(e);
        } else {
            rest.push_back(e);
        }
    }

    EdgeSet kept = tree, removed;
    std::optional<PlaneEmbedding> emb = planarity_embed(Graph(g.vertices(), kept));
    if (!emb) throw internal_error("spanning tree must embed");
    for (const auto& e : rest) {
        EdgeSet trial = kept;
        trial.push_back(e);
        auto attempt = planarity_embed(Graph(g.vertices(), trial));
        if (attempt) {
            kept = std::move(trial);
            emb = std::move(attempt);
        } else {
            removed.push_back(e);
        }
    }
    std::sort(kept.begin(), kept.end());
    std::sort(removed.begin(), removed.end());
    PlanarizationResult out;
    out.planar_graph = Graph(g.vertices(), kept);
    out.removed_edges = std::move(removed);
    out.embedding = std::move(*emb);
    return out;
}

std::string embedding_to_json(const PlaneEmbedding& e) {
    nlohmann::json rot = nlohmann::json::object();
    for (const auto& [v, nb] : e.rotation) rot[std::to_string(v)] = nb;
    nlohmann::json j;
    j["rotation"] = std::move(rot);
    return j.dump();
}

PlaneEmbedding embedding_from_json(const Graph& g, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& ex) {
        throw parse_error(std::string("bad embedding JSON: ") + ex.what());
    }
    if (!j.contains("rotation")) throw parse_error("embedding JSON lacks \"rotation\"");
    std::map<VertexId, std::vector<VertexId>> rotation;
    for (const auto& [k, v] : j["rotation"].items()) rotation[std::stoi(k)] = v.get<std::vector<VertexId>>();
    return embedding_from_rotation(g, std::move(rotation));
}

} // namespace rcds
