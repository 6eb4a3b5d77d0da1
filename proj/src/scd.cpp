#include "rcds/scd.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace rcds {

namespace {

// ---------------------------------------------------------------------------
// Dart/corner index over a plane embedding.
//
// Edge k has darts 2k (low id -> high id) and 2k+1. Corner(d) is the angle
// at tail(d) between d and the next dart in the rotation; it equals one
// edge of the radial graph, and its two sides are edge(d) and
// edge(rot_next(d)) -- which is exactly one edge of the medial graph.
// ---------------------------------------------------------------------------
struct EmbeddingIndex {
    const PlaneEmbedding* emb = nullptr;
    int m = 0;
    std::vector<int> dart_tail, dart_head; // dense vertex indices
    std::vector<int> rot_next;             // dart -> next dart out of same tail
    std::vector<int> corner_face;          // corner (=dart) -> face index
    std::vector<int> face_pos;             // corner -> position along its face walk
    std::vector<std::pair<int, int>> medial_pairs; // corner -> (edge(d), edge(rot_next(d)))

    int edge_of(int dart) const { return dart / 2; }
    int twin(int dart) const { return dart ^ 1; }

    explicit EmbeddingIndex(const PlaneEmbedding& e) : emb(&e) {
        const Graph& g = e.graph;
        m = g.m();
        dart_tail.assign(static_cast<size_t>(2 * m), -1);
        dart_head.assign(static_cast<size_t>(2 * m), -1);
        std::map<std::pair<int, int>, int> dart_id; // (tail idx, head idx) -> dart
        for (int k = 0; k < m; ++k) {
            auto [u, v] = g.edges()[static_cast<size_t>(k)];
            int ui = g.index_of(u), vi = g.index_of(v);
            dart_tail[static_cast<size_t>(2 * k)] = ui;
            dart_head[static_cast<size_t>(2 * k)] = vi;
            dart_tail[static_cast<size_t>(2 * k + 1)] = vi;
            dart_head[static_cast<size_t>(2 * k + 1)] = ui;
            dart_id[{ui, vi}] = 2 * k;
            dart_id[{vi, ui}] = 2 * k + 1;
        }
        rot_next.assign(static_cast<size_t>(2 * m), -1);
        for (const auto& [vid, rot] : e.rotation) {
            int vi = g.index_of(vid);
            size_t deg = rot.size();
            for (size_t i = 0; i < deg; ++i) {
                int d = dart_id.at({vi, g.index_of(rot[i])});
                int dn = dart_id.at({vi, g.index_of(rot[(i + 1) % deg])});
                rot_next[static_cast<size_t>(d)] = dn;
            }
        }
        // Face of each dart (and its position on the walk) from the stored
        // face cycles.
        std::vector<int> face_of(static_cast<size_t>(2 * m), -1);
        std::vector<int> pos_of(static_cast<size_t>(2 * m), -1);
        for (size_t f = 0; f < e.face_cycles.size(); ++f) {
            const auto& cyc = e.face_cycles[f];
            for (size_t i = 0; i < cyc.size(); ++i) {
                int d = dart_id.at({g.index_of(cyc[i].first), g.index_of(cyc[i].second)});
                face_of[static_cast<size_t>(d)] = static_cast<int>(f);
                pos_of[static_cast<size_t>(d)] = static_cast<int>(i);
            }
        }
        corner_face.assign(static_cast<size_t>(2 * m), -1);
        face_pos.assign(static_cast<size_t>(2 * m), -1);
        medial_pairs.assign(static_cast<size_t>(2 * m), {-1, -1});
        for (int d = 0; d < 2 * m; ++d) {
            // corner (tail(d); d, rot_next(d)) lies on the face that turns
            // through it, i.e. the face of twin(d), right after that dart.
            corner_face[static_cast<size_t>(d)] = face_of[static_cast<size_t>(twin(d))];
            face_pos[static_cast<size_t>(d)] = pos_of[static_cast<size_t>(twin(d))];
            medial_pairs[static_cast<size_t>(d)] = {edge_of(d), edge_of(rot_next[static_cast<size_t>(d)])};
        }
    }
};


// Cut structure of an edge bipartition. The noose crosses each middle-set
// vertex exactly once; through a face it may run several disjoint arcs
// (bridges force this), so the corners of a face are paired by a
// non-crossing matching chosen so that everything closes into one curve.
struct CutInfo {
    bool ok = false;
    std::string why;
    VertexSet omega;                 // sorted ids
    std::vector<VertexId> pi;        // noose order
};

namespace cutdetail {

// Non-crossing perfect matchings of corner indices arranged on a circle,
// in a fixed enumeration order. Empty when count is odd or too large.
inline void nc_matchings(const std::vector<int>& pts, std::vector<std::pair<int, int>>& cur,
                         std::vector<std::vector<std::pair<int, int>>>& out, size_t cap) {
    if (out.size() >= cap) return;
    if (pts.empty()) {
        out.push_back(cur);
        return;
    }
    for (size_t j = 1; j < pts.size(); j += 2) {
        cur.emplace_back(pts[0], pts[j]);
        std::vector<int> inner(pts.begin() + 1, pts.begin() + static_cast<long>(j));
        std::vector<int> outer(pts.begin() + static_cast<long>(j) + 1, pts.end());
        if (inner.empty()) {
            std::vector<int> rest = outer;
            nc_matchings(rest, cur, out, cap);
        } else {
            // recurse over both sides of the chord
            std::vector<std::vector<std::pair<int, int>>> sub;
            std::vector<std::pair<int, int>> tmp;
            nc_matchings(inner, tmp, sub, cap);
            for (const auto& m : sub) {
                size_t mark = cur.size();
                cur.insert(cur.end(), m.begin(), m.end());
                nc_matchings(outer, cur, out, cap);
                cur.resize(mark);
                if (out.size() >= cap) break;
            }
        }
        cur.pop_back();
        if (out.size() >= cap) return;
    }
}

} // namespace cutdetail

CutInfo trace_cut(const EmbeddingIndex& idx, const std::vector<char>& side) {
    const Graph& g = idx.emb->graph;
    CutInfo out;
    std::vector<std::vector<int>> at_vertex(static_cast<size_t>(g.n()));
    std::vector<std::vector<std::pair<int, int>>> at_face(idx.emb->face_cycles.size()); // (walk pos, corner)
    std::vector<int> cut_corners;
    for (int d = 0; d < 2 * idx.m; ++d) {
        auto [a, b] = idx.medial_pairs[static_cast<size_t>(d)];
        if (side[static_cast<size_t>(a)] == side[static_cast<size_t>(b)]) continue;
        cut_corners.push_back(d);
        at_vertex[static_cast<size_t>(idx.dart_tail[static_cast<size_t>(d)])].push_back(d);
        int f = idx.corner_face[static_cast<size_t>(d)];
        at_face[static_cast<size_t>(f)].emplace_back(idx.face_pos[static_cast<size_t>(d)], d);
    }
    if (cut_corners.empty()) {
        out.why = "empty cut";
        return out;
    }
    for (size_t v = 0; v < at_vertex.size(); ++v)
        if (!at_vertex[v].empty() && at_vertex[v].size() != 2) {
            out.why = "vertex " + std::to_string(g.id_of(static_cast<int>(v))) + " crossed " +
                      std::to_string(at_vertex[v].size()) + " times";
            return out;
        }

    // Per face: candidate non-crossing arc pairings in boundary-walk order.
    std::vector<std::vector<std::vector<std::pair<int, int>>>> face_options;
    std::vector<size_t> option_faces;
    for (size_t f = 0; f < at_face.size(); ++f) {
        if (at_face[f].empty()) continue;
        if (at_face[f].size() % 2) {
            out.why = "face crossed an odd number of times";
            return out;
        }
        std::sort(at_face[f].begin(), at_face[f].end());
        std::vector<int> pts;
        for (const auto& [pos, d] : at_face[f]) pts.push_back(d);
        std::vector<std::vector<std::pair<int, int>>> opts;
        std::vector<std::pair<int, int>> tmp;
        cutdetail::nc_matchings(pts, tmp, opts, 64);
        if (opts.empty()) {
            out.why = "face with too many crossings";
            return out;
        }
        face_options.push_back(std::move(opts));
        option_faces.push_back(f);
    }

    // Assemble: vertex pairings are forced; search over per-face matchings
    // for one that closes into a single curve through every cut corner.
    std::vector<int> vertex_partner(static_cast<size_t>(2 * idx.m), -1);
    for (const auto& pair : at_vertex)
        if (pair.size() == 2) {
            vertex_partner[static_cast<size_t>(pair[0])] = pair[1];
            vertex_partner[static_cast<size_t>(pair[1])] = pair[0];
        }
    std::vector<int> face_partner(static_cast<size_t>(2 * idx.m), -1);
    long budget = 20000;
    std::vector<size_t> choice(face_options.size(), 0);

    auto try_assembly = [&]() -> bool {
        for (int c : cut_corners) face_partner[static_cast<size_t>(c)] = -1;
        for (size_t i = 0; i < face_options.size(); ++i)
            for (const auto& [a, b] : face_options[i][choice[i]]) {
                face_partner[static_cast<size_t>(a)] = b;
                face_partner[static_cast<size_t>(b)] = a;
            }
        int start = cut_corners.front();
        int cur = start;
        size_t consumed = 0;
        std::vector<VertexId> pi;
        do {
            int v = idx.dart_tail[static_cast<size_t>(cur)];
            pi.push_back(g.id_of(v));
            int cv = vertex_partner[static_cast<size_t>(cur)];
            if (cv < 0) return false;
            int cf = face_partner[static_cast<size_t>(cv)];
            if (cf < 0) return false;
            consumed += 2;
            cur = cf;
        } while (cur != start && consumed <= cut_corners.size());
        if (cur != start || consumed != cut_corners.size()) return false;
        out.pi = std::move(pi);
        return true;
    };

    // Depth-first product over the face matchings, first success wins.
    std::function<bool(size_t)> search = [&](size_t lvl) -> bool {
        if (budget-- < 0) return false;
        if (lvl == face_options.size()) return try_assembly();
        for (size_t c = 0; c < face_options[lvl].size(); ++c) {
            choice[lvl] = c;
            if (search(lvl + 1)) return true;
        }
        return false;
    };
    if (!search(0)) {
        out.why = budget < 0 ? "noose search budget exhausted" : "cut corners form more than one closed walk";
        return out;
    }

    out.omega = normalize_vertex_set(out.pi);
    if (out.omega.size() != out.pi.size()) {
        out.why = "noose revisits a vertex";
        return out;
    }
    out.ok = true;
    return out;
}

std::vector<VertexId> canonical_cycle(std::vector<VertexId> seq) {
    if (seq.size() <= 2) {
        std::sort(seq.begin(), seq.end());
        return seq;
    }
    std::vector<VertexId> best;
    for (int dir = 0; dir < 2; ++dir) {
        for (size_t s = 0; s < seq.size(); ++s) {
            std::vector<VertexId> cand;
            cand.reserve(seq.size());
            for (size_t i = 0; i < seq.size(); ++i) cand.push_back(seq[(s + i) % seq.size()]);
            if (best.empty() || cand < best) best = cand;
        }
        std::reverse(seq.begin(), seq.end());
    }
    return best;
}

// Middle set straight from the leaf partition: vertices touching both sides.
VertexSet omega_from_sides(const Graph& g, const std::vector<char>& side) {
    std::vector<char> touch0(static_cast<size_t>(g.n()), 0), touch1(static_cast<size_t>(g.n()), 0);
    for (int k = 0; k < g.m(); ++k) {
        auto [u, v] = g.edges()[static_cast<size_t>(k)];
        auto& touch = side[static_cast<size_t>(k)] ? touch1 : touch0;
        touch[static_cast<size_t>(g.index_of(u))] = 1;
        touch[static_cast<size_t>(g.index_of(v))] = 1;
    }
    VertexSet out;
    for (int i = 0; i < g.n(); ++i)
        if (touch0[static_cast<size_t>(i)] && touch1[static_cast<size_t>(i)]) out.push_back(g.id_of(i));
    return out;
}

// ---------------------------------------------------------------------------
// Recursive bisection builder.
// ---------------------------------------------------------------------------
class ScdBuilder {
  public:
    ScdBuilder(const PlaneEmbedding& emb, int variant) : idx_(emb), m_(emb.graph.m()), variant_(variant) {}

    ScDecomposition build() {
        std::vector<int> all(static_cast<size_t>(m_));
        std::iota(all.begin(), all.end(), 0);
        auto [s1, s2] = find_split(all);
        int a = build_node(s1);
        int b = build_node(s2);
        link(a, b);
        return finish();
    }

  private:
    int new_node(int leaf) {
        tree_adj_.emplace_back();
        leaf_edge_.push_back(leaf);
        return static_cast<int>(tree_adj_.size()) - 1;
    }
    void link(int a, int b) {
        tree_adj_[static_cast<size_t>(a)].push_back(b);
        tree_adj_[static_cast<size_t>(b)].push_back(a);
    }

    int build_node(const std::vector<int>& s) {
        if (s.size() == 1) return new_node(s.front());
        auto [s1, s2] = find_split(s);
        int me = new_node(-1);
        int a = build_node(s1);
        int b = build_node(s2);
        link(me, a);
        link(me, b);
        return me;
    }

    // Valid iff both new tree cuts (each part against everything else)
    // are realizable as single nooses.
    bool split_valid(const std::vector<char>& in_s, const std::vector<char>& part1) {
        std::vector<char> s1(static_cast<size_t>(m_), 0), s2(static_cast<size_t>(m_), 0);
        bool any1 = false, any2 = false;
        for (int e = 0; e < m_; ++e) {
            bool in = in_s[static_cast<size_t>(e)];
            bool p1 = in && part1[static_cast<size_t>(e)];
            bool p2 = in && !part1[static_cast<size_t>(e)];
            s1[static_cast<size_t>(e)] = p1;
            s2[static_cast<size_t>(e)] = p2;
            any1 |= p1;
            any2 |= p2;
        }
        if (!any1 || !any2) return false;
        return trace_cut(idx_, s1).ok && trace_cut(idx_, s2).ok;
    }

    int cut_width(const std::vector<char>& part) {
        return static_cast<int>(omega_from_sides(idx_.emb->graph, part).size());
    }

    // Medial BFS order over the edges of s from a seed edge.
    std::vector<int> bfs_order(const std::vector<int>& s, int seed) {
        std::vector<char> in_s(static_cast<size_t>(m_), 0);
        for (int e : s) in_s[static_cast<size_t>(e)] = 1;
        std::vector<std::vector<int>> madj(static_cast<size_t>(m_));
        for (const auto& [a, b] : idx_.medial_pairs) {
            if (a == b || !in_s[static_cast<size_t>(a)] || !in_s[static_cast<size_t>(b)]) continue;
            madj[static_cast<size_t>(a)].push_back(b);
            madj[static_cast<size_t>(b)].push_back(a);
        }
        for (auto& nb : madj) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        }
        std::vector<int> order;
        std::vector<char> seen(static_cast<size_t>(m_), 0);
        order.push_back(seed);
        seen[static_cast<size_t>(seed)] = 1;
        for (size_t h = 0; h < order.size(); ++h)
            for (int w : madj[static_cast<size_t>(order[h])])
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    order.push_back(w);
                }
        // Clusters can be medially disconnected around bridges; append the
        // unreached part in id order so the prefix family still covers s.
        for (int e : s)
            if (!seen[static_cast<size_t>(e)]) {
                seen[static_cast<size_t>(e)] = 1;
                order.push_back(e);
            }
        return order;
    }

    // Growth order that adds, at each step, the frontier edge minimizing the
    // middle set of (grown part vs everything else). Width per prefix is a
    // byproduct of the same counters.
    std::vector<int> greedy_order(const std::vector<int>& s, int seed) {
        const Graph& g = idx_.emb->graph;
        std::vector<char> in_s(static_cast<size_t>(m_), 0);
        for (int e : s) in_s[static_cast<size_t>(e)] = 1;
        std::vector<std::vector<int>> madj(static_cast<size_t>(m_));
        for (const auto& [a, b] : idx_.medial_pairs)
            if (a != b && in_s[static_cast<size_t>(a)] && in_s[static_cast<size_t>(b)]) {
                madj[static_cast<size_t>(a)].push_back(b);
                madj[static_cast<size_t>(b)].push_back(a);
            }
        std::vector<int> d1(static_cast<size_t>(g.n()), 0);
        auto width_delta = [&](int e) {
            int delta = 0;
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            for (int w : {g.index_of(u), g.index_of(v)}) {
                int before = d1[static_cast<size_t>(w)];
                bool in_before = before >= 1 && before < g.degree(g.id_of(w));
                bool in_after = before + 1 < g.degree(g.id_of(w));
                delta += static_cast<int>(in_after) - static_cast<int>(in_before);
            }
            return delta;
        };
        std::vector<char> taken(static_cast<size_t>(m_), 0), in_frontier(static_cast<size_t>(m_), 0);
        std::vector<int> frontier, order;
        auto take = [&](int e) {
            taken[static_cast<size_t>(e)] = 1;
            order.push_back(e);
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            d1[static_cast<size_t>(g.index_of(u))]++;
            d1[static_cast<size_t>(g.index_of(v))]++;
            for (int w : madj[static_cast<size_t>(e)])
                if (!taken[static_cast<size_t>(w)] && !in_frontier[static_cast<size_t>(w)]) {
                    in_frontier[static_cast<size_t>(w)] = 1;
                    frontier.push_back(w);
                }
        };
        take(seed);
        while (order.size() < s.size()) {
            int best = -1, best_delta = 0;
            for (int e : frontier) {
                if (taken[static_cast<size_t>(e)]) continue;
                int delta = width_delta(e);
                if (best < 0 || delta < best_delta || (delta == best_delta && e < best)) {
                    best = e;
                    best_delta = delta;
                }
            }
            if (best < 0) {
                // medially disconnected remainder (bridges): jump to the
                // smallest untaken edge
                for (int e : s)
                    if (!taken[static_cast<size_t>(e)]) {
                        best = e;
                        break;
                    }
            }
            frontier.erase(std::remove_if(frontier.begin(), frontier.end(),
                                          [&](int e) { return taken[static_cast<size_t>(e)] || e == best; }),
                           frontier.end());
            in_frontier[static_cast<size_t>(best)] = 0;
            take(best);
        }
        return order;
    }

    std::pair<std::vector<int>, std::vector<int>> find_split(const std::vector<int>& s) {
        const Graph& g = idx_.emb->graph;
        std::vector<char> in_s(static_cast<size_t>(m_), 0);
        for (int e : s) in_s[static_cast<size_t>(e)] = 1;
        const int sz = static_cast<int>(s.size());

        std::vector<std::vector<int>> orders;
        if (variant_ != 2) {
            auto bfs1 = bfs_order(s, s.front());
            orders.push_back(greedy_order(s, s.front()));
            orders.push_back(greedy_order(s, bfs1.back()));
            orders.push_back(std::move(bfs1));
        }

        // For each order, sweep the two cut widths incrementally over every
        // prefix, then validate the most promising prefixes only.
        std::vector<int> din_s(static_cast<size_t>(g.n()), 0);
        for (int e : s) {
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            din_s[static_cast<size_t>(g.index_of(u))]++;
            din_s[static_cast<size_t>(g.index_of(v))]++;
        }
        struct Cand {
            int width, imbalance, which, k;
            bool operator<(const Cand& o) const {
                return std::tie(width, imbalance, which, k) < std::tie(o.width, o.imbalance, o.which, o.k);
            }
        };
        std::vector<Cand> cands;
        for (size_t which = 0; which < orders.size(); ++which) {
            const auto& order = orders[which];
            std::vector<int> d1(static_cast<size_t>(g.n()), 0);
            int w1 = 0, w2 = 0;
            // w2 starts as the width of the parent cut (s vs rest)
            for (int i = 0; i < g.n(); ++i) {
                int dg = g.degree(g.id_of(i));
                if (din_s[static_cast<size_t>(i)] >= 1 && din_s[static_cast<size_t>(i)] < dg) ++w2;
            }
            for (int k = 1; k < sz; ++k) {
                int e = order[static_cast<size_t>(k - 1)];
                auto [u, v] = g.edges()[static_cast<size_t>(e)];
                for (int w : {g.index_of(u), g.index_of(v)}) {
                    int dg = g.degree(g.id_of(w));
                    int before1 = d1[static_cast<size_t>(w)];
                    bool in1_b = before1 >= 1 && before1 < dg;
                    bool in1_a = before1 + 1 < dg; // before1+1 >= 1 always
                    w1 += static_cast<int>(in1_a) - static_cast<int>(in1_b);
                    int s2_before = din_s[static_cast<size_t>(w)] - before1;
                    bool in2_b = s2_before >= 1 && s2_before < dg;
                    bool in2_a = s2_before - 1 >= 1 && s2_before - 1 < dg;
                    w2 += static_cast<int>(in2_a) - static_cast<int>(in2_b);
                    d1[static_cast<size_t>(w)] = before1 + 1;
                }
                int target = variant_ == 1 ? sz / 3 : sz / 2;
                cands.push_back({std::max(w1, w2), std::abs(target - k), static_cast<int>(which), k});
            }
        }
        std::sort(cands.begin(), cands.end());

        std::vector<char> part(static_cast<size_t>(m_), 0);
        size_t probe_limit = std::min<size_t>(cands.size(), 48);
        for (size_t pass = 0; pass < 2; ++pass) {
            size_t from = pass == 0 ? 0 : probe_limit;
            size_t to = pass == 0 ? probe_limit : cands.size();
            for (size_t ci = from; ci < to; ++ci) {
                const auto& c = cands[ci];
                const auto& order = orders[static_cast<size_t>(c.which)];
                std::fill(part.begin(), part.end(), 0);
                for (int i = 0; i < c.k; ++i) part[static_cast<size_t>(order[static_cast<size_t>(i)])] = 1;
                if (!split_valid(in_s, part)) continue;
                std::vector<int> s1, s2;
                for (int e : s) (part[static_cast<size_t>(e)] ? s1 : s2).push_back(e);
                return {s1, s2};
            }
        }
        // Peel fallback: split off a single edge; an elementary noose always
        // bounds it, so only the complement side needs checking.
        for (int e : s) {
            std::fill(part.begin(), part.end(), 0);
            part[static_cast<size_t>(e)] = 1;
            if (split_valid(in_s, part)) {
                std::vector<int> s1{e}, s2;
                for (int x : s)
                    if (x != e) s2.push_back(x);
                return {s1, s2};
            }
        }
        throw internal_error("no valid split found for a noose-bounded cluster");
    }

    ScDecomposition finish() {
        ScDecomposition d;
        d.tree_adj = tree_adj_;
        for (auto& nb : d.tree_adj) std::sort(nb.begin(), nb.end());
        d.leaf_edge = leaf_edge_;
        fill_cut_data(idx_, d);
        return d;
    }

  public:
    static void fill_cut_data(const EmbeddingIndex& idx, ScDecomposition& d);

  private:
    EmbeddingIndex idx_;
    int m_;
    int variant_ = 0;
    std::vector<std::vector<int>> tree_adj_;
    std::vector<int> leaf_edge_;
};

// Leaf sets below each oriented tree edge, then cut data per tree edge.
void ScdBuilder::fill_cut_data(const EmbeddingIndex& idx, ScDecomposition& d) {
    const Graph& g = idx.emb->graph;
    int nn = static_cast<int>(d.tree_adj.size());
    d.tree_edges.clear();
    for (int a = 0; a < nn; ++a)
        for (int b : d.tree_adj[static_cast<size_t>(a)])
            if (a < b) d.tree_edges.emplace_back(a, b);
    std::sort(d.tree_edges.begin(), d.tree_edges.end());

    d.omega.assign(d.tree_edges.size(), {});
    d.pi.assign(d.tree_edges.size(), {});
    d.width = 0;

    for (size_t t = 0; t < d.tree_edges.size(); ++t) {
        auto [a, b] = d.tree_edges[t];
        // Side of `a` when edge (a,b) is removed.
        std::vector<char> side(static_cast<size_t>(g.m()), 0);
        std::vector<int> stack{a};
        std::vector<char> seen(static_cast<size_t>(nn), 0);
        seen[static_cast<size_t>(a)] = 1;
        seen[static_cast<size_t>(b)] = 1; // block the far side
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (d.leaf_edge[static_cast<size_t>(x)] >= 0)
                side[static_cast<size_t>(d.leaf_edge[static_cast<size_t>(x)])] = 1;
            for (int y : d.tree_adj[static_cast<size_t>(x)])
                if (!seen[static_cast<size_t>(y)]) {
                    seen[static_cast<size_t>(y)] = 1;
                    stack.push_back(y);
                }
        }
        CutInfo info = trace_cut(idx, side);
        if (!info.ok) throw validation_error("tree edge is not a noose cut: " + info.why);
        VertexSet check = omega_from_sides(g, side);
        RCDS_REQUIRE(check == info.omega, "middle set disagrees with noose trace");
        d.omega[t] = info.omega;
        d.pi[t] = canonical_cycle(info.pi);
        d.width = std::max(d.width, static_cast<int>(info.omega.size()));
    }
}

} // namespace

int ScDecomposition::tree_edge_index(int a, int b) const {
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = std::lower_bound(tree_edges.begin(), tree_edges.end(), key);
    if (it == tree_edges.end() || *it != key) throw domain_error("unknown tree edge");
    return static_cast<int>(it - tree_edges.begin());
}

ScDecomposition heuristic_sphere_cut(const PlaneEmbedding& embedding, int variant) {
    if (embedding.graph.m() < 3)
        throw domain_error("heuristic_sphere_cut expects at least 3 edges; smaller inputs are solved directly");
    if (!embedding.graph.connected()) throw domain_error("heuristic_sphere_cut assumes a connected graph");
    ScdBuilder b(embedding, variant);
    return b.build();
}

ValidationReport validate(const PlaneEmbedding& embedding, const ScDecomposition& d) {
    ValidationReport rep;
    const Graph& g = embedding.graph;
    auto fail = [&rep](std::string why) {
        rep.ok = false;
        rep.failures.push_back(std::move(why));
    };

    int nn = static_cast<int>(d.tree_adj.size());
    if (static_cast<int>(d.leaf_edge.size()) != nn) {
        fail("leaf map size disagrees with node count");
        return rep;
    }
    // Shape: leaves degree 1, internal degree 3, connected, acyclic.
    int nleaf = 0;
    for (int v = 0; v < nn; ++v) {
        size_t deg = d.tree_adj[static_cast<size_t>(v)].size();
        if (d.leaf_edge[static_cast<size_t>(v)] >= 0) {
            ++nleaf;
            if (deg != 1 && nn > 1) fail("leaf node " + std::to_string(v) + " has degree " + std::to_string(deg));
        } else if (deg != 3) {
            fail("internal node " + std::to_string(v) + " has degree " + std::to_string(deg));
        }
    }
    if (nleaf != g.m()) fail("leaf count " + std::to_string(nleaf) + " != edge count " + std::to_string(g.m()));
    std::vector<char> used(static_cast<size_t>(g.m()), 0);
    for (int v = 0; v < nn; ++v) {
        int e = d.leaf_edge[static_cast<size_t>(v)];
        if (e < 0) continue;
        if (e >= g.m() || used[static_cast<size_t>(e)]) fail("leaf map is not a bijection");
        else used[static_cast<size_t>(e)] = 1;
    }
    int edge_count = 0;
    for (int v = 0; v < nn; ++v) edge_count += static_cast<int>(d.tree_adj[static_cast<size_t>(v)].size());
    edge_count /= 2;
    if (edge_count != nn - 1) fail("tree has " + std::to_string(edge_count) + " edges over " + std::to_string(nn) + " nodes");
    if (!rep.ok) return rep;

    ScDecomposition copy = d;
    try {
        EmbeddingIndex idx(embedding);
        ScdBuilder::fill_cut_data(idx, copy);
    } catch (const std::exception& e) {
        fail(e.what());
        return rep;
    }
    rep.width = copy.width;
    // Cross-check stored data when present.
    if (!d.omega.empty() && d.omega != copy.omega) fail("stored middle sets disagree with recomputation");
    if (!d.pi.empty()) {
        for (size_t t = 0; t < copy.pi.size() && t < d.pi.size(); ++t)
            if (canonical_cycle(d.pi[t]) != copy.pi[t])
                fail("stored cyclic order of tree edge " + std::to_string(t) + " is not noose-realizable");
    }
    if (!d.omega.empty() && d.width != copy.width) fail("stored width disagrees with recomputation");
    return rep;
}

std::string export_decomposition(const ScDecomposition& d, const PlaneEmbedding& embedding) {
    const Graph& g = embedding.graph;
    nlohmann::json nodes = nlohmann::json::array();
    for (size_t v = 0; v < d.tree_adj.size(); ++v) {
        nlohmann::json n;
        n["id"] = v;
        if (d.leaf_edge[v] >= 0) {
            auto [a, b] = g.edges()[static_cast<size_t>(d.leaf_edge[v])];
            n["leaf_edge"] = {a, b};
        } else {
            n["children"] = d.tree_adj[v];
        }
        nodes.push_back(std::move(n));
    }
    nlohmann::json pi = nlohmann::json::object();
    for (size_t t = 0; t < d.tree_edges.size(); ++t) {
        auto [a, b] = d.tree_edges[t];
        pi[std::to_string(a) + "-" + std::to_string(b)] = d.pi[t];
    }
    nlohmann::json j;
    j["nodes"] = std::move(nodes);
    j["pi"] = std::move(pi);
    return j.dump();
}

ScDecomposition import_decomposition(const PlaneEmbedding& embedding, const std::string& text) {
    const Graph& g = embedding.graph;
    ScDecomposition d;

    auto edge_index = [&g](VertexId u, VertexId v) {
        Edge e = make_edge(u, v);
        auto it = std::lower_bound(g.edges().begin(), g.edges().end(), e);
        if (it == g.edges().end() || *it != e)
            throw validation_error("decomposition references unknown graph edge " + std::to_string(u) + "-" +
                                   std::to_string(v));
        return static_cast<int>(it - g.edges().begin());
    };

    std::string trimmed = text;
    size_t first = trimmed.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw parse_error("empty decomposition input");

    if (trimmed[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("bad decomposition JSON: ") + e.what());
        }
        if (!j.contains("nodes")) throw parse_error("decomposition JSON lacks \"nodes\"");
        size_t nn = j["nodes"].size();
        d.tree_adj.assign(nn, {});
        d.leaf_edge.assign(nn, -1);
        std::set<std::pair<int, int>> links;
        for (const auto& n : j["nodes"]) {
            int id = n.at("id").get<int>();
            if (id < 0 || static_cast<size_t>(id) >= nn) throw parse_error("node id out of range");
            if (n.contains("leaf_edge")) {
                d.leaf_edge[static_cast<size_t>(id)] =
                    edge_index(n["leaf_edge"][0].get<VertexId>(), n["leaf_edge"][1].get<VertexId>());
            }
            if (n.contains("children"))
                for (const auto& c : n["children"]) {
                    int b = c.get<int>();
                    if (b < 0 || static_cast<size_t>(b) >= nn) throw parse_error("neighbor id out of range");
                    links.insert(std::minmax(id, b));
                }
        }
        for (auto [a, b] : links) {
            d.tree_adj[static_cast<size_t>(a)].push_back(b);
            d.tree_adj[static_cast<size_t>(b)].push_back(a);
        }
    } else {
        // Text format: "edge A B" tree links and "leaf A u v" pairings.
        std::istringstream in(text);
        std::string tok;
        std::vector<std::pair<int, int>> links;
        std::vector<std::pair<int, int>> leaves; // node, edge idx
        int max_node = -1;
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            if (!(ls >> tok)) continue;
            if (tok == "edge") {
                int a, b;
                if (!(ls >> a >> b)) throw parse_error("bad edge line: " + line);
                links.emplace_back(a, b);
                max_node = std::max({max_node, a, b});
            } else if (tok == "leaf") {
                int a;
                VertexId u, v;
                if (!(ls >> a >> u >> v)) throw parse_error("bad leaf line: " + line);
                leaves.emplace_back(a, edge_index(u, v));
                max_node = std::max(max_node, a);
            } else {
                throw parse_error("unknown directive \"" + tok + "\"");
            }
        }
        d.tree_adj.assign(static_cast<size_t>(max_node + 1), {});
        d.leaf_edge.assign(static_cast<size_t>(max_node + 1), -1);
        for (auto [a, b] : links) {
            d.tree_adj[static_cast<size_t>(a)].push_back(b);
            d.tree_adj[static_cast<size_t>(b)].push_back(a);
        }
        for (auto [a, e] : leaves) d.leaf_edge[static_cast<size_t>(a)] = e;
    }

    for (auto& nb : d.tree_adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    ValidationReport rep = validate(embedding, d);
    if (!rep.ok) {
        std::string why = "invalid decomposition";
        for (const auto& f : rep.failures) why += "; " + f;
        throw validation_error(why);
    }
    EmbeddingIndex idx(embedding);
    ScdBuilder::fill_cut_data(idx, d);
    return d;
}

RootedScd root_decomposition(const ScDecomposition& d, const PlaneEmbedding& embedding,
                             std::optional<std::pair<int, int>> attach_edge) {
    const Graph& g = embedding.graph;
    RCDS_REQUIRE(!d.tree_edges.empty(), "cannot root a decomposition without tree edges");
    std::pair<int, int> attach =
        attach_edge ? std::make_pair(std::min(attach_edge->first, attach_edge->second),
                                     std::max(attach_edge->first, attach_edge->second))
                    : d.tree_edges.front();
    (void)d.tree_edge_index(attach.first, attach.second); // existence check

    RootedScd r;
    r.graph_n = g.n();

    // T' nodes: original nodes plus z and the root. We walk T' as a rooted
    // tree of "edges": each T'-edge below z corresponds to an original tree
    // edge oriented away from the attach edge.
    //
    // Post-order over oriented edges (parent_node, child_node).
    struct Oriented {
        int parent, child;
    };
    std::vector<RootedScd::EdgeInfo> infos;
    std::map<std::pair<int, int>, int> edge_slot; // oriented (parent,child) -> index

    std::function<int(int, int)> visit = [&](int parent, int child) -> int {
        RootedScd::EdgeInfo info;
        if (d.leaf_edge[static_cast<size_t>(child)] >= 0) {
            info.is_leaf = true;
            auto [u, v] = g.edges()[static_cast<size_t>(d.leaf_edge[static_cast<size_t>(child)])];
            info.leaf_u = u;
            info.leaf_v = v;
        } else {
            std::vector<int> kids;
            for (int w : d.tree_adj[static_cast<size_t>(child)])
                if (w != parent) kids.push_back(w);
            RCDS_REQUIRE(kids.size() == 2, "internal node of T' without two children");
            info.child1 = visit(child, kids[0]);
            info.child2 = visit(child, kids[1]);
        }
        int t = d.tree_edge_index(parent, child);
        const auto& pi = d.pi[static_cast<size_t>(t)];
        info.omega = pi;
        infos.push_back(std::move(info));
        int slot = static_cast<int>(infos.size()) - 1;
        edge_slot[{parent, child}] = slot;
        return slot;
    };

    // z subdivides the attach edge {u,v}: children of the root edge {z,r}
    // are {u,z} and {z,v}, both inheriting omega({u,v}).
    int u = attach.first, v = attach.second;
    int left, right;
    {
        // {u,z}: subtree hanging at u away from v.
        RootedScd::EdgeInfo info;
        if (d.leaf_edge[static_cast<size_t>(u)] >= 0) {
            info.is_leaf = true;
            auto [a, b] = g.edges()[static_cast<size_t>(d.leaf_edge[static_cast<size_t>(u)])];
            info.leaf_u = a;
            info.leaf_v = b;
        } else {
            std::vector<int> kids;
            for (int w : d.tree_adj[static_cast<size_t>(u)])
                if (w != v) kids.push_back(w);
            RCDS_REQUIRE(kids.size() == 2, "attach endpoint without two children");
            info.child1 = visit(u, kids[0]);
            info.child2 = visit(u, kids[1]);
        }
        info.omega = d.pi[static_cast<size_t>(d.tree_edge_index(u, v))];
        infos.push_back(std::move(info));
        left = static_cast<int>(infos.size()) - 1;
    }
    {
        RootedScd::EdgeInfo info;
        if (d.leaf_edge[static_cast<size_t>(v)] >= 0) {
            info.is_leaf = true;
            auto [a, b] = g.edges()[static_cast<size_t>(d.leaf_edge[static_cast<size_t>(v)])];
            info.leaf_u = a;
            info.leaf_v = b;
        } else {
            std::vector<int> kids;
            for (int w : d.tree_adj[static_cast<size_t>(v)])
                if (w != u) kids.push_back(w);
            RCDS_REQUIRE(kids.size() == 2, "attach endpoint without two children");
            info.child1 = visit(v, kids[0]);
            info.child2 = visit(v, kids[1]);
        }
        info.omega = d.pi[static_cast<size_t>(d.tree_edge_index(u, v))];
        infos.push_back(std::move(info));
        right = static_cast<int>(infos.size()) - 1;
    }
    RootedScd::EdgeInfo root;
    root.child1 = left;
    root.child2 = right;
    infos.push_back(std::move(root));
    r.edges = std::move(infos);
    r.root_edge = static_cast<int>(r.edges.size()) - 1;
    return r;
}

MergeContext merge_context(const RootedScd& r, int edge_index) {
    if (edge_index < 0 || static_cast<size_t>(edge_index) >= r.edges.size())
        throw domain_error("merge_context: bad edge index");
    const auto& e = r.edges[static_cast<size_t>(edge_index)];
    if (e.child1 < 0) throw domain_error("merge_context: edge has no children");
    VertexSet we = normalize_vertex_set(e.omega);
    VertexSet w1 = normalize_vertex_set(r.edges[static_cast<size_t>(e.child1)].omega);
    VertexSet w2 = normalize_vertex_set(r.edges[static_cast<size_t>(e.child2)].omega);
    MergeContext ctx;
    ctx.x1 = set_difference(we, w2);
    ctx.x2 = set_difference(we, w1);
    ctx.x3 = set_intersection(we, set_intersection(w1, w2));
    ctx.x4 = set_difference(set_union(w1, w2), we);
    return ctx;
}

} // namespace rcds
