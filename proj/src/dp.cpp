#include "rcds/dp.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include <json.hpp>

#include "rcds/planar.hpp"
#include "rcds/protection.hpp"

namespace rcds {

namespace {

constexpr int kInf = 1 << 29;

std::uint64_t pack(const Coloring& c) {
    RCDS_REQUIRE(c.size() <= 16, "middle set too wide for the packed state encoding");
    std::uint64_t key = 0;
    for (size_t i = 0; i < c.size(); ++i) key |= static_cast<std::uint64_t>(c[i]) << (4 * i);
    return key | (static_cast<std::uint64_t>(c.size()) << 60);
}

} // namespace

Basic basic_of(Sym s) {
    switch (s) {
        case Sym::Hat: return Basic::Hat;
        case Sym::ZeroOpen:
        case Sym::ZeroClose:
        case Sym::ZeroMid:
        case Sym::ZeroSingle: return Basic::Zero;
        default: return Basic::One;
    }
}

char bracket_of(Sym s) {
    switch (s) {
        case Sym::ZeroOpen:
        case Sym::OneOpen: return '[';
        case Sym::ZeroClose:
        case Sym::OneClose: return ']';
        case Sym::ZeroMid:
        case Sym::OneMid: return '*';
        case Sym::ZeroSingle:
        case Sym::OneSingle: return 's';
        default: return '.';
    }
}

std::string coloring_to_string(const Coloring& c) {
    std::string out;
    for (Sym s : c) {
        if (s == Sym::Hat) {
            out += '^';
        } else {
            out += basic_of(s) == Basic::One ? '1' : '0';
            out += bracket_of(s);
        }
    }
    return out;
}

BlockDecoding decode_blocks(const Coloring& c) {
    BlockDecoding out;
    out.block_of.assign(c.size(), -1);
    std::vector<int> stack;
    for (size_t i = 0; i < c.size(); ++i) {
        switch (bracket_of(c[i])) {
            case '.': break;
            case '[':
                stack.push_back(out.block_count++);
                out.block_of[i] = stack.back();
                break;
            case '*':
                RCDS_REQUIRE(!stack.empty(), "dangling block continuation in " + coloring_to_string(c));
                out.block_of[i] = stack.back();
                break;
            case ']':
                RCDS_REQUIRE(!stack.empty(), "unbalanced bracket in " + coloring_to_string(c));
                out.block_of[i] = stack.back();
                stack.pop_back();
                break;
            case 's': out.block_of[i] = out.block_count++; break;
        }
    }
    RCDS_REQUIRE(stack.empty(), "unclosed block in " + coloring_to_string(c));
    return out;
}

std::optional<Coloring> encode_blocks(const std::vector<Basic>& basics, const std::vector<int>& block_of) {
    RCDS_REQUIRE(basics.size() == block_of.size(), "encode_blocks: length mismatch");
    const size_t n = basics.size();
    std::unordered_map<int, std::pair<int, int>> span; // block -> (first,last)
    for (size_t i = 0; i < n; ++i) {
        if (block_of[i] < 0) continue;
        auto it = span.find(block_of[i]);
        if (it == span.end()) span[block_of[i]] = {static_cast<int>(i), static_cast<int>(i)};
        else it->second.second = static_cast<int>(i);
    }
    Coloring out(n, Sym::Hat);
    std::vector<int> stack;
    for (size_t i = 0; i < n; ++i) {
        int b = block_of[i];
        if (b < 0) {
            if (basics[i] != Basic::Hat) return std::nullopt; // non-hat entry must sit in a block
            out[i] = Sym::Hat;
            continue;
        }
        if (basics[i] == Basic::Hat) return std::nullopt;
        bool one = basics[i] == Basic::One;
        auto [first, last] = span[b];
        if (first == last) {
            out[i] = one ? Sym::OneSingle : Sym::ZeroSingle;
        } else if (static_cast<int>(i) == first) {
            out[i] = one ? Sym::OneOpen : Sym::ZeroOpen;
            stack.push_back(b);
        } else if (static_cast<int>(i) == last) {
            if (stack.empty() || stack.back() != b) return std::nullopt; // crossing partition
            stack.pop_back();
            out[i] = one ? Sym::OneClose : Sym::ZeroClose;
        } else {
            if (stack.empty() || stack.back() != b) return std::nullopt;
            out[i] = one ? Sym::OneMid : Sym::ZeroMid;
        }
    }
    if (!stack.empty()) return std::nullopt;
    return out;
}

int ValueTable::find(const Coloring& c) const {
    std::uint64_t key = pack(c);
    auto cmp = [](const TableEntry& e, std::uint64_t k) { return pack(e.coloring) < k; };
    auto it = std::lower_bound(entries.begin(), entries.end(), key, cmp);
    if (it == entries.end() || pack(it->coloring) != key) return -1;
    return static_cast<int>(it - entries.begin());
}

ValueTable leaf_table(Edge graph_edge, const std::vector<VertexId>& omega) {
    for (VertexId v : omega)
        if (v != graph_edge.first && v != graph_edge.second)
            throw domain_error("leaf_table: middle set vertex " + std::to_string(v) + " is not an endpoint");
    ValueTable t;
    if (omega.size() == 1) {
        t.entries.push_back({{Sym::ZeroSingle}, 1, -1, -1});
        t.entries.push_back({{Sym::OneSingle}, 1, -1, -1});
    } else if (omega.size() == 2) {
        t.entries.push_back({{Sym::ZeroOpen, Sym::OneClose}, 1, -1, -1});
        t.entries.push_back({{Sym::Hat, Sym::Hat}, 0, -1, -1});
        t.entries.push_back({{Sym::OneOpen, Sym::ZeroClose}, 1, -1, -1});
        t.entries.push_back({{Sym::OneOpen, Sym::OneClose}, 2, -1, -1});
    } else {
        throw domain_error("leaf_table: middle set size " + std::to_string(omega.size()) +
                           " is impossible for a leaf edge");
    }
    std::sort(t.entries.begin(), t.entries.end(),
              [](const TableEntry& a, const TableEntry& b) { return pack(a.coloring) < pack(b.coloring); });
    return t;
}

bool consistent_basic(const std::map<VertexId, Basic>& ce, const std::map<VertexId, Basic>& ce1,
                      const std::map<VertexId, Basic>& ce2, const MergeContext& ctx) {
    auto get = [](const std::map<VertexId, Basic>& m, VertexId v) {
        auto it = m.find(v);
        if (it == m.end()) throw domain_error("consistent_basic: vertex " + std::to_string(v) + " not colored");
        return it->second;
    };
    for (VertexId v : ctx.x1)
        if (get(ce, v) != get(ce1, v)) return false;
    for (VertexId v : ctx.x2)
        if (get(ce, v) != get(ce2, v)) return false;
    for (VertexId v : ctx.x3) {
        Basic b = get(ce, v), b1 = get(ce1, v), b2 = get(ce2, v);
        if (b == Basic::One || b == Basic::Hat) {
            if (b1 != b || b2 != b) return false;
        } else {
            bool ok = (b1 == Basic::Zero && b2 == Basic::Hat) || (b1 == Basic::Hat && b2 == Basic::Zero) ||
                      (b1 == Basic::Zero && b2 == Basic::Zero);
            if (!ok) return false;
        }
    }
    for (VertexId v : ctx.x4) {
        Basic b1 = get(ce1, v), b2 = get(ce2, v);
        bool ok = (b1 == Basic::One && b2 == Basic::One) || (b1 == Basic::Zero && b2 == Basic::Hat) ||
                  (b1 == Basic::Hat && b2 == Basic::Zero) || (b1 == Basic::Zero && b2 == Basic::Zero);
        if (!ok) return false;
    }
    return true;
}

namespace {

// Precomputed structure for merging the tables of one parent edge.
struct MergePlan {
    struct Shared {
        int pos1, pos2;
        bool x4;
    };
    std::vector<Shared> shared;
    // parent position sources; cls: 0 -> X1 (pos1), 1 -> X2 (pos2), 2 -> X3 (both)
    struct Source {
        int cls;
        int pos1 = -1, pos2 = -1;
    };
    std::vector<Source> parent;
    std::vector<char> proj1, proj2; // child position projects into omega_e
};

MergePlan make_plan(const std::vector<VertexId>& omega1, const std::vector<VertexId>& omega2,
                    const std::vector<VertexId>& omega_e) {
    auto pos_in = [](const std::vector<VertexId>& omega, VertexId v) {
        for (size_t i = 0; i < omega.size(); ++i)
            if (omega[i] == v) return static_cast<int>(i);
        return -1;
    };
    MergePlan plan;
    plan.proj1.assign(omega1.size(), 0);
    plan.proj2.assign(omega2.size(), 0);
    for (size_t i = 0; i < omega1.size(); ++i) {
        int j = pos_in(omega2, omega1[i]);
        if (j >= 0) plan.shared.push_back({static_cast<int>(i), j, pos_in(omega_e, omega1[i]) < 0});
    }
    for (const auto& v : omega_e) {
        int p1 = pos_in(omega1, v), p2 = pos_in(omega2, v);
        RCDS_REQUIRE(p1 >= 0 || p2 >= 0, "middle set vertex absent from both children");
        MergePlan::Source s;
        if (p1 >= 0 && p2 >= 0) s = {2, p1, p2};
        else if (p1 >= 0) s = {0, p1, -1};
        else s = {1, -1, p2};
        plan.parent.push_back(s);
        if (p1 >= 0) plan.proj1[static_cast<size_t>(p1)] = 1;
        if (p2 >= 0) plan.proj2[static_cast<size_t>(p2)] = 1;
    }
    return plan;
}

// Scratch buffers reused across merge invocations.
struct MergeScratch {
    std::vector<int> uf, trace, comp_of_parent;
    std::vector<Basic> parent_basics;

    int find(int x) {
        while (uf[static_cast<size_t>(x)] != x) {
            uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
            x = uf[static_cast<size_t>(x)];
        }
        return x;
    }
};

// Core merge of one entry pair. Returns false when incompatible; otherwise
// fills parent coloring (empty at the root edge) and the correction delta.
bool merge_pair(const MergePlan& plan, const Coloring& c1, const BlockDecoding& d1, const Coloring& c2,
                const BlockDecoding& d2, bool at_root, MergeScratch& s, Coloring* out, int* delta) {
    const int p1 = d1.block_count, p2 = d2.block_count;
    s.uf.resize(static_cast<size_t>(p1 + p2));
    for (int i = 0; i < p1 + p2; ++i) s.uf[static_cast<size_t>(i)] = i;

    int ones = 0;
    for (const auto& sh : plan.shared) {
        Basic b1 = basic_of(c1[static_cast<size_t>(sh.pos1)]);
        Basic b2 = basic_of(c2[static_cast<size_t>(sh.pos2)]);
        if ((b1 == Basic::One) != (b2 == Basic::One)) return false;
        if (b1 == Basic::One) {
            ++ones;
        } else if (sh.x4 && b1 == Basic::Hat && b2 == Basic::Hat) {
            return false; // a vertex leaving the middle sets must be settled
        }
        if (b1 != Basic::Hat && b2 != Basic::Hat) {
            int a = s.find(d1.block_of[static_cast<size_t>(sh.pos1)]);
            int b = s.find(p1 + d2.block_of[static_cast<size_t>(sh.pos2)]);
            if (a != b) s.uf[static_cast<size_t>(a)] = b;
        }
    }
    *delta = ones;

    // Which merged components reach the parent middle set?
    s.trace.assign(static_cast<size_t>(p1 + p2), 0);
    for (size_t i = 0; i < plan.proj1.size(); ++i)
        if (plan.proj1[i] && d1.block_of[i] >= 0) s.trace[static_cast<size_t>(s.find(d1.block_of[i]))] = 1;
    for (size_t i = 0; i < plan.proj2.size(); ++i)
        if (plan.proj2[i] && d2.block_of[i] >= 0) s.trace[static_cast<size_t>(s.find(p1 + d2.block_of[i]))] = 1;

    if (at_root) {
        // Every block must fuse into a single component.
        int root = -1;
        for (int b = 0; b < p1 + p2; ++b) {
            int r = s.find(b);
            if (root < 0) root = r;
            else if (r != root) return false;
        }
        if (p1 + p2 == 0) return false; // an empty protection set cannot cover a connected graph
        out->clear();
        return true;
    }
    for (int b = 0; b < p1 + p2; ++b)
        if (s.find(b) == b && !s.trace[static_cast<size_t>(b)]) return false; // component vanishes early

    // Parent coloring: basic per position plus merged component id.
    const size_t ne = plan.parent.size();
    s.parent_basics.assign(ne, Basic::Hat);
    s.comp_of_parent.assign(ne, -1);
    for (size_t k = 0; k < ne; ++k) {
        const auto& src = plan.parent[k];
        if (src.cls == 0) {
            Basic b = basic_of(c1[static_cast<size_t>(src.pos1)]);
            s.parent_basics[k] = b;
            if (b != Basic::Hat) s.comp_of_parent[k] = s.find(d1.block_of[static_cast<size_t>(src.pos1)]);
        } else if (src.cls == 1) {
            Basic b = basic_of(c2[static_cast<size_t>(src.pos2)]);
            s.parent_basics[k] = b;
            if (b != Basic::Hat) s.comp_of_parent[k] = s.find(p1 + d2.block_of[static_cast<size_t>(src.pos2)]);
        } else {
            Basic b1 = basic_of(c1[static_cast<size_t>(src.pos1)]);
            Basic b2 = basic_of(c2[static_cast<size_t>(src.pos2)]);
            if (b1 == Basic::Hat && b2 == Basic::Hat) {
                s.parent_basics[k] = Basic::Hat;
            } else {
                s.parent_basics[k] = (b1 == Basic::One) ? Basic::One : Basic::Zero;
                int ca = b1 != Basic::Hat ? s.find(d1.block_of[static_cast<size_t>(src.pos1)]) : -1;
                int cb = b2 != Basic::Hat ? s.find(p1 + d2.block_of[static_cast<size_t>(src.pos2)]) : -1;
                if (ca >= 0 && cb >= 0) RCDS_REQUIRE(ca == cb, "shared vertex in two merged components");
                s.comp_of_parent[k] = ca >= 0 ? ca : cb;
            }
        }
    }
    auto encoded = encode_blocks(s.parent_basics, s.comp_of_parent);
    RCDS_REQUIRE(encoded.has_value(), "merged component traces cross the noose order");
    *out = std::move(*encoded);
    return true;
}

} // namespace

std::optional<std::pair<Coloring, int>> merge_compatible(const MergeInput& in) {
    RCDS_REQUIRE(in.c1.size() == in.omega1.size() && in.c2.size() == in.omega2.size(),
                 "merge_compatible: coloring lengths disagree with middle sets");
    MergePlan plan = make_plan(in.omega1, in.omega2, in.omega_e);
    BlockDecoding d1 = decode_blocks(in.c1);
    BlockDecoding d2 = decode_blocks(in.c2);
    MergeScratch scratch;
    Coloring out;
    int delta = 0;
    if (!merge_pair(plan, in.c1, d1, in.c2, d2, in.omega_e.empty(), scratch, &out, &delta)) return std::nullopt;
    return std::make_pair(out, delta);
}

DpResult dp_recursion(const RootedScd& r) {
    RCDS_REQUIRE(!r.edges.empty() && r.root_edge == static_cast<int>(r.edges.size()) - 1,
                 "dp_recursion: malformed rooted decomposition");
    DpResult dp;
    dp.tables.resize(r.edges.size());

    std::vector<std::vector<BlockDecoding>> decodings(r.edges.size());

    for (size_t ei = 0; ei < r.edges.size(); ++ei) {
        const auto& e = r.edges[ei];
        const bool at_root = static_cast<int>(ei) == r.root_edge;

        if (e.is_leaf) {
            dp.tables[ei] = leaf_table(make_edge(e.leaf_u, e.leaf_v), e.omega);
        } else {
            const auto& t1 = dp.tables[static_cast<size_t>(e.child1)];
            const auto& t2 = dp.tables[static_cast<size_t>(e.child2)];
            const auto& w1 = r.edges[static_cast<size_t>(e.child1)].omega;
            const auto& w2 = r.edges[static_cast<size_t>(e.child2)].omega;
            MergePlan plan = make_plan(w1, w2, e.omega);

            // Bucket child-2 entries by the chosen/not pattern on shared
            // vertices; a compatible pair must agree there exactly.
            auto shared_mask = [&plan](const Coloring& c, bool second) {
                std::uint64_t mask = 0;
                for (size_t i = 0; i < plan.shared.size(); ++i) {
                    int pos = second ? plan.shared[i].pos2 : plan.shared[i].pos1;
                    if (basic_of(c[static_cast<size_t>(pos)]) == Basic::One) mask |= 1ull << i;
                }
                return mask;
            };
            std::unordered_map<std::uint64_t, std::vector<int>> buckets;
            for (size_t j = 0; j < t2.entries.size(); ++j)
                buckets[shared_mask(t2.entries[j].coloring, true)].push_back(static_cast<int>(j));

            std::unordered_map<std::uint64_t, int> slot; // packed parent coloring -> entry index
            std::vector<TableEntry> entries;
            MergeScratch scratch;
            Coloring merged;

            int root_value = kInf, root_f1 = -1, root_f2 = -1;
            for (size_t i = 0; i < t1.entries.size(); ++i) {
                const auto& e1 = t1.entries[i];
                const auto& dec1 = decodings[static_cast<size_t>(e.child1)][i];
                auto it = buckets.find(shared_mask(e1.coloring, false));
                if (it == buckets.end()) continue;
                for (int j : it->second) {
                    const auto& e2 = t2.entries[static_cast<size_t>(j)];
                    const auto& dec2 = decodings[static_cast<size_t>(e.child2)][static_cast<size_t>(j)];
                    int delta = 0;
                    if (!merge_pair(plan, e1.coloring, dec1, e2.coloring, dec2, at_root, scratch, &merged, &delta))
                        continue;
                    int cost = e1.cost + e2.cost - delta;
                    if (at_root) {
                        if (cost < root_value) {
                            root_value = cost;
                            root_f1 = static_cast<int>(i);
                            root_f2 = j;
                        }
                        continue;
                    }
                    std::uint64_t key = pack(merged);
                    auto st = slot.find(key);
                    if (st == slot.end()) {
                        slot[key] = static_cast<int>(entries.size());
                        entries.push_back({merged, cost, static_cast<int>(i), j});
                    } else if (cost < entries[static_cast<size_t>(st->second)].cost) {
                        entries[static_cast<size_t>(st->second)] = {merged, cost, static_cast<int>(i), j};
                    }
                }
            }
            if (at_root) {
                if (root_value >= kInf)
                    throw internal_error("dp_recursion: no feasible root assembly for a connected graph");
                dp.root_value = root_value;
                dp.root_from1 = root_f1;
                dp.root_from2 = root_f2;
                return dp;
            }
            std::sort(entries.begin(), entries.end(),
                      [](const TableEntry& a, const TableEntry& b) { return pack(a.coloring) < pack(b.coloring); });
            dp.tables[ei].entries = std::move(entries);
        }
        auto& dec = decodings[ei];
        dec.reserve(dp.tables[ei].entries.size());
        for (const auto& en : dp.tables[ei].entries) dec.push_back(decode_blocks(en.coloring));
    }
    throw internal_error("dp_recursion: never reached the root edge");
}

VertexSet traceback(const DpResult& dp, const RootedScd& r) {
    RCDS_REQUIRE(dp.root_from1 >= 0 && dp.root_from2 >= 0, "traceback before dp_recursion");
    const auto& root = r.edges[static_cast<size_t>(r.root_edge)];
    std::map<VertexId, bool> member;
    auto assign = [&member](VertexId v, bool in) {
        auto it = member.find(v);
        if (it == member.end()) member[v] = in;
        else RCDS_REQUIRE(it->second == in, "traceback: conflicting membership for vertex " + std::to_string(v));
    };

    std::vector<std::pair<int, int>> stack{{root.child1, dp.root_from1}, {root.child2, dp.root_from2}};
    while (!stack.empty()) {
        auto [ei, idx] = stack.back();
        stack.pop_back();
        const auto& e = r.edges[static_cast<size_t>(ei)];
        const auto& entry = dp.tables[static_cast<size_t>(ei)].entries[static_cast<size_t>(idx)];
        for (size_t p = 0; p < e.omega.size(); ++p)
            assign(e.omega[p], basic_of(entry.coloring[p]) == Basic::One);
        if (e.is_leaf) {
            if (e.omega.size() == 1) {
                // Pendant endpoint: in the set exactly when the shared one is not.
                VertexId inside = e.omega[0];
                VertexId pendant = (e.leaf_u == inside) ? e.leaf_v : e.leaf_u;
                assign(pendant, !member.at(inside));
            }
        } else {
            RCDS_REQUIRE(entry.from1 >= 0 && entry.from2 >= 0, "traceback: dangling minimizer pointer");
            stack.emplace_back(e.child1, entry.from1);
            stack.emplace_back(e.child2, entry.from2);
        }
    }
    VertexSet out;
    for (const auto& [v, in] : member)
        if (in) out.push_back(v);
    RCDS_REQUIRE(static_cast<int>(out.size()) == dp.root_value,
                 "traceback produced " + std::to_string(out.size()) + " vertices, expected " +
                     std::to_string(dp.root_value));
    return out;
}

SolveResult solve_planar_rcds(const Graph& g) {
    if (!g.connected()) throw domain_error("solve_planar_rcds assumes a connected graph");
    auto t0 = std::chrono::steady_clock::now();
    auto finish = [&t0](SolveResult r) {
        r.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };

    if (g.m() <= 2) {
        auto r = brute_force_min_rcds(g);
        r->method = "dp";
        return finish(*r);
    }
    auto emb = planarity_embed(g);
    if (!emb) {
        auto pr = planarize(g);
        SolveResult inner = solve_planar_rcds(pr.planar_graph);
        if (!is_rcds(g, inner.optimum))
            throw internal_error("planarized optimum is not an RCDS of the original graph");
        inner.method = "dp(planarized)";
        return finish(std::move(inner));
    }
    ScDecomposition d = heuristic_sphere_cut(*emb);
    RootedScd rooted = root_decomposition(d, *emb);
    DpResult dp = dp_recursion(rooted);
    VertexSet set = traceback(dp, rooted);
    if (!is_rcds(g, set)) throw internal_error("dp traceback is not an RCDS");

    SolveResult r;
    r.optimum = std::move(set);
    r.cardinality = dp.root_value;
    r.method = "dp";
    for (const auto& t : dp.tables) r.stats.nodes += static_cast<std::int64_t>(t.entries.size());
    return finish(std::move(r));
}

std::string table_to_json(const ValueTable& t) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& e : t.entries) j[coloring_to_string(e.coloring)] = e.cost;
    return j.dump();
}

} // namespace rcds
