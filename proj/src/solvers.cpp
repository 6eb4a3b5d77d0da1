#include "rcds/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include <json.hpp>

#include "rcds/protection.hpp"

namespace rcds {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Shared state for the three branch-and-bound variants. Works on dense
// indices; `chosen`/`excluded` are the branching trail.
class Search {
  public:
    enum class Mode { Rcds, Dominating, ConnectedDominating };

    Search(const Graph& g, Mode mode) : g_(g), mode_(mode), n_(g.n()) {
        adj_.resize(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i)
            for (VertexId w : g.neighbors(g.id_of(i))) adj_[static_cast<size_t>(i)].push_back(g.index_of(w));
        chosen_.assign(static_cast<size_t>(n_), 0);
        excluded_.assign(static_cast<size_t>(n_), 0);
        dominators_.assign(static_cast<size_t>(n_), 0);
        best_ = seed_incumbent();
        best_size_ = static_cast<int>(best_.size());
    }

    SolveResult run() {
        auto t0 = Clock::now();
        recurse(0);
        SolveResult r;
        r.optimum.reserve(best_.size());
        for (int i : best_) r.optimum.push_back(g_.id_of(i));
        std::sort(r.optimum.begin(), r.optimum.end());
        r.cardinality = best_size_;
        r.stats.nodes = nodes_;
        r.stats.seconds = elapsed_since(t0);
        return r;
    }

  private:
    bool feasible_leaf(std::vector<int>* branch_set) {
        // Called once every vertex is dominated. Fills `branch_set` with the
        // mandatory candidates when infeasible, per mode.
        if (mode_ == Mode::Dominating) return true;
        if (mode_ == Mode::ConnectedDominating) return cds_connected(branch_set);
        return rcds_connected(branch_set);
    }

    // Connectivity of (V, I_D(E)); when disconnected, any completion must
    // pick an endpoint of an edge leaving the component of the smallest
    // vertex (those endpoints are never in D, cf. the cut argument).
    bool rcds_connected(std::vector<int>* branch_set) {
        std::vector<int> comp(static_cast<size_t>(n_), -1);
        int ncomp = 0;
        for (int s = 0; s < n_; ++s) {
            if (comp[static_cast<size_t>(s)] >= 0) continue;
            comp[static_cast<size_t>(s)] = ncomp;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj_[static_cast<size_t>(v)]) {
                    if (comp[static_cast<size_t>(w)] >= 0) continue;
                    if (chosen_[static_cast<size_t>(v)] || chosen_[static_cast<size_t>(w)]) {
                        comp[static_cast<size_t>(w)] = ncomp;
                        stack.push_back(w);
                    }
                }
            }
            ++ncomp;
        }
        if (ncomp == 1) return true;
        if (branch_set) {
            // Boundary endpoints of component 0 (contains vertex index 0).
            std::vector<char> seen(static_cast<size_t>(n_), 0);
            for (int v = 0; v < n_; ++v) {
                if (comp[static_cast<size_t>(v)] != 0) continue;
                for (int w : adj_[static_cast<size_t>(v)]) {
                    if (comp[static_cast<size_t>(w)] == 0) continue;
                    for (int c : {v, w})
                        if (!seen[static_cast<size_t>(c)] && !excluded_[static_cast<size_t>(c)]) {
                            seen[static_cast<size_t>(c)] = 1;
                            branch_set->push_back(c);
                        }
                }
            }
            std::sort(branch_set->begin(), branch_set->end());
        }
        return false;
    }

    bool cds_connected(std::vector<int>* branch_set) {
        std::vector<int> ds;
        for (int v = 0; v < n_; ++v)
            if (chosen_[static_cast<size_t>(v)]) ds.push_back(v);
        if (ds.empty()) return n_ == 0;
        std::vector<char> in_c(static_cast<size_t>(n_), 0);
        std::vector<int> stack{ds.front()};
        in_c[static_cast<size_t>(ds.front())] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj_[static_cast<size_t>(v)])
                if (chosen_[static_cast<size_t>(w)] && !in_c[static_cast<size_t>(w)]) {
                    in_c[static_cast<size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
        bool all = true;
        for (int v : ds)
            if (!in_c[static_cast<size_t>(v)]) all = false;
        if (all) return true;
        if (branch_set) {
            std::vector<char> seen(static_cast<size_t>(n_), 0);
            for (int v = 0; v < n_; ++v) {
                if (!in_c[static_cast<size_t>(v)]) continue;
                for (int w : adj_[static_cast<size_t>(v)])
                    if (!chosen_[static_cast<size_t>(w)] && !excluded_[static_cast<size_t>(w)] &&
                        !seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        branch_set->push_back(w);
                    }
            }
            std::sort(branch_set->begin(), branch_set->end());
        }
        return false;
    }

    // Admissible lower bound on additional vertices: a packing of undominated
    // vertices with pairwise disjoint closed neighborhoods.
    int packing_bound(const std::vector<int>& undominated) {
        if (mark_.size() != static_cast<size_t>(n_)) mark_.assign(static_cast<size_t>(n_), 0);
        std::fill(mark_.begin(), mark_.end(), 0);
        int lb = 0;
        for (int u : undominated) {
            bool free = !mark_[static_cast<size_t>(u)];
            if (free)
                for (int w : adj_[static_cast<size_t>(u)])
                    if (mark_[static_cast<size_t>(w)]) {
                        free = false;
                        break;
                    }
            if (!free) continue;
            ++lb;
            mark_[static_cast<size_t>(u)] = 1;
            for (int w : adj_[static_cast<size_t>(u)]) mark_[static_cast<size_t>(w)] = 1;
        }
        return lb;
    }

    void include(int v, std::vector<int>* trail) {
        chosen_[static_cast<size_t>(v)] = 1;
        chosen_count_++;
        bump_dominators(v, +1);
        trail->push_back(v);
    }

    void undo_trail(std::vector<int>& trail) {
        for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
            chosen_[static_cast<size_t>(*it)] = 0;
            chosen_count_--;
            bump_dominators(*it, -1);
        }
        trail.clear();
    }

    void bump_dominators(int v, int delta) {
        dominators_[static_cast<size_t>(v)] += delta;
        for (int w : adj_[static_cast<size_t>(v)]) dominators_[static_cast<size_t>(w)] += delta;
    }

    void recurse(int depth) {
        ++nodes_;
        if (chosen_count_ >= best_size_) return;

        std::vector<int> undominated;
        for (int v = 0; v < n_; ++v)
            if (dominators_[static_cast<size_t>(v)] == 0) undominated.push_back(v);

        std::vector<int> forced_trail;
        // Unit propagation: an undominated vertex with a single available
        // dominator forces it in.
        bool changed = true;
        while (changed) {
            changed = false;
            for (int u : undominated) {
                if (dominators_[static_cast<size_t>(u)] > 0) continue;
                int cand = -1, count = 0;
                if (!excluded_[static_cast<size_t>(u)]) {
                    cand = u;
                    ++count;
                }
                for (int w : adj_[static_cast<size_t>(u)])
                    if (!excluded_[static_cast<size_t>(w)] && !chosen_[static_cast<size_t>(w)]) {
                        cand = w;
                        if (++count > 1) break;
                    }
                if (count == 0) {
                    undo_trail(forced_trail);
                    return; // u can never be dominated
                }
                if (count == 1 && !chosen_[static_cast<size_t>(cand)]) {
                    include(cand, &forced_trail);
                    if (chosen_count_ >= best_size_) {
                        undo_trail(forced_trail);
                        return;
                    }
                    changed = true;
                }
            }
        }

        undominated.clear();
        for (int v = 0; v < n_; ++v)
            if (dominators_[static_cast<size_t>(v)] == 0) undominated.push_back(v);

        if (!undominated.empty()) {
            if (chosen_count_ + packing_bound(undominated) >= best_size_) {
                undo_trail(forced_trail);
                return;
            }
            // Branch over the dominators of the most constrained vertex.
            int pick = -1;
            size_t pick_width = std::numeric_limits<size_t>::max();
            std::vector<int> cands, pick_cands;
            for (int u : undominated) {
                cands.clear();
                if (!excluded_[static_cast<size_t>(u)]) cands.push_back(u);
                for (int w : adj_[static_cast<size_t>(u)])
                    if (!excluded_[static_cast<size_t>(w)] && !chosen_[static_cast<size_t>(w)]) cands.push_back(w);
                if (cands.size() < pick_width) {
                    pick_width = cands.size();
                    pick = u;
                    pick_cands = cands;
                }
            }
            (void)pick;
            std::sort(pick_cands.begin(), pick_cands.end());
            std::vector<int> newly_excluded;
            for (int w : pick_cands) {
                std::vector<int> trail;
                include(w, &trail);
                recurse(depth + 1);
                undo_trail(trail);
                excluded_[static_cast<size_t>(w)] = 1;
                newly_excluded.push_back(w);
            }
            for (int w : newly_excluded) excluded_[static_cast<size_t>(w)] = 0;
            undo_trail(forced_trail);
            return;
        }

        // Everything dominated: check the mode's connectivity requirement.
        std::vector<int> branch_set;
        if (feasible_leaf(&branch_set)) {
            if (chosen_count_ < best_size_) {
                best_.clear();
                for (int v = 0; v < n_; ++v)
                    if (chosen_[static_cast<size_t>(v)]) best_.push_back(v);
                best_size_ = chosen_count_;
            }
            undo_trail(forced_trail);
            return;
        }
        if (chosen_count_ + 1 >= best_size_ || branch_set.empty()) {
            undo_trail(forced_trail);
            return;
        }
        std::vector<int> newly_excluded;
        for (int w : branch_set) {
            std::vector<int> trail;
            include(w, &trail);
            recurse(depth + 1);
            undo_trail(trail);
            excluded_[static_cast<size_t>(w)] = 1;
            newly_excluded.push_back(w);
        }
        for (int w : newly_excluded) excluded_[static_cast<size_t>(w)] = 0;
        undo_trail(forced_trail);
    }

    // A quick feasible solution so pruning bites early: greedy max-coverage
    // domination, then greedy repair of connectivity.
    std::vector<int> seed_incumbent() {
        std::vector<char> dom(static_cast<size_t>(n_), 0), in(static_cast<size_t>(n_), 0);
        std::vector<int> d;
        auto cover = [&](int v) {
            in[static_cast<size_t>(v)] = 1;
            dom[static_cast<size_t>(v)] = 1;
            for (int w : adj_[static_cast<size_t>(v)]) dom[static_cast<size_t>(w)] = 1;
            d.push_back(v);
        };
        for (;;) {
            int bestv = -1, bestc = 0;
            for (int v = 0; v < n_; ++v) {
                if (in[static_cast<size_t>(v)]) continue;
                int c = dom[static_cast<size_t>(v)] ? 0 : 1;
                for (int w : adj_[static_cast<size_t>(v)])
                    if (!dom[static_cast<size_t>(w)]) ++c;
                if (c > bestc) {
                    bestc = c;
                    bestv = v;
                }
            }
            if (bestv < 0) break;
            cover(bestv);
        }
        if (mode_ == Mode::Dominating) return d;
        // Repair connectivity greedily from the leaf branch sets.
        for (int guard = 0; guard < n_; ++guard) {
            for (int v : d) chosen_[static_cast<size_t>(v)] = 1;
            std::vector<int> branch_set;
            bool ok = feasible_leaf(&branch_set);
            for (int v : d) chosen_[static_cast<size_t>(v)] = 0;
            if (ok) break;
            if (branch_set.empty()) break;
            d.push_back(branch_set.front());
        }
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        return d;
    }

    const Graph& g_;
    Mode mode_;
    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<char> chosen_, excluded_, mark_;
    std::vector<int> dominators_; // count of chosen vertices in N[v]
    int chosen_count_ = 0;
    std::vector<int> best_;
    int best_size_ = 0;
    std::int64_t nodes_ = 0;
};

} // namespace

std::string solve_result_to_json(const SolveResult& r) {
    nlohmann::json j;
    j["set"] = r.optimum;
    j["cardinality"] = r.cardinality;
    j["method"] = r.method;
    j["stats"] = {{"nodes", r.stats.nodes}, {"subsets", r.stats.subsets}, {"seconds", r.stats.seconds}};
    return j.dump();
}

std::optional<SolveResult> brute_force_min_rcds(const Graph& g, std::optional<int> max_card) {
    if (!g.connected()) throw domain_error("brute_force_min_rcds assumes a connected graph");
    if (!max_card && g.n() > 20)
        throw domain_error("brute_force_min_rcds refuses " + std::to_string(g.n()) +
                           " vertices without a cardinality cap");
    auto t0 = Clock::now();
    const auto& ids = g.vertices();
    const int n = g.n();
    const int cap = max_card ? std::min(*max_card, n) : n;
    SolveStats stats;
    for (int k = 0; k <= cap; ++k) {
        std::vector<int> pick(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
        for (;;) {
            VertexSet d;
            d.reserve(static_cast<size_t>(k));
            for (int i : pick) d.push_back(ids[static_cast<size_t>(i)]);
            ++stats.subsets;
            if (is_rcds(g, d)) {
                SolveResult r;
                r.optimum = std::move(d);
                r.cardinality = k;
                r.method = "brute";
                r.stats = stats;
                r.stats.seconds = elapsed_since(t0);
                return r;
            }
            // next combination
            int i = k - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
        }
    }
    if (max_card) return std::nullopt;
    throw internal_error("brute_force_min_rcds: connected graph admits V itself as an RCDS");
}

SolveResult bnb_min_rcds(const Graph& g) {
    if (!g.connected()) throw domain_error("bnb_min_rcds assumes a connected graph");
    if (g.n() == 1) {
        SolveResult r;
        r.cardinality = 0;
        r.method = "bnb";
        return r;
    }
    Search s(g, Search::Mode::Rcds);
    SolveResult r = s.run();
    r.method = "bnb";
    return r;
}

SolveResult min_dominating_set(const Graph& g) {
    if (g.n() == 0) throw domain_error("min_dominating_set: empty graph");
    Search s(g, Search::Mode::Dominating);
    SolveResult r = s.run();
    r.method = "ds";
    return r;
}

SolveResult min_connected_dominating_set(const Graph& g) {
    if (!g.connected()) throw domain_error("min_connected_dominating_set assumes a connected graph");
    Search s(g, Search::Mode::ConnectedDominating);
    SolveResult r = s.run();
    r.method = "cds";
    return r;
}

} // namespace rcds
