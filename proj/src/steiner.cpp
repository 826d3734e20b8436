#include "spancover/steiner.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spancover {

namespace {

int sat_add(int a, int b) { return (a >= kInf || b >= kInf) ? kInf : a + b; }

struct Adj {
    std::vector<VertexId> verts;
    std::map<VertexId, int> pos;
    // arcs[u] = (v, weight, edge id); parallel edges collapsed to the cheapest except
    // where edge identity matters (the restricted table keeps them apart).
    std::vector<std::vector<std::tuple<int, int, ElementId>>> arcs;

    Adj(const Multigraph& g, const WeightMap& w, bool collapse_parallel) {
        verts.assign(g.vertices().begin(), g.vertices().end());
        for (int i = 0; i < static_cast<int>(verts.size()); ++i) pos[verts[i]] = i;
        arcs.resize(verts.size());
        std::map<std::pair<int, int>, std::pair<int, ElementId>> best;
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            int u = pos[e.u], v = pos[e.v];
            int wt = w.at(e.id);
            if (collapse_parallel) {
                auto key = std::minmax(u, v);
                auto it = best.find({key.first, key.second});
                if (it == best.end() || wt < it->second.first)
                    best[{key.first, key.second}] = {wt, e.id};
            } else {
                arcs[u].push_back({v, wt, e.id});
                arcs[v].push_back({u, wt, e.id});
            }
        }
        for (const auto& [key, val] : best) {
            arcs[key.first].push_back({key.second, val.first, val.second});
            arcs[key.second].push_back({key.first, val.first, val.second});
        }
    }
};

}  // namespace

SteinerTable::SteinerTable(const Multigraph& g, const WeightMap& w,
                           std::vector<VertexId> terminals)
    : terms_(std::move(terminals)) {
    if (terms_.size() > 12) throw std::length_error("steiner terminal set too large");
    Adj adj(g, w, true);
    verts_ = adj.verts;
    int n = static_cast<int>(verts_.size());
    for (const auto& t : terms_)
        if (!adj.pos.count(t)) throw std::invalid_argument("steiner terminal not in graph: " + t);
    size_t nsets = size_t{1} << terms_.size();
    dp_.assign(nsets, std::vector<int>(std::max(n, 1), kInf));

    auto relax = [&](std::vector<int>& row) {
        // Bellman-Ford style closure; weights are nonnegative and graphs tiny.
        for (bool changed = true; changed;) {
            changed = false;
            for (int u = 0; u < n; ++u)
                for (const auto& [v, wt, id] : adj.arcs[u]) {
                    int cand = sat_add(row[u], wt);
                    if (cand < row[v]) {
                        row[v] = cand;
                        changed = true;
                    }
                }
        }
    };

    for (Mask x = 1; x < nsets; ++x) {
        auto& row = dp_[x];
        if ((x & (x - 1)) == 0) {
            row[adj.pos[terms_[gf2::lowest_bit(x)]]] = 0;
        } else {
            for (Mask y = (x - 1) & x; y; y = (y - 1) & x) {
                if (y > (x ^ y)) continue;  // each split once
                const auto& a = dp_[y];
                const auto& b = dp_[x ^ y];
                for (int v = 0; v < n; ++v) {
                    int cand = sat_add(a[v], b[v]);
                    if (cand < row[v]) row[v] = cand;
                }
            }
        }
        relax(row);
    }
}

Mask SteinerTable::terminal_mask(const VertexSet& vs) const {
    Mask m = 0;
    for (int i = 0; i < terminal_count(); ++i)
        if (vs.count(terms_[i])) m |= gf2::bit(i);
    return m;
}

int SteinerTable::tree_weight(Mask x) const {
    if (x == 0) return 0;
    int best = kInf;
    for (int v : dp_[x]) best = std::min(best, v);
    return best;
}

RestrictedSteinerTable::RestrictedSteinerTable(const Multigraph& g, const WeightMap& w,
                                               std::vector<VertexId> terminals,
                                               const VertexId& x1, const VertexId& y1,
                                               const ElementId& forbidden, int max_edges)
    : terms_(std::move(terminals)), levels_(max_edges + 1) {
    if (terms_.size() > 12) throw std::length_error("steiner terminal set too large");
    Adj adj(g, w, false);
    verts_ = adj.verts;
    int n = static_cast<int>(verts_.size());
    int p = static_cast<int>(terms_.size());
    size_t nsets = size_t{1} << p;
    Mask special = 0;  // positions of x1 / y1 inside the terminal list
    std::map<VertexId, int> tpos;
    for (int i = 0; i < p; ++i) tpos[terms_[i]] = i;
    if (tpos.count(x1)) special |= gf2::bit(tpos[x1]);
    if (tpos.count(y1)) special |= gf2::bit(tpos[y1]);

    c_.assign(levels_, std::vector<std::vector<int>>(nsets, std::vector<int>(std::max(n, 1), kInf)));
    for (int i = 0; i < p; ++i) {
        if (!adj.pos.count(terms_[i]))
            throw std::invalid_argument("steiner terminal not in graph: " + terms_[i]);
        c_[0][gf2::bit(i)][adj.pos[terms_[i]]] = 0;
    }

    for (int l = 1; l < levels_; ++l) {
        for (Mask x = 1; x < nsets; ++x) {
            auto& row = c_[l][x];
            row = c_[l - 1][x];
            // Grow: attach one edge at the root.
            for (int u = 0; u < n; ++u)
                for (const auto& [v, wt, id] : adj.arcs[u]) {
                    if (id == forbidden && gf2::popcount(x & special) == 1) continue;
                    int cand = sat_add(c_[l - 1][x][v], wt);
                    if (cand < row[u]) row[u] = cand;
                }
            // Merge: a subtree owning the terminals Y hangs off the root through one
            // edge; the root side keeps X \ Y. All-in-one-branch is the grow case.
            for (Mask y = (x - 1) & x; y; y = (y - 1) & x) {
                Mask rest = x ^ y;
                for (int l2 = 0; l2 + 1 <= l; ++l2) {
                    int l1 = l - 1 - l2;
                    for (int u = 0; u < n; ++u) {
                        int base = c_[l1][rest][u];
                        if (base >= kInf) continue;
                        for (const auto& [v, wt, id] : adj.arcs[u]) {
                            if (id == forbidden && gf2::popcount(y & special) == 1) continue;
                            int cand = sat_add(sat_add(base, wt), c_[l2][y][v]);
                            if (cand < row[u]) row[u] = cand;
                        }
                    }
                }
            }
        }
    }
}

Mask RestrictedSteinerTable::terminal_mask(const VertexSet& vs) const {
    Mask m = 0;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (vs.count(terms_[i])) m |= gf2::bit(static_cast<int>(i));
    return m;
}

int RestrictedSteinerTable::tree_weight(Mask x) const {
    if (x == 0) return 0;
    int best = kInf;
    for (int v : c_[levels_ - 1][x]) best = std::min(best, v);
    return best;
}

int steiner_tree_weight(const Multigraph& g, const WeightMap& w, const VertexSet& s) {
    if (s.empty()) return 0;
    SteinerTable table(g, w, std::vector<VertexId>(s.begin(), s.end()));
    return table.tree_weight(gf2::full_mask(static_cast<int>(s.size())));
}

int steiner_forest_weight(const Multigraph& g, const WeightMap& w,
                          const std::vector<DemandPair>& demands, int k) {
    if (demands.empty()) return 0;
    // Components of the demand graph must each live in one tree of the forest.
    Multigraph h;
    for (size_t i = 0; i < demands.size(); ++i) {
        if (demands[i].x == demands[i].y) throw std::invalid_argument("degenerate demand pair");
        h.add_edge("d" + std::to_string(i), demands[i].x, demands[i].y);
    }
    auto comp = h.components();
    int t = 0;
    for (const auto& [v, c] : comp) t = std::max(t, c + 1);
    std::vector<VertexSet> groups(t);
    size_t total = 0;
    for (const auto& [v, c] : comp) {
        groups[c].insert(v);
        ++total;
    }
    // Feasible solutions have at most k unit-or-heavier edges, hence at most k + t
    // endpoint vertices overall and at most k trees.
    if (total > static_cast<size_t>(k + t) || t > k) return kInf;

    VertexSet endpoints;
    for (const auto& grp : groups) endpoints.insert(grp.begin(), grp.end());
    for (const auto& v : endpoints)
        if (!g.has_vertex(v)) return kInf;
    SteinerTable table(g, w, std::vector<VertexId>(endpoints.begin(), endpoints.end()));

    std::vector<Mask> group_mask(t);
    for (int i = 0; i < t; ++i) group_mask[i] = table.terminal_mask(groups[i]);

    // W(I): one tree covering the groups in I, clamped to the budget.
    size_t nsets = size_t{1} << t;
    std::vector<int> big_w(nsets, kInf);
    for (Mask i = 1; i < nsets; ++i) {
        Mask verts = 0;
        for (int j = 0; j < t; ++j)
            if ((i >> j) & 1) verts |= group_mask[j];
        int wt = table.tree_weight(verts);
        big_w[i] = wt > k ? kInf : wt;
    }
    // W'(J): forest for the groups in J; take one tree (the groups I) out at a time.
    std::vector<int> forest(nsets, kInf);
    forest[0] = 0;
    for (Mask j = 1; j < nsets; ++j) {
        for (Mask i = j; i; i = (i - 1) & j) {
            int cand = sat_add(forest[j ^ i], big_w[i]);
            if (cand < forest[j]) forest[j] = cand;
        }
        if (forest[j] > k) forest[j] = kInf;
    }
    return forest[nsets - 1];
}

SolveResult steiner_forest(const Multigraph& g, const WeightMap& w,
                           const std::vector<DemandPair>& demands, int k) {
    int opt = steiner_forest_weight(g, w, demands, k);
    if (opt > k) return SolveResult::no();
    Multigraph cur = g;
    for (const auto& e : g.edge_ids()) {
        Multigraph cand = cur.with_edges_deleted({e});
        if (steiner_forest_weight(cand, w, demands, opt) <= opt) cur = cand;
    }
    ElementSet witness = cur.edge_ids();
    if (weight_of(w, witness) != opt)
        throw std::logic_error("witness extraction lost the optimum");
    return SolveResult::found(opt, std::move(witness));
}

}  // namespace spancover
