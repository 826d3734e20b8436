#include "spancover/basic_solvers.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace spancover {

ElementSet lift_witness(const ReductionTrace& trace, ElementSet f) {
    for (const auto& step : trace.steps)
        if (step.rule == "zero" || step.rule == "zero*")
            f = set_union(f, step.elements);
    return normalized(std::move(f));
}

namespace {

int sat_add(int a, int b) { return (a >= kInf || b >= kInf) ? kInf : a + b; }

SolveResult verdict_result(Verdict v, const ReductionTrace& trace) {
    if (v == Verdict::No) return SolveResult::no();
    return SolveResult::found(0, lift_witness(trace, {}));
}

std::vector<DemandPair> demands_of(const Multigraph& g, const ElementSet& terminals) {
    std::vector<DemandPair> demands;
    for (const auto& t : terminals) {
        const GraphEdge& e = g.edge(t);
        demands.push_back(DemandPair{e.u, e.v});
    }
    return demands;
}

// Minimum-weight spanning set over nonterminal subsets of a small reduced instance.
SolveResult exhaustive_min(const Instance& red) {
    const BinaryMatroid& m = red.matroid;
    Mask tmask = red.terminal_mask();
    Mask candidates = m.ground_mask() & ~tmask;
    int best = red.k + 1;
    Mask best_f = 0;
    for (Mask f = 0;; f = (f - candidates) & candidates) {
        int fw = 0;
        for (Mask it = f; it; it &= it - 1) fw += red.weights.at(m.element(gf2::lowest_bit(it)));
        if (fw < best && m.spans(f, tmask)) {
            best = fw;
            best_f = f;
        }
        if (f == candidates) break;
    }
    if (best > red.k) return SolveResult::no();
    return SolveResult::found(best, m.ids_of(best_f));
}

// Shared scaffold for the graph solvers: given the preprocessed instance and its
// graph, compute the optimum, then pin the witness down by greedy edge deletion
// against the decision procedure. After the loop every surviving nonterminal edge
// belongs to every optimal solution, so the survivors are the witness.
template <typename OptFn, typename DecideFn>
SolveResult graph_solver_scaffold(const Instance& reduced, const Multigraph& graph,
                                  const ReductionTrace& trace, const ElementId* keep_free,
                                  OptFn opt_fn, DecideFn decide) {
    std::optional<int> opt = opt_fn(graph, reduced);
    if (!opt) return SolveResult::no();
    Multigraph cur = graph;
    ElementSet rest = set_difference(normalized(reduced.matroid.elements()), reduced.terminals);
    for (const auto& e : rest) {
        if (keep_free && e == *keep_free) continue;
        Multigraph cand = cur.with_edges_deleted({e});
        if (decide(cand, reduced, *opt)) cur = cand;
    }
    ElementSet witness = set_difference(cur.edge_ids(), reduced.terminals);
    if (keep_free && set_contains(witness, *keep_free)) {
        // The free element stays only when it is actually needed.
        Multigraph probe = cur.with_edges_deleted({*keep_free});
        if (decide(probe, reduced, *opt)) witness = set_difference(witness, {*keep_free});
    }
    if (weight_of(reduced.weights, witness) != *opt)
        throw std::logic_error("witness extraction lost the optimum");
    return SolveResult::found(*opt, lift_witness(trace, witness));
}

}  // namespace

SolveResult solve_r10(const Instance& inst) {
    PreprocessResult pre = preprocess(inst);
    if (pre.verdict) return verdict_result(*pre.verdict, pre.trace);
    if (pre.instance->matroid.size() > 20)
        throw std::length_error("reduced instance exceeds the R10-derived bound of 20 elements");
    SolveResult r = exhaustive_min(*pre.instance);
    if (r.yes) r.witness = lift_witness(pre.trace, *r.witness);
    return r;
}

SolveResult solve_exhaustive(const Instance& inst, int ground_cap) {
    PreprocessResult pre = preprocess(inst);
    if (pre.verdict) return verdict_result(*pre.verdict, pre.trace);
    if (pre.instance->matroid.size() > ground_cap)
        throw std::length_error("exhaustive solver cap exceeded");
    SolveResult r = exhaustive_min(*pre.instance);
    if (r.yes) r.witness = lift_witness(pre.trace, *r.witness);
    return r;
}

std::optional<int> graphic_opt(const Multigraph& g, const WeightMap& w,
                               const ElementSet& terminals, int k) {
    Instance inst{g.cycle_matroid(), w, normalized(terminals), k};
    PreprocessResult pre = preprocess(inst);
    if (pre.verdict) {
        if (*pre.verdict == Verdict::No) return std::nullopt;
        return 0;
    }
    Multigraph rg = replay_trace_on_graph(g, pre.trace, GraphKind::Graphic);
    Multigraph rest = rg.with_edges_deleted(pre.instance->terminals);
    int wt = steiner_forest_weight(rest, pre.instance->weights,
                                   demands_of(rg, pre.instance->terminals), pre.instance->k);
    if (wt > pre.instance->k) return std::nullopt;
    return wt;
}

bool decide_graphic(const Multigraph& g, const WeightMap& w, const ElementSet& terminals, int k) {
    return graphic_opt(g, w, terminals, k).has_value();
}

SolveResult solve_graphic(const Instance& inst, const Multigraph& g) {
    PreprocessResult pre = preprocess(inst);
    if (pre.verdict) return verdict_result(*pre.verdict, pre.trace);
    const Instance& red = *pre.instance;
    Multigraph rg = replay_trace_on_graph(g, pre.trace, GraphKind::Graphic);
    auto forest = [](const Multigraph& graph, const Instance& r, int budget) {
        Multigraph rest = graph.with_edges_deleted(r.terminals);
        return steiner_forest_weight(rest, r.weights, demands_of(graph, r.terminals), budget);
    };
    auto opt_fn = [&](const Multigraph& graph, const Instance& r) -> std::optional<int> {
        int w = forest(graph, r, r.k);
        if (w > r.k) return std::nullopt;
        return w;
    };
    auto decide = [&](const Multigraph& graph, const Instance& r, int budget) {
        return forest(graph, r, budget) <= budget;
    };
    return graph_solver_scaffold(red, rg, pre.trace, nullptr, opt_fn, decide);
}

namespace {

// Minimum weight of an edge set of g - T connecting every demand group where the
// tree covering the group of t* = x1y1 must route x1 to y1 avoiding e*.
int restricted_forest_weight(const Multigraph& g, const WeightMap& w,
                             const ElementSet& terminals, int k, const ElementId& estar,
                             const VertexId& x1, const VertexId& y1) {
    std::vector<DemandPair> demands = demands_of(g, terminals);
    Multigraph rest = g.with_edges_deleted(terminals);

    Multigraph h;
    for (size_t i = 0; i < demands.size(); ++i)
        h.add_edge("d" + std::to_string(i), demands[i].x, demands[i].y);
    auto comp = h.components();
    int t = 0;
    for (const auto& [v, c] : comp) t = std::max(t, c + 1);
    std::vector<VertexSet> groups(t);
    size_t total = 0;
    for (const auto& [v, c] : comp) {
        groups[c].insert(v);
        ++total;
    }
    // Only e* may carry weight zero, so solutions have at most k+1 edges.
    if (total > static_cast<size_t>(k + 1 + t) || t > k + 1) return kInf;
    int special = comp.count(x1) ? comp.at(x1) : -1;
    if (special < 0) throw std::logic_error("t* endpoints missing from demand graph");

    VertexSet endpoints;
    for (const auto& grp : groups) endpoints.insert(grp.begin(), grp.end());
    for (const auto& v : endpoints)
        if (!g.has_vertex(v)) return kInf;
    std::vector<VertexId> plist(endpoints.begin(), endpoints.end());

    SteinerTable plain(rest, w, plist);
    RestrictedSteinerTable guarded(rest, w, plist, x1, y1, estar, k + 1);

    std::vector<Mask> group_mask(t);
    for (int i = 0; i < t; ++i) group_mask[i] = plain.terminal_mask(groups[i]);

    size_t nsets = size_t{1} << t;
    std::vector<int> big_w(nsets, kInf);
    for (Mask i = 1; i < nsets; ++i) {
        Mask verts = 0;
        int nverts = 0;
        for (int j = 0; j < t; ++j)
            if ((i >> j) & 1) {
                verts |= group_mask[j];
                nverts += static_cast<int>(groups[j].size());
            }
        if (nverts > k + 2) continue;  // any such tree already costs more than k
        int wt = ((i >> special) & 1) ? guarded.tree_weight(verts) : plain.tree_weight(verts);
        big_w[i] = wt > k ? kInf : wt;
    }
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

}  // namespace

SolveResult solve_graphic_restricted(const RestrictedInstance& inst, const Multigraph& g) {
    RestrictedPreprocessResult pre = preprocess_restricted(inst);
    if (pre.verdict) return verdict_result(*pre.verdict, pre.trace);
    Multigraph rg = replay_trace_on_graph(g, pre.trace, GraphKind::Graphic);
    if (pre.demoted) {
        SolveResult r = solve_graphic(*pre.demoted, rg);
        if (r.yes) r.witness = lift_witness(pre.trace, *r.witness);
        return r;
    }
    const RestrictedInstance& red = *pre.restricted;
    const GraphEdge& tedge = rg.edge(red.tstar);
    VertexId x1 = tedge.u, y1 = tedge.v;
    auto opt_fn = [&](const Multigraph& graph, const Instance& r) -> std::optional<int> {
        int w = restricted_forest_weight(graph, r.weights, r.terminals, r.k, red.estar, x1, y1);
        if (w > r.k) return std::nullopt;
        return w;
    };
    auto decide = [&](const Multigraph& graph, const Instance& r, int budget) {
        return restricted_forest_weight(graph, r.weights, r.terminals, budget, red.estar, x1,
                                        y1) <= budget;
    };
    return graph_solver_scaffold(red.base, rg, pre.trace, &red.estar, opt_fn, decide);
}

std::optional<int> graphic_restricted_opt(const Multigraph& g, const WeightMap& w,
                                          const ElementSet& terminals, int k,
                                          const ElementId& estar, const ElementId& tstar) {
    RestrictedInstance inst{Instance{g.cycle_matroid(), w, normalized(terminals), k}, estar,
                            tstar};
    RestrictedPreprocessResult pre = preprocess_restricted(inst);
    if (pre.verdict) {
        if (*pre.verdict == Verdict::No) return std::nullopt;
        return 0;
    }
    Multigraph rg = replay_trace_on_graph(g, pre.trace, GraphKind::Graphic);
    if (pre.demoted)
        return graphic_opt(rg, pre.demoted->weights, pre.demoted->terminals, pre.demoted->k);
    const RestrictedInstance& red = *pre.restricted;
    const GraphEdge& tedge = rg.edge(red.tstar);
    int wt = restricted_forest_weight(rg, red.base.weights, red.base.terminals, red.base.k,
                                      red.estar, tedge.u, tedge.v);
    if (wt > red.base.k) return std::nullopt;
    return wt;
}

bool decide_graphic_restricted(const Multigraph& g, const WeightMap& w,
                               const ElementSet& terminals, int k, const ElementId& estar,
                               const ElementId& tstar) {
    return graphic_restricted_opt(g, w, terminals, k, estar, tstar).has_value();
}

SolveResult solve_subset_feedback(const BinaryMatroid& m, const ElementSet& terminals, int k) {
    if (m.size() > 20) throw std::length_error("subset feedback cap exceeded");
    Mask tmask = m.mask_of(terminals);
    Mask candidates = m.ground_mask() & ~tmask;
    // An element lies in no circuit iff it is a coloop, i.e. dropping it lowers rank.
    auto terminals_circuit_free = [&](Mask f) {
        BinaryMatroid rest = m.deleted(f);
        int full = rest.rank();
        for (const auto& t : terminals) {
            Mask without = rest.ground_mask() & ~gf2::bit(rest.index_of(t));
            if (rest.rank(without) != full - 1) return false;
        }
        return true;
    };
    int best = k + 1;
    Mask best_f = 0;
    for (Mask f = 0;; f = (f - candidates) & candidates) {
        int sz = gf2::popcount(f);
        if (sz < best && terminals_circuit_free(f)) {
            best = sz;
            best_f = f;
        }
        if (f == candidates) break;
    }
    if (best > k) return SolveResult::no();
    return SolveResult::found(best, m.ids_of(best_f));
}

SolveResult solve_rsfs(const BinaryMatroid& m, const WeightMap& w, const ElementSet& terminals,
                       int k) {
    Instance dual{m.dualized(), w, normalized(terminals), k};
    return solve_exhaustive(dual);
}

}  // namespace spancover
