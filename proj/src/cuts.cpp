#include "spancover/cuts.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <stdexcept>

#include "spancover/basic_solvers.hpp"

namespace spancover {

bool is_interesting_set(const Multigraph& g, const VertexId& s, const VertexSet& terminals,
                        const VertexSet& w) {
    if (!w.count(s)) return false;
    int inside = 0;
    for (const auto& t : terminals)
        if (w.count(t)) ++inside;
    if (inside > 1) return false;
    Multigraph sub = g.induced(w);
    return sub.num_vertices() == static_cast<int>(w.size()) && sub.connected();
}

bool set_preferred(const Multigraph& g, const VertexSet& terminals, const VertexSet& w2,
                   const VertexSet& w1) {
    if (!std::includes(w1.begin(), w1.end(), w2.begin(), w2.end())) return false;
    if (g.delta(w1).size() > g.delta(w2).size()) return false;
    for (const auto& t : terminals)
        if (w1.count(t) && !w2.count(t)) return false;
    return true;
}

namespace {

// Unit-capacity max flow between vertex sets on a multigraph; every non-loop edge is
// one undirected capacity unit.
struct FlowNet {
    std::vector<VertexId> verts;
    std::map<VertexId, int> pos;
    struct Arc {
        int to;
        int cap;
        int rev;  // index of the reverse arc in arcs[to]
    };
    std::vector<std::vector<Arc>> arcs;

    explicit FlowNet(const Multigraph& g) {
        verts.assign(g.vertices().begin(), g.vertices().end());
        for (int i = 0; i < static_cast<int>(verts.size()); ++i) pos[verts[i]] = i;
        arcs.resize(verts.size());
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            int u = pos[e.u], v = pos[e.v];
            arcs[u].push_back(Arc{v, 1, static_cast<int>(arcs[v].size())});
            arcs[v].push_back(Arc{u, 1, static_cast<int>(arcs[u].size()) - 1});
        }
    }

    // Augment one unit from sources to sinks along a BFS path; false when saturated.
    bool augment(const std::vector<char>& is_source, const std::vector<char>& is_sink) {
        std::vector<std::pair<int, int>> par(verts.size(), {-1, -1});
        std::vector<char> seen(verts.size(), 0);
        std::vector<int> queue;
        for (int i = 0; i < static_cast<int>(verts.size()); ++i)
            if (is_source[i]) {
                seen[i] = 1;
                queue.push_back(i);
            }
        int found = -1;
        for (size_t qi = 0; qi < queue.size() && found < 0; ++qi) {
            int u = queue[qi];
            if (is_sink[u]) {
                found = u;
                break;
            }
            for (int ai = 0; ai < static_cast<int>(arcs[u].size()); ++ai) {
                const Arc& a = arcs[u][ai];
                if (a.cap <= 0 || seen[a.to]) continue;
                seen[a.to] = 1;
                par[a.to] = {u, ai};
                if (is_sink[a.to]) {
                    found = a.to;
                    break;
                }
                queue.push_back(a.to);
            }
        }
        if (found < 0) return false;
        int v = found;
        while (par[v].first >= 0) {
            auto [u, ai] = par[v];
            Arc& fwd = arcs[u][ai];
            fwd.cap -= 1;
            arcs[fwd.to][fwd.rev].cap += 1;
            v = u;
        }
        return true;
    }

    std::vector<char> flag(const VertexSet& vs) const {
        std::vector<char> f(verts.size(), 0);
        for (const auto& v : vs) {
            auto it = pos.find(v);
            if (it != pos.end()) f[it->second] = 1;
        }
        return f;
    }

    VertexSet residual_reachable(const std::vector<char>& is_source) const {
        std::vector<char> seen = is_source;
        std::vector<int> queue;
        for (int i = 0; i < static_cast<int>(verts.size()); ++i)
            if (seen[i]) queue.push_back(i);
        for (size_t qi = 0; qi < queue.size(); ++qi)
            for (const Arc& a : arcs[queue[qi]])
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = 1;
                    queue.push_back(a.to);
                }
        VertexSet out;
        for (int i = 0; i < static_cast<int>(verts.size()); ++i)
            if (seen[i]) out.insert(verts[i]);
        return out;
    }

    VertexSet residual_coreachable(const std::vector<char>& is_sink) const {
        std::vector<char> seen = is_sink;
        std::vector<int> queue;
        for (int i = 0; i < static_cast<int>(verts.size()); ++i)
            if (seen[i]) queue.push_back(i);
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int u = 0; u < static_cast<int>(verts.size()); ++u)
                for (const Arc& a : arcs[u])
                    if (a.to == v && a.cap > 0 && !seen[u]) {
                        seen[u] = 1;
                        queue.push_back(u);
                    }
        }
        VertexSet out;
        for (int i = 0; i < static_cast<int>(verts.size()); ++i)
            if (seen[i]) out.insert(verts[i]);
        return out;
    }
};

struct MinCutInfo {
    int value = 0;
    VertexSet max_source_side;  // largest source side among minimum cuts
};

MinCutInfo min_cut(const Multigraph& g, const VertexSet& x, const VertexSet& y, int stop_above) {
    FlowNet net(g);
    auto src = net.flag(x), snk = net.flag(y);
    MinCutInfo info;
    while (info.value <= stop_above && net.augment(src, snk)) ++info.value;
    if (info.value > stop_above) return info;
    VertexSet to_sink = net.residual_coreachable(snk);
    for (const auto& v : g.vertices())
        if (!to_sink.count(v)) info.max_source_side.insert(v);
    return info;
}

struct CutEnumerator {
    const Multigraph& base;
    VertexSet y;
    std::set<ElementSet> candidates;

    void run(const Multigraph& g, VertexSet x, int budget, ElementSet chosen) {
        for (const auto& v : y)
            if (x.count(v)) return;
        MinCutInfo mc = min_cut(g, x, y, budget);
        if (mc.value > budget) return;
        const VertexSet& r = mc.max_source_side;
        ElementSet delta = g.delta(r);
        if (delta.empty()) {
            candidates.insert(chosen);
            return;
        }
        const GraphEdge& e = g.edge(delta.front());
        VertexId far = r.count(e.u) ? e.v : e.u;
        // Branch 1: the edge joins the cut.
        run(g.with_edges_deleted({e.id}), r, budget - 1, set_union(chosen, {e.id}));
        // Branch 2: the far endpoint joins the source side.
        VertexSet x2 = r;
        x2.insert(far);
        run(g, std::move(x2), budget, std::move(chosen));
    }
};

}  // namespace

std::vector<ImportantCut> enumerate_important_cuts(const Multigraph& g, const VertexSet& x,
                                                   const VertexSet& y, int k) {
    for (const auto& v : x)
        if (y.count(v)) throw std::invalid_argument("important cuts need disjoint X and Y");
    CutEnumerator en{g, y, {}};
    en.run(g, x, std::max(k, 0), {});

    std::vector<ImportantCut> out;
    for (const ElementSet& s : en.candidates) {
        if (static_cast<int>(s.size()) > k) continue;
        VertexSet r = g.reachable_from(x, s);
        if (g.delta(r) != s) continue;  // not an exact minimal cut
        bool touches_y = false;
        for (const auto& v : y) touches_y |= r.count(v) > 0;
        if (touches_y) continue;
        // Important iff s is a minimum (R,Y)-cut and the reachable side of the
        // maximal minimum cut adds nothing beyond R.
        MinCutInfo mc = min_cut(g, r, y, static_cast<int>(s.size()));
        if (mc.value != static_cast<int>(s.size())) continue;
        VertexSet canonical = g.reachable_from(x, g.delta(mc.max_source_side));
        if (canonical != r) continue;
        out.push_back(ImportantCut{s, std::move(r)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SemiImportantSet> enumerate_semi_important(const Multigraph& g, const VertexId& s,
                                                       const VertexSet& terminals, int k) {
    if (terminals.count(s)) throw std::invalid_argument("s must not be a terminal");
    std::set<VertexSet> cand;

    // Sets free of terminals come from important (s,T)-cuts of the graph itself.
    for (const auto& c : enumerate_important_cuts(g, {s}, terminals, k)) cand.insert(c.side);

    // Sets holding one terminal: important (s,sink)-cuts of the sink gadget, where each
    // terminal hangs on k+1 pendant spokes and each spoke reaches the sink by 2k+3
    // two-edge paths, so no budget-bounded cut can enter the gadget.
    {
        Multigraph aux = g;
        VertexId sink = "__sink";
        aux.add_vertex(sink);
        int serial = 0;
        for (const auto& t : terminals) {
            for (int i = 0; i <= k; ++i) {
                VertexId a = "__a" + std::to_string(serial++);
                aux.add_edge("__e" + std::to_string(serial++), t, a);
                for (int j = 0; j < 2 * k + 3; ++j) {
                    VertexId b = "__b" + std::to_string(serial++);
                    aux.add_edge("__e" + std::to_string(serial++), a, b);
                    aux.add_edge("__e" + std::to_string(serial++), b, sink);
                }
            }
        }
        for (const auto& c : enumerate_important_cuts(aux, {s}, {sink}, 2 * k + 1)) {
            VertexSet w;
            for (const auto& v : c.side)
                if (g.has_vertex(v)) w.insert(v);
            cand.insert(std::move(w));
        }
    }

    // Keep interesting sets within budget, then drop anything another candidate beats.
    // Every maximal dominator is itself semi-important, hence also a candidate, so the
    // pairwise filter is exact.
    std::vector<VertexSet> pool;
    for (const auto& w : cand)
        if (is_interesting_set(g, s, terminals, w) &&
            static_cast<int>(g.delta(w).size()) <= k)
            pool.push_back(w);
    std::vector<SemiImportantSet> out;
    for (const auto& w : pool) {
        bool beaten = false;
        for (const auto& w1 : pool)
            if (w1 != w && set_preferred(g, terminals, w, w1)) {
                beaten = true;
                break;
            }
        if (!beaten) out.push_back(SemiImportantSet{w, g.delta(w)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// State of the branching solver on the unit multigraph. Terminal edges stay single;
// every other edge appears once per weight unit (capped at k+1 copies).
struct CgmState {
    Multigraph g;
    ElementSet terminals;
    int k = 0;
    VertexSet z;
    // Restricted bits: while t* is unresolved the e* copies are uncuttable and the
    // guessing step avoids its endpoints.
    bool restricted = false;
    ElementId tstar;
    VertexId p, q;
    ElementSet estar_copies;
    bool tstar_active = false;
};

VertexSet terminal_endpoints(const CgmState& st) {
    VertexSet q;
    for (const auto& t : st.terminals) {
        const GraphEdge& e = st.g.edge(t);
        q.insert(e.u);
        q.insert(e.v);
    }
    return q;
}

int terminal_degree(const CgmState& st, const VertexId& v) {
    int d = 0;
    for (const auto& t : st.terminals) {
        const GraphEdge& e = st.g.edge(t);
        if (e.u == v || e.v == v) ++d;
    }
    return d;
}

// Contract terminal edges that already form whole cut-sets, with the bookkeeping
// that keeps z tracking endpoint vertices through merges.
void cgm_normalize(CgmState& st) {
    while (true) {
        auto cut = st.g.minimal_cutset_within(st.terminals);
        if (!cut) {
            // Once t* is spanned its free element may safely join the solution,
            // which for a bond matroid means deleting the edge copies; that can
            // expose new all-terminal cut-sets, so keep going.
            if (st.restricted && !st.tstar_active && !st.estar_copies.empty()) {
                st.g = st.g.with_edges_deleted(st.estar_copies);
                st.estar_copies.clear();
                continue;
            }
            break;
        }
        ElementSet r = *cut;
        ElementId xy = r.front();
        if (st.restricted && st.tstar_active) {
            ElementSet non_tstar = set_difference(r, {st.tstar});
            xy = non_tstar.empty() ? st.tstar : non_tstar.front();
        }
        const GraphEdge e = st.g.edge(xy);
        VertexId x = e.u, y = e.v;
        bool x_in = st.z.count(x) > 0, y_in = st.z.count(y) > 0;
        bool x_one = terminal_degree(st, x) == 1, y_one = terminal_degree(st, y) == 1;
        st.g = st.g.with_edge_contracted(xy);
        st.terminals = set_difference(st.terminals, {xy});
        VertexId merged = std::min(x, y);
        if (st.restricted) {
            if (st.p == x || st.p == y) st.p = merged;
            if (st.q == x || st.q == y) st.q = merged;
            if (xy == st.tstar) st.tstar_active = false;
        }
        st.z.erase(x);
        st.z.erase(y);
        if (x_in && y_in && !(x_one && y_one)) st.z.insert(merged);
    }
}

bool cgm_decide(CgmState st) {
    cgm_normalize(st);
    if (st.terminals.empty()) return true;
    if (st.k <= 0) return false;
    // While the free element is live, one terminal can ride its cut for nothing.
    int terminal_budget = st.restricted && st.tstar_active ? st.k + 1 : st.k;
    if (static_cast<int>(st.terminals.size()) > terminal_budget) return false;
    for (const auto& t : st.terminals)
        if (st.g.edge(t).is_loop()) return false;  // a loop lies in no cut-set

    VertexSet q = terminal_endpoints(st);
    st.z = [&] {
        VertexSet zz;
        for (const auto& v : st.z)
            if (q.count(v)) zz.insert(v);
        return zz;
    }();

    if (!st.z.empty()) {
        VertexId s = *st.z.begin();
        VertexSet y;
        for (const auto& v : q)
            if (v != s) y.insert(v);
        if (st.restricted && st.tstar_active) {
            y.insert(st.p);
            y.insert(st.q);
            y.erase(s);
        }
        Multigraph rest = st.g.with_edges_deleted(st.terminals);
        for (const auto& w : enumerate_semi_important(rest, s, y, st.k)) {
            if (w.boundary.empty()) continue;  // no progress; cannot be part of a solution here
            CgmState next = st;
            next.g = st.g.with_edges_deleted(w.boundary);
            next.k = st.k - static_cast<int>(w.boundary.size());
            next.z.erase(s);
            next.estar_copies = set_difference(next.estar_copies, w.boundary);
            if (cgm_decide(std::move(next))) return true;
        }
        return false;
    }

    // Guess the endpoint set living in low-degree components of the solution forest.
    std::vector<VertexId> pool;
    for (const auto& v : q) {
        if (terminal_degree(st, v) >= 3) continue;
        if (st.restricted && st.tstar_active && (v == st.p || v == st.q)) continue;
        pool.push_back(v);
    }
    int need_twice = static_cast<int>(st.terminals.size()) - (st.restricted ? 4 : 0);
    int n = static_cast<int>(pool.size());
    for (unsigned long long bits = 1; bits < (1ull << n); ++bits) {
        if (2 * gf2::popcount(bits) < need_twice) continue;
        CgmState next = st;
        next.z.clear();
        for (int i = 0; i < n; ++i)
            if ((bits >> i) & 1) next.z.insert(pool[i]);
        if (cgm_decide(std::move(next))) return true;
    }
    return false;
}

// Builds the unit multigraph: nonterminal weights become parallel copies.
CgmState unit_state(const Multigraph& g, const WeightMap& w, const ElementSet& terminals, int k,
                    const ElementId* estar) {
    CgmState st;
    st.terminals = terminals;
    st.k = k;
    for (const auto& v : g.vertices()) st.g.add_vertex(v);
    for (const auto& e : g.edges()) {
        if (set_contains(terminals, e.id)) {
            st.g.add_edge(e.id, e.u, e.v);
            continue;
        }
        if (e.is_loop()) continue;  // loops lie in no cut-set, so never in a solution
        bool special = estar && e.id == *estar;
        int copies = special ? k + 1 : std::min(w.at(e.id), k + 1);
        for (int c = 0; c < copies; ++c) {
            ElementId cid = e.id + "#" + std::to_string(c);
            st.g.add_edge(cid, e.u, e.v);
            if (special) st.estar_copies.push_back(cid);
        }
    }
    st.estar_copies = normalized(std::move(st.estar_copies));
    return st;
}

}  // namespace

bool decide_cographic(const Multigraph& g, const WeightMap& w, const ElementSet& terminals,
                      int k) {
    Instance inst{g.bond_matroid(), w, normalized(terminals), k};
    PreprocessResult pre = preprocess(inst);
    if (pre.verdict) return *pre.verdict == Verdict::Yes;
    Multigraph rg = replay_trace_on_graph(g, pre.trace, GraphKind::Cographic);
    CgmState st = unit_state(rg, pre.instance->weights, pre.instance->terminals,
                             pre.instance->k, nullptr);
    return cgm_decide(std::move(st));
}

bool decide_cographic_restricted(const Multigraph& g, const WeightMap& w,
                                 const ElementSet& terminals, int k, const ElementId& estar,
                                 const ElementId& tstar) {
    RestrictedInstance inst{Instance{g.bond_matroid(), w, normalized(terminals), k}, estar,
                            tstar};
    RestrictedPreprocessResult pre = preprocess_restricted(inst);
    if (pre.verdict) return *pre.verdict == Verdict::Yes;
    Multigraph rg = replay_trace_on_graph(g, pre.trace, GraphKind::Cographic);
    if (pre.demoted)
        return decide_cographic(rg, pre.demoted->weights, pre.demoted->terminals,
                                pre.demoted->k);
    const RestrictedInstance& red = *pre.restricted;
    CgmState st = unit_state(rg, red.base.weights, red.base.terminals, red.base.k, &red.estar);
    st.restricted = true;
    st.tstar = red.tstar;
    st.tstar_active = true;
    const GraphEdge& ee = rg.edge(red.estar);
    st.p = ee.u;
    st.q = ee.v;
    return cgm_decide(std::move(st));
}

namespace {

// Shared opt-and-witness wrapper: budget descent plus greedy element removal, where
// removing a bond-matroid element contracts the graph edge.
SolveResult cographic_solved(const Instance& reduced, const Multigraph& graph,
                             const ReductionTrace& trace, const ElementId* keep_free,
                             const std::function<bool(const Multigraph&, int)>& decide) {
    std::optional<int> opt;
    for (int kk = 0; kk <= reduced.k; ++kk)
        if (decide(graph, kk)) {
            opt = kk;
            break;
        }
    if (!opt) return SolveResult::no();
    Multigraph cur = graph;
    ElementSet rest = set_difference(normalized(reduced.matroid.elements()), reduced.terminals);
    for (const auto& e : rest) {
        if (keep_free && e == *keep_free) continue;
        Multigraph cand = cur.with_edge_contracted(e);
        if (decide(cand, *opt)) cur = cand;
    }
    ElementSet witness = set_difference(cur.edge_ids(), reduced.terminals);
    if (keep_free && set_contains(witness, *keep_free)) {
        Multigraph probe = cur.with_edge_contracted(*keep_free);
        if (decide(probe, *opt)) witness = set_difference(witness, {*keep_free});
    }
    if (weight_of(reduced.weights, witness) != *opt)
        throw std::logic_error("witness extraction lost the optimum");
    return SolveResult::found(*opt, lift_witness(trace, witness));
}

}  // namespace

SolveResult solve_cographic(const Instance& inst, const Multigraph& g) {
    PreprocessResult pre = preprocess(inst);
    if (pre.verdict) {
        if (*pre.verdict == Verdict::No) return SolveResult::no();
        return SolveResult::found(0, lift_witness(pre.trace, {}));
    }
    const Instance& red = *pre.instance;
    Multigraph rg = replay_trace_on_graph(g, pre.trace, GraphKind::Cographic);
    auto decide = [&](const Multigraph& graph, int kk) {
        return decide_cographic(graph, red.weights, red.terminals, kk);
    };
    return cographic_solved(red, rg, pre.trace, nullptr, decide);
}

SolveResult solve_cographic_restricted(const RestrictedInstance& inst, const Multigraph& g) {
    RestrictedPreprocessResult pre = preprocess_restricted(inst);
    if (pre.verdict) {
        if (*pre.verdict == Verdict::No) return SolveResult::no();
        return SolveResult::found(0, lift_witness(pre.trace, {}));
    }
    Multigraph rg = replay_trace_on_graph(g, pre.trace, GraphKind::Cographic);
    if (pre.demoted) {
        SolveResult r = solve_cographic(*pre.demoted, rg);
        if (r.yes) r.witness = lift_witness(pre.trace, *r.witness);
        return r;
    }
    const RestrictedInstance& red = *pre.restricted;
    auto decide = [&](const Multigraph& graph, int kk) {
        if (!graph.has_edge(red.estar))
            return decide_cographic(graph, red.base.weights, red.base.terminals, kk);
        return decide_cographic_restricted(graph, red.base.weights, red.base.terminals, kk,
                                           red.estar, red.tstar);
    };
    return cographic_solved(red.base, rg, pre.trace, &red.estar, decide);
}

}  // namespace spancover
