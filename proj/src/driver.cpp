#include "spancover/driver.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <future>
#include <mutex>
#include <stdexcept>

namespace spancover {

void TreeInstance::validate() const {
    tree.validate();
    ElementSet composed = tree.composed_elements();
    for (const auto& e : composed)
        if (!weights.count(e)) throw std::invalid_argument("missing weight for " + e);
    for (const auto& [e, w] : weights) {
        if (!set_contains(composed, e))
            throw std::invalid_argument("weight on a non-composed element: " + e);
        if (w < 0) throw std::invalid_argument("negative weight for " + e);
    }
    for (const auto& t : terminals)
        if (!set_contains(composed, t))
            throw std::invalid_argument("terminal outside the composed ground set: " + t);
    if (k < 0) throw std::invalid_argument("negative budget");
}

Instance TreeInstance::composed_instance() const {
    return Instance{compose_tree(tree), weights, terminals, k};
}

namespace {

struct Ctx {
    SolveStats* stats;
    int jobs = 1;
    std::mutex mu;

    template <typename Fn>
    void with_stats(Fn fn) {
        if (!stats) return;
        std::lock_guard<std::mutex> lock(mu);
        fn(*stats);
    }
};

void erase_weight_and_terminal(TreeInstance& ti, const ElementId& e) {
    ti.weights.erase(e);
    ti.terminals = set_difference(ti.terminals, {e});
}

void contract_in_owner(TreeInstance& ti, ElementId e) {
    std::string owner = ti.tree.owner_of(e);
    ti.tree.node_mut(owner) = ti.tree.node(owner).with_element_contracted(e);
    erase_weight_and_terminal(ti, e);
}

void delete_in_owner(TreeInstance& ti, ElementId e) {
    std::string owner = ti.tree.owner_of(e);
    ti.tree.node_mut(owner) = ti.tree.node(owner).with_element_deleted(e);
    erase_weight_and_terminal(ti, e);
}

// Elementary reductions at the tree level: detection runs on the composed matroid,
// the surgery on the owning node, and sum-sets are re-normalized in between.
std::optional<Verdict> tree_preprocess(TreeInstance& ti) {
    while (true) {
        normalize_tree(ti.tree);
        BinaryMatroid m = compose_tree(ti.tree);
        Mask tmask = m.mask_of(ti.terminals);

        // Zero-weight nonterminals join any solution for free: contract.
        bool fired = false;
        for (const auto& e : m.elements()) {
            if (set_contains(ti.terminals, e) || ti.weights.at(e) != 0) continue;
            contract_in_owner(ti, e);
            fired = true;
            break;
        }
        if (fired) continue;

        // An all-terminal circuit makes one of its members redundant.
        if (!m.is_independent(tmask)) {
            Mask circ = tmask;
            for (const auto& t : ti.terminals) {
                Mask without = circ & ~gf2::bit(m.index_of(t));
                if (!m.is_independent(without)) circ = without;
            }
            ElementSet celems = m.ids_of(circ);
            delete_in_owner(ti, celems.back());
            continue;
        }

        // Nonterminal loops are useless.
        for (const auto& e : m.elements()) {
            if (set_contains(ti.terminals, e)) continue;
            if (!m.is_loop(m.index_of(e))) continue;
            delete_in_owner(ti, e);
            fired = true;
            break;
        }
        if (fired) continue;

        // Of two parallel nonterminals keep the cheaper (ties: smaller id).
        for (int j = 0; j < m.size() && !fired; ++j) {
            const ElementId& victim = m.element(j);
            if (set_contains(ti.terminals, victim)) continue;
            for (int i = 0; i < m.size(); ++i) {
                if (i == j || !m.parallel(i, j)) continue;
                const ElementId& keeper = m.element(i);
                if (set_contains(ti.terminals, keeper)) continue;
                int wk = ti.weights.at(keeper), wv = ti.weights.at(victim);
                if (wk < wv || (wk == wv && keeper < victim)) {
                    delete_in_owner(ti, victim);
                    fired = true;
                    break;
                }
            }
        }
        if (fired) continue;

        if (ti.terminals.empty()) return Verdict::Yes;
        if (ti.terminals.size() == static_cast<size_t>(m.size()) ||
            static_cast<int>(ti.terminals.size()) > ti.k)
            return Verdict::No;
        return std::nullopt;
    }
}

std::optional<int> opt_cographic(const Multigraph& g, const WeightMap& w, const ElementSet& t,
                                 int k) {
    for (int kk = 0; kk <= k; ++kk)
        if (decide_cographic(g, w, t, kk)) return kk;
    return std::nullopt;
}

}  // namespace

std::optional<int> basic_min_budget(const BasicNode& n, const WeightMap& w,
                                    const ElementSet& terminals, int k) {
    switch (n.kind) {
        case BasicNode::Kind::Graphic:
            return graphic_opt(n.graph, w, terminals, k);
        case BasicNode::Kind::Cographic:
            return opt_cographic(n.graph, w, terminals, k);
        case BasicNode::Kind::R10Like: {
            SolveResult r = solve_r10(Instance{n.matrix, w, normalized(terminals), k});
            if (!r.yes) return std::nullopt;
            return *r.opt_weight;
        }
    }
    throw std::logic_error("bad node kind");
}

SolveResult basic_solve(const BasicNode& n, const WeightMap& w, const ElementSet& terminals,
                        int k) {
    switch (n.kind) {
        case BasicNode::Kind::Graphic:
            return solve_graphic(Instance{n.graph.cycle_matroid(), w, normalized(terminals), k},
                                 n.graph);
        case BasicNode::Kind::Cographic:
            return solve_cographic(Instance{n.graph.bond_matroid(), w, normalized(terminals), k},
                                   n.graph);
        case BasicNode::Kind::R10Like:
            return solve_r10(Instance{n.matrix, w, normalized(terminals), k});
    }
    throw std::logic_error("bad node kind");
}

namespace {

std::optional<int> restricted_min_budget(const BasicNode& n, const WeightMap& w,
                                         const ElementSet& terminals, int k,
                                         const ElementId& estar, const ElementId& tstar) {
    if (n.kind == BasicNode::Kind::Graphic)
        return graphic_restricted_opt(n.graph, w, terminals, k, estar, tstar);
    if (n.kind != BasicNode::Kind::Cographic)
        throw std::logic_error("restricted instances never target R10-derived nodes");
    for (int kk = 0; kk <= k; ++kk)
        if (decide_cographic_restricted(n.graph, w, terminals, kk, estar, tstar)) return kk;
    return std::nullopt;
}

WeightMap leaf_weights(const TreeInstance& ti, const BasicNode& leaf,
                       const std::map<ElementId, int>& overrides) {
    WeightMap w;
    for (const auto& e : leaf.elements()) {
        auto it = overrides.find(e);
        w[e] = it != overrides.end() ? it->second : ti.weights.at(e);
    }
    return w;
}

// Removes a leaf node; its composed elements leave the instance, the formerly shared
// elements become composed in the remainder (the caller assigns their weights).
void drop_leaf(TreeInstance& ti, const std::string& leaf) {
    ElementSet elems = ti.tree.node(leaf).elements();
    for (const auto& e : elems) ti.weights.erase(e);
    ti.terminals = set_difference(ti.terminals, elems);
    ti.tree.remove_node(leaf);
}

bool decide_rec(TreeInstance ti, Ctx& ctx, int depth);

struct Branch {
    std::string label;
    TreeInstance child;
};

bool run_branches(const TreeInstance& parent, std::vector<Branch> branches, Ctx& ctx,
                  int depth) {
    ctx.with_stats([&](SolveStats& s) {
        s.branch_invocations++;
        s.max_branch_depth = std::max(s.max_branch_depth, depth + 1);
        for (const auto& b : branches) {
            s.note(b.label + " k->" + std::to_string(b.child.k));
            if (b.child.k >= parent.k) s.budget_strictly_decreased = false;
        }
    });
    if (branches.empty()) {
        ctx.with_stats([](SolveStats& s) { s.search_leaves++; });
        return false;
    }
    if (depth == 0 && ctx.jobs > 1) {
        std::vector<std::future<bool>> futs;
        for (auto& b : branches)
            futs.push_back(std::async(std::launch::async, [&ctx, depth, child = b.child]() {
                return decide_rec(child, ctx, depth + 1);
            }));
        bool any = false;
        for (auto& f : futs) any = f.get() || any;
        return any;
    }
    for (auto& b : branches)
        if (decide_rec(std::move(b.child), ctx, depth + 1)) return true;
    return false;
}

// ---- leaf rules -----------------------------------------------------------

bool leaf_rule_1(TreeInstance ti, const std::string& leaf, Ctx& ctx, int depth) {
    const BasicNode& n = ti.tree.node(leaf);
    ElementSet tl = set_intersection(ti.terminals, n.elements());
    if (tl.empty()) {
        ctx.with_stats([&](SolveStats& s) { s.note("reduce-1leaf drop " + leaf); });
        drop_leaf(ti, leaf);
        return decide_rec(std::move(ti), ctx, depth);
    }
    std::optional<int> kl = basic_min_budget(n, leaf_weights(ti, n, {}), tl, ti.k);
    if (!kl) {
        ctx.with_stats([](SolveStats& s) { s.search_leaves++; });
        return false;
    }
    ctx.with_stats([&](SolveStats& s) {
        s.note("reduce-1leaf solve " + leaf + " cost " + std::to_string(*kl));
    });
    drop_leaf(ti, leaf);
    ti.k -= *kl;
    return decide_rec(std::move(ti), ctx, depth);
}

bool leaf_rule_2(TreeInstance ti, const std::string& subleaf, const std::string& leaf, Ctx& ctx,
                 int depth) {
    const BasicNode& n = ti.tree.node(leaf);
    const ElementId e = ti.tree.edge_between(subleaf, leaf).shared.front();
    std::optional<int> kl = basic_min_budget(n, leaf_weights(ti, n, {{e, 0}}), {e}, ti.k);
    int we = kl ? *kl : ti.k + 1;
    ctx.with_stats([&](SolveStats& s) {
        s.note("reduce-2leaf " + leaf + " w(" + e + ")=" + std::to_string(we));
    });
    drop_leaf(ti, leaf);
    ti.weights[e] = we;
    return decide_rec(std::move(ti), ctx, depth);
}

bool branch_2leaf(const TreeInstance& ti, const std::string& subleaf, const std::string& leaf,
                  Ctx& ctx, int depth) {
    const BasicNode& n = ti.tree.node(leaf);
    const ElementId e = ti.tree.edge_between(subleaf, leaf).shared.front();
    ElementSet tl = set_intersection(ti.terminals, n.elements());
    std::vector<Branch> branches;

    auto child_base = [&]() {
        TreeInstance child = ti;
        drop_leaf(child, leaf);
        return child;
    };
    // The leaf spans its terminals and the shared element, which the remainder uses
    // for free.
    if (auto k1 = basic_min_budget(n, leaf_weights(ti, n, {{e, 0}}), set_union(tl, {e}), ti.k)) {
        TreeInstance child = child_base();
        child.weights[e] = 0;
        child.k = ti.k - *k1;
        branches.push_back({"branch-2leaf(i)", std::move(child)});
    }
    // The remainder spans e, which the leaf uses for free to cover its terminals.
    if (auto k2 = basic_min_budget(n, leaf_weights(ti, n, {{e, 0}}), tl, ti.k)) {
        TreeInstance child = child_base();
        child.weights[e] = 0;
        child.terminals = set_union(child.terminals, {e});
        child.k = ti.k - *k2;
        branches.push_back({"branch-2leaf(ii)", std::move(child)});
    }
    // No interaction through e at all.
    if (auto k3 =
            basic_min_budget(n, leaf_weights(ti, n, {{e, ti.k + 1}}), tl, ti.k)) {
        TreeInstance child = child_base();
        child.weights[e] = ti.k + 1;
        child.k = ti.k - *k3;
        branches.push_back({"branch-2leaf(iii)", std::move(child)});
    }
    return run_branches(ti, std::move(branches), ctx, depth);
}

bool branch_3leaf(const TreeInstance& ti, const std::string& subleaf, const std::string& leaf,
                  Ctx& ctx, int depth) {
    const BasicNode& n = ti.tree.node(leaf);
    ElementSet z = ti.tree.edge_between(subleaf, leaf).shared;
    const ElementId e1 = z[0], e2 = z[1], e3 = z[2];
    ElementSet tl = set_intersection(ti.terminals, n.elements());
    const int big = ti.k + 1;
    std::vector<Branch> branches;

    auto child_base = [&](std::map<ElementId, int> zw, ElementSet new_terms, int spent) {
        TreeInstance child = ti;
        drop_leaf(child, leaf);
        for (const auto& [ze, zv] : zw) child.weights[ze] = zv;
        child.terminals = set_union(child.terminals, new_terms);
        child.k = ti.k - spent;
        return child;
    };

    // (i) the leaf spans its terminals plus one shared element.
    for (const ElementId& ei : z) {
        std::map<ElementId, int> lw{{e1, big}, {e2, big}, {e3, big}};
        if (auto kk = basic_min_budget(n, leaf_weights(ti, n, lw), set_union(tl, {ei}), ti.k)) {
            std::map<ElementId, int> zw{{e1, big}, {e2, big}, {e3, big}};
            zw[ei] = 0;
            branches.push_back({"branch-3leaf(i:" + ei + ")", child_base(zw, {}, *kk)});
        }
    }
    // (ii) the leaf spans its terminals plus two shared elements (any pair works).
    {
        std::map<ElementId, int> lw{{e1, big}, {e2, big}, {e3, big}};
        if (auto kk =
                basic_min_budget(n, leaf_weights(ti, n, lw), set_union(tl, {e1, e2}), ti.k)) {
            branches.push_back(
                {"branch-3leaf(ii)", child_base({{e1, 0}, {e2, 0}, {e3, big}}, {}, *kk)});
        }
    }
    // (iii) circuits cross in both directions through an ordered pair; the leaf side
    // must span e_j without relying on the free e_i.
    for (const ElementId& ei : z)
        for (const ElementId& ej : z) {
            if (ei == ej) continue;
            std::map<ElementId, int> lw{{e1, big}, {e2, big}, {e3, big}};
            lw[ei] = 0;
            if (auto kk = restricted_min_budget(n, leaf_weights(ti, n, lw),
                                                set_union(tl, {ej}), ti.k, ei, ej)) {
                std::map<ElementId, int> zw{{e1, big}, {e2, big}, {e3, big}};
                zw[ej] = 0;
                branches.push_back({"branch-3leaf(iii:" + ei + "," + ej + ")",
                                    child_base(zw, {ei}, *kk)});
            }
        }
    // (iv) the remainder spans one shared element, used freely inside the leaf.
    for (const ElementId& ei : z) {
        std::map<ElementId, int> lw{{e1, big}, {e2, big}, {e3, big}};
        lw[ei] = 0;
        if (auto kk = basic_min_budget(n, leaf_weights(ti, n, lw), tl, ti.k)) {
            branches.push_back({"branch-3leaf(iv:" + ei + ")",
                                child_base({{e1, big}, {e2, big}, {e3, big}}, {ei}, *kk)});
        }
    }
    // (v) the remainder spans two shared elements.
    {
        std::map<ElementId, int> lw{{e1, 0}, {e2, 0}, {e3, big}};
        if (auto kk = basic_min_budget(n, leaf_weights(ti, n, lw), tl, ti.k)) {
            branches.push_back({"branch-3leaf(v)",
                                child_base({{e1, big}, {e2, big}, {e3, big}}, {e1, e2}, *kk)});
        }
    }
    // (vi) the two sides do not interact.
    {
        std::map<ElementId, int> lw{{e1, big}, {e2, big}, {e3, big}};
        if (auto kk = basic_min_budget(n, leaf_weights(ti, n, lw), tl, ti.k)) {
            branches.push_back({"branch-3leaf(vi)",
                                child_base({{e1, big}, {e2, big}, {e3, big}}, {}, *kk)});
        }
    }
    return run_branches(ti, std::move(branches), ctx, depth);
}

bool apply_leaf_rule(TreeInstance ti, const std::string& subleaf, const std::string& leaf,
                     Ctx& ctx, int depth) {
    size_t arity = ti.tree.edge_between(subleaf, leaf).shared.size();
    ElementSet tl = set_intersection(ti.terminals, ti.tree.node(leaf).elements());
    if (arity == 0) return leaf_rule_1(std::move(ti), leaf, ctx, depth);
    if (arity == 1)
        return tl.empty() ? leaf_rule_2(std::move(ti), subleaf, leaf, ctx, depth)
                          : branch_2leaf(ti, subleaf, leaf, ctx, depth);
    return branch_3leaf(ti, subleaf, leaf, ctx, depth);
}

// ---- terminal-free 3-leaf reductions --------------------------------------

struct PairSplit {
    int total;          // min weight spanning the first two targets, or k+1
    int a, b, c;        // branch weights: first-only / second-only / shared
};

// Solves the pair instance and splits the minimal witness along its two fundamental
// circuits; the three parts weight the replacement gadget.
PairSplit pair_split(const BasicNode& n, const WeightMap& w, const ElementId& f1,
                     const ElementId& f2, int k) {
    const int big = k + 1;
    SolveResult r = basic_solve(n, w, {f1, f2}, k);
    if (!r.yes) return PairSplit{big, big, big, big};
    BinaryMatroid m = n.matroid();
    Mask fmask = m.mask_of(*r.witness);
    Mask c1 = m.fundamental_circuit(fmask, m.index_of(f1));
    Mask c2 = m.fundamental_circuit(fmask, m.index_of(f2));
    Mask b1 = gf2::bit(m.index_of(f1)), b2 = gf2::bit(m.index_of(f2));
    if (((c1 | c2) & ~(b1 | b2)) != fmask)
        throw std::logic_error("pair witness is not the union of its fundamental circuits");
    auto wsum = [&](Mask x) {
        int s = 0;
        for (Mask it = x; it; it &= it - 1) s += w.at(m.element(gf2::lowest_bit(it)));
        return s;
    };
    return PairSplit{*r.opt_weight, wsum(c1 & ~(c2 | b1)), wsum(c2 & ~(c1 | b2)),
                     wsum(c1 & c2)};
}

bool reduce_graphic_3leaf(TreeInstance ti, const std::string& subleaf, const std::string& leaf,
                          Ctx& ctx, int depth) {
    const BasicNode& n = ti.tree.node(leaf);
    BasicNode& s = ti.tree.node_mut(subleaf);
    ElementSet z = ti.tree.edge_between(subleaf, leaf).shared;
    const ElementId e1 = z[0], e2 = z[1], e3 = z[2];
    const int big = ti.k + 1;
    std::map<ElementId, int> lw{{e1, big}, {e2, big}, {e3, big}};
    WeightMap wl = leaf_weights(ti, n, lw);

    auto single = [&](const ElementId& ei) {
        auto kk = basic_min_budget(n, wl, {ei}, ti.k);
        return kk ? *kk : big;
    };
    int k1 = single(e1), k2 = single(e2), k3 = single(e3);
    PairSplit split = pair_split(n, wl, e1, e2, ti.k);
    if (k1 + k2 < split.total || k2 + k3 < split.total || k1 + k3 < split.total)
        throw std::logic_error("pair cost exceeds the sum of single costs");

    // The shared triangle in the sub-leaf graph: v2 joins e1,e2; v1 the other end of
    // e1; v3 the other end of e2.
    const GraphEdge& g1 = s.graph.edge(e1);
    const GraphEdge& g2 = s.graph.edge(e2);
    VertexId v2 = (g1.u == g2.u || g1.u == g2.v) ? g1.u : g1.v;
    VertexId v1 = g1.other(v2);
    VertexId v3 = (g2.u == v2) ? g2.v : g2.u;
    {
        const GraphEdge& g3 = s.graph.edge(e3);
        if (!((g3.u == v1 && g3.v == v3) || (g3.u == v3 && g3.v == v1)))
            throw std::logic_error("3-sum set is not a triangle of the sub-leaf graph");
    }

    VertexId apex = ti.tree.fresh_vertex();
    ElementId a1 = ti.tree.fresh_element("g");
    ElementId a2 = ti.tree.fresh_element("g");
    ElementId a3 = ti.tree.fresh_element("g");
    s.graph.add_vertex(apex);
    s.graph.add_edge(a1, v1, apex);
    s.graph.add_edge(a2, v2, apex);
    s.graph.add_edge(a3, v3, apex);

    // Spanning a shared element through the gadget must never beat the direct edge.
    int wa1 = split.a, wa2 = split.c, wa3 = split.b;
    if (wa1 + wa2 < std::min(k1, big) || wa2 + wa3 < std::min(k2, big) ||
        wa3 + wa1 < std::min(k3, big))
        throw std::logic_error("gadget weights undercut a direct spanning cost");

    ctx.with_stats([&](SolveStats& s2) { s2.note("reduce-graphic-3leaf " + leaf); });
    drop_leaf(ti, leaf);
    ti.weights[e1] = k1;
    ti.weights[e2] = k2;
    ti.weights[e3] = k3;
    ti.weights[a1] = wa1;
    ti.weights[a2] = wa2;
    ti.weights[a3] = wa3;
    return decide_rec(std::move(ti), ctx, depth);
}

bool reduce_cographic_3leaf(TreeInstance ti, const std::string& subleaf,
                            const std::string& leaf, const VertexSet& component, Ctx& ctx,
                            int depth) {
    const BasicNode& n = ti.tree.node(leaf);
    BasicNode& s = ti.tree.node_mut(subleaf);
    ElementSet z = ti.tree.edge_between(subleaf, leaf).shared;
    const ElementId e1 = z[0], e2 = z[1], e3 = z[2];
    const int big = ti.k + 1;

    // Leaf side estimates.
    WeightMap wl = leaf_weights(ti, n, {{e1, big}, {e2, big}, {e3, big}});
    auto leaf_single = [&](const ElementId& ei) {
        auto kk = basic_min_budget(n, wl, {ei}, ti.k);
        return kk ? *kk : big;
    };
    int l1 = leaf_single(e1), l2 = leaf_single(e2), l3 = leaf_single(e3);
    PairSplit lsplit = pair_split(n, wl, e1, e2, ti.k);

    // Component side: H plus an apex over the attachment vertices, solved as a bond
    // matroid with the gadget spokes mirroring e1,e2,e3.
    Multigraph h = s.graph.induced(component);
    VertexId apex = ti.tree.fresh_vertex();
    ElementId f1 = ti.tree.fresh_element("h");
    ElementId f2 = ti.tree.fresh_element("h");
    ElementId f3 = ti.tree.fresh_element("h");
    std::map<ElementId, ElementId> spoke{{e1, f1}, {e2, f2}, {e3, f3}};
    Multigraph hx = h;
    hx.add_vertex(apex);
    for (const auto& ze : z) {
        const GraphEdge& ge = s.graph.edge(ze);
        VertexId y = component.count(ge.u) ? ge.u : ge.v;
        hx.add_edge(spoke[ze], apex, y);
    }
    BasicNode hnode;
    hnode.kind = BasicNode::Kind::Cographic;
    hnode.name = "__h";
    hnode.graph = hx;
    WeightMap wh;
    for (const auto& e : h.edge_ids()) wh[e] = ti.weights.at(e);
    wh[f1] = wh[f2] = wh[f3] = big;
    auto comp_single = [&](const ElementId& fi) {
        auto kk = basic_min_budget(hnode, wh, {fi}, ti.k);
        return kk ? *kk : big;
    };
    int c1 = comp_single(f1), c2 = comp_single(f2), c3 = comp_single(f3);
    PairSplit csplit = pair_split(hnode, wh, f1, f2, ti.k);

    const PairSplit& tri = lsplit.total <= csplit.total ? lsplit : csplit;

    // Replace both the leaf and the component by a triangle gadget.
    ElementSet hedges = h.edge_ids();
    VertexSet interior = component;
    Multigraph g2 = s.graph.with_vertices_deleted(interior);
    VertexId z1 = ti.tree.fresh_vertex(), z2 = ti.tree.fresh_vertex(),
             z3 = ti.tree.fresh_vertex();
    ElementId s1 = ti.tree.fresh_element("c"), s2 = ti.tree.fresh_element("c"),
              s3 = ti.tree.fresh_element("c");
    ElementId t12 = ti.tree.fresh_element("c"), t23 = ti.tree.fresh_element("c"),
              t13 = ti.tree.fresh_element("c");
    std::map<ElementId, VertexId> zvert{{e1, z1}, {e2, z2}, {e3, z3}};
    std::map<ElementId, ElementId> xedge{{e1, s1}, {e2, s2}, {e3, s3}};
    g2.add_vertex(z1);
    g2.add_vertex(z2);
    g2.add_vertex(z3);
    for (const auto& ze : z) {
        const GraphEdge& ge = s.graph.edge(ze);
        VertexId x = component.count(ge.u) ? ge.v : ge.u;
        g2.add_edge(xedge[ze], x, zvert[ze]);
    }
    g2.add_edge(t12, z1, z2);
    g2.add_edge(t23, z2, z3);
    g2.add_edge(t13, z1, z3);

    int w1 = std::min(l1, c1), w2 = std::min(l2, c2), w3 = std::min(l3, c3);
    int w13 = tri.a, w23 = tri.b, w12 = tri.c;
    // The two triangle edges at z_i stand in for spanning e_i.
    if (w13 + w12 < w1 || w23 + w12 < w2 || w13 + w23 < w3)
        throw std::logic_error("triangle gadget weights undercut a spoke");

    ctx.with_stats([&](SolveStats& st) { st.note("reduce-cographic-3leaf " + leaf); });
    s.graph = std::move(g2);
    drop_leaf(ti, leaf);
    for (const auto& e : hedges) erase_weight_and_terminal(ti, e);
    ti.weights[s1] = w1;
    ti.weights[s2] = w2;
    ti.weights[s3] = w3;
    ti.weights[t12] = w12;
    ti.weights[t23] = w23;
    ti.weights[t13] = w13;
    return decide_rec(std::move(ti), ctx, depth);
}

// ---- the dispatcher --------------------------------------------------------

bool decide_rec(TreeInstance ti, Ctx& ctx, int depth) {
    ctx.with_stats([&](SolveStats& s) { s.dispatch_calls++; });
    auto resolved = [&](bool answer) {
        ctx.with_stats([](SolveStats& s) { s.search_leaves++; });
        return answer;
    };

    std::optional<Verdict> verdict = tree_preprocess(ti);
    if (verdict) return resolved(*verdict == Verdict::Yes);

    if (ti.tree.nodes.size() == 1) {
        auto r = basic_min_budget(ti.tree.nodes.front(), ti.weights, ti.terminals, ti.k);
        return resolved(r.has_value());
    }

    while (terminal_flip_once(ti.tree, ti.terminals)) {
        ctx.with_stats([](SolveStats& s) { s.note("terminal-flip"); });
    }

    std::string s = *ti.tree.deepest_subleaf();
    auto par = ti.tree.parents();
    std::vector<std::string> children;
    for (const auto& [child, parent] : par)
        if (parent == s) children.push_back(child);
    std::sort(children.begin(), children.end());

    auto pick = [&](size_t arity, std::optional<bool> with_terminals) -> std::optional<std::string> {
        for (const auto& c : children) {
            if (ti.tree.edge_between(s, c).shared.size() != arity) continue;
            if (with_terminals) {
                bool has =
                    !set_intersection(ti.terminals, ti.tree.node(c).elements()).empty();
                if (has != *with_terminals) continue;
            }
            return c;
        }
        return std::nullopt;
    };

    if (auto c = pick(0, std::nullopt)) return leaf_rule_1(std::move(ti), *c, ctx, depth);
    if (auto c = pick(1, false)) return leaf_rule_2(std::move(ti), s, *c, ctx, depth);
    if (auto c = pick(1, true)) return branch_2leaf(ti, s, *c, ctx, depth);
    if (auto c = pick(3, true)) return branch_3leaf(ti, s, *c, ctx, depth);

    // Only terminal-free 3-leaves remain below s.
    const BasicNode& sn = ti.tree.node(s);
    if (sn.kind == BasicNode::Kind::Graphic) {
        auto c = pick(3, false);
        if (!c) throw std::logic_error("no applicable rule at a graphic sub-leaf");
        return reduce_graphic_3leaf(std::move(ti), s, *c, ctx, depth);
    }
    if (sn.kind == BasicNode::Kind::Cographic) {
        CleanCut cc = find_clean_cut(ti.tree, s);
        Multigraph h = ti.tree.node(s).graph.induced(cc.component);
        bool h_has_terminals = !set_intersection(ti.terminals, h.edge_ids()).empty();
        if (!h_has_terminals)
            return reduce_cographic_3leaf(std::move(ti), s, cc.leaf, cc.component, ctx, depth);
        std::string fresh = split_cographic_subleaf(ti.tree, s, cc.component);
        ctx.with_stats([&](SolveStats& st) { st.note("subleaf-split " + s + " -> " + fresh); });
        return apply_leaf_rule(std::move(ti), s, fresh, ctx, depth);
    }
    throw std::logic_error("sub-leaf with only 3-leaf children must be graphic or cographic");
}

}  // namespace

bool decide_tree(const TreeInstance& ti, SolveStats* stats, int jobs) {
    ti.validate();
    Ctx ctx;
    ctx.stats = stats;
    ctx.jobs = jobs;
    return decide_rec(ti, ctx, 0);
}

SolveResult solve(const TreeInstance& ti, SolveStats* stats, int jobs) {
    ti.validate();
    if (!decide_tree(ti, stats, jobs)) return SolveResult::no();

    int opt = ti.k;
    for (int kk = 0; kk <= ti.k; ++kk) {
        TreeInstance probe = ti;
        probe.k = kk;
        if (decide_tree(probe, nullptr, jobs)) {
            opt = kk;
            break;
        }
    }

    // Pin the witness: a surviving nonterminal is one whose removal breaks the
    // optimum, so the survivors form exactly the optimal solution.
    TreeInstance cur = ti;
    cur.k = opt;
    ElementSet rest = set_difference(cur.tree.composed_elements(), cur.terminals);
    for (const auto& e : rest) {
        TreeInstance cand = cur;
        delete_in_owner(cand, e);
        if (decide_tree(cand, nullptr, jobs)) cur = std::move(cand);
    }
    ElementSet witness = set_difference(cur.tree.composed_elements(), cur.terminals);
    if (weight_of(ti.weights, witness) != opt)
        throw std::logic_error("witness extraction lost the optimum");
    return SolveResult::found(opt, witness);
}

SolveResult rank_reduction(const BinaryMatroid& m, int h, int k) {
    if (h <= 0 || k <= 0) throw std::invalid_argument("h and k must be positive");
    if (k < h) return SolveResult::no();  // one deletion drops the rank by at most one
    if (m.size() > 24) throw std::length_error("rank reduction cap exceeded");
    BinaryMatroid dual = m.dualized();
    WeightMap unit;
    for (const auto& e : m.elements()) unit[e] = 1;

    std::optional<int> best;
    ElementSet best_x;
    if (m.size() >= h) {
        // All h-subsets as candidate terminal sets on the dual.
        Mask subset = gf2::full_mask(h);
        Mask limit = m.size() >= 64 ? ~Mask{0} : gf2::bit(m.size());
        while (true) {
            ElementSet t = m.ids_of(subset);
            SolveResult r = solve_exhaustive(Instance{dual, unit, t, k - h});
            if (r.yes) {
                int total = h + *r.opt_weight;
                if (!best || total < *best) {
                    best = total;
                    best_x = set_union(t, *r.witness);
                }
            }
            Mask c = subset & -subset;
            Mask r2 = subset + c;
            if (r2 >= limit) break;
            subset = (((r2 ^ subset) >> 2) / c) | r2;
        }
    }
    if (!best) return SolveResult::no();
    return SolveResult::found(*best, best_x);
}

}  // namespace spancover
