#include "doctest.h"
#include "spancover/gen.hpp"
#include "spancover/oracle.hpp"
#include "spancover/sums.hpp"

using namespace spancover;

namespace {

// Cycle list of a small matroid, as masks.
std::vector<Mask> all_cycles(const BinaryMatroid& m) {
    std::vector<Mask> out;
    for (Mask s = 0; s <= m.ground_mask(); ++s)
        if (m.is_cycle(s)) out.push_back(s);
    return out;
}

// Reference sum: cycles are compatible symmetric differences, computed by double
// enumeration over both operands' cycle lists.
std::set<ElementSet> reference_sum_cycles(const BinaryMatroid& m1, const BinaryMatroid& m2) {
    ElementSet shared = set_intersection(normalized(m1.elements()), normalized(m2.elements()));
    std::set<ElementSet> out;
    for (Mask c1 : all_cycles(m1))
        for (Mask c2 : all_cycles(m2)) {
            ElementSet s1 = m1.ids_of(c1);
            ElementSet s2 = m2.ids_of(c2);
            if (set_intersection(s1, shared) != set_intersection(s2, shared)) continue;
            out.insert(set_difference(sym_difference(s1, s2), shared));
        }
    return out;
}

BinaryMatroid triangle_with(const ElementSet& names) {
    Multigraph g;
    g.add_edge(names[0], "1", "2");
    g.add_edge(names[1], "2", "3");
    g.add_edge(names[2], "1", "3");
    return g.cycle_matroid();
}

ConflictTree two_triangles_2sum() {
    // Two triangles sharing the edge s form a four-cycle on {a,b,c,d}.
    ConflictTree t;
    BasicNode n1;
    n1.name = "n1";
    n1.kind = BasicNode::Kind::Graphic;
    n1.graph.add_edge("a", "1", "2");
    n1.graph.add_edge("b", "2", "3");
    n1.graph.add_edge("s", "1", "3");
    BasicNode n2;
    n2.name = "n2";
    n2.kind = BasicNode::Kind::Graphic;
    n2.graph.add_edge("c", "4", "5");
    n2.graph.add_edge("d", "5", "6");
    n2.graph.add_edge("s", "4", "6");
    t.nodes = {n1, n2};
    t.edges = {SumEdge{"n1", "n2", {"s"}}};
    t.root = "n1";
    return t;
}

}  // namespace

TEST_CASE("two-sum of triangles is the four-cycle") {
    ConflictTree t = two_triangles_2sum();
    BinaryMatroid m = compose_tree(t);
    CHECK(m.size() == 4);
    CHECK(m.same_independence(
        [] {
            Multigraph c4;
            c4.add_edge("a", "1", "2");
            c4.add_edge("b", "2", "3");
            c4.add_edge("c", "3", "4");
            c4.add_edge("d", "4", "1");
            return c4.cycle_matroid();
        }()));
}

TEST_CASE("sum cycles equal the definitional double enumeration") {
    Rng rng(113);
    int done = 0;
    for (int trial = 0; trial < 80; ++trial) {
        BinaryMatroid m1 = random_matroid(rng, 4, 7);
        BinaryMatroid m2 = random_matroid(rng, 4, 7);
        int arity = rand_below(rng, 3);
        std::map<ElementId, ElementId> ren1, ren2;
        if (arity == 1) {
            ren1[m1.element(rand_below(rng, m1.size()))] = "shared";
            ren2[m2.element(rand_below(rng, m2.size()))] = "shared";
        } else if (arity == 2) {
            // Need a common 3-circuit: find one in each operand.
            auto pick_circuit = [&](const BinaryMatroid& m) -> std::optional<ElementSet> {
                for (Mask c : m.circuits_up_to(3))
                    if (gf2::popcount(c) == 3) return m.ids_of(c);
                return std::nullopt;
            };
            auto c1 = pick_circuit(m1);
            auto c2 = pick_circuit(m2);
            if (!c1 || !c2) continue;
            for (int i = 0; i < 3; ++i) {
                ren1[(*c1)[i]] = "z" + std::to_string(i);
                ren2[(*c2)[i]] = "z" + std::to_string(i);
            }
        }
        BinaryMatroid a = m1.renamed(ren1);
        std::map<ElementId, ElementId> prefix;
        for (const auto& e : m2.elements())
            if (!ren2.count(e)) prefix[e] = "o" + e;
        for (const auto& [from, to] : ren2) prefix[from] = to;
        BinaryMatroid b = m2.renamed(prefix);
        if (!set_intersection(normalized(a.elements()), normalized(b.elements())).empty() &&
            arity == 0)
            continue;
        if (a.size() + b.size() > 15) continue;
        BinaryMatroid sum = matroid_sum(a, b);
        std::set<ElementSet> got;
        for (Mask c : all_cycles(sum)) got.insert(sum.ids_of(c));
        CHECK(got == reference_sum_cycles(a, b));
        ++done;
    }
    CHECK(done > 30);
}

TEST_CASE("sum rejects bad shared sets") {
    BinaryMatroid t1 = triangle_with({"x", "y", "p"});
    BinaryMatroid t2 = triangle_with({"x", "y", "q"});
    CHECK_THROWS(matroid_sum(t1, t2));  // two shared elements

    // Three shared elements that are not a circuit of one side.
    Multigraph g;
    g.add_edge("x", "1", "2");
    g.add_edge("y", "2", "3");
    g.add_edge("z", "3", "4");
    g.add_edge("w", "4", "1");
    BinaryMatroid path = g.cycle_matroid();
    BinaryMatroid tri = triangle_with({"x", "y", "z"});
    CHECK_THROWS(matroid_sum(path, tri));
}

TEST_CASE("composition is independent of the fold order") {
    Rng rng(127);
    for (int trial = 0; trial < 25; ++trial) {
        ConflictTree t = random_conflict_tree(rng, 3, 5, 14);
        BinaryMatroid a = compose_tree(t);
        ConflictTree t2 = t;
        t2.root = t.nodes.back().name;
        std::reverse(t2.nodes.begin(), t2.nodes.end());
        std::reverse(t2.edges.begin(), t2.edges.end());
        BinaryMatroid b = compose_tree(t2);
        CHECK(a.same_independence(b));
    }
}

TEST_CASE("node surgery commutes with composition and normalization repairs sums") {
    Rng rng(131);
    int done = 0;
    for (int trial = 0; trial < 60; ++trial) {
        ConflictTree t = random_conflict_tree(rng, 3, 5, 14);
        BinaryMatroid m = compose_tree(t);
        ElementSet composed = t.composed_elements();
        if (composed.empty()) continue;
        const ElementId e = composed[rand_below(rng, static_cast<int>(composed.size()))];
        bool contract = rng() & 1;

        ConflictTree t2 = t;
        std::string owner = t2.owner_of(e);
        t2.node_mut(owner) = contract ? t2.node(owner).with_element_contracted(e)
                                      : t2.node(owner).with_element_deleted(e);
        normalize_tree(t2);
        BinaryMatroid got = compose_tree(t2);
        Mask bit = gf2::bit(m.index_of(e));
        BinaryMatroid want = contract ? m.contracted(bit) : m.deleted(bit);
        CHECK(got.same_independence(want));
        ++done;
    }
    CHECK(done > 40);
}

TEST_CASE("terminal flipping preserves the composed matroid") {
    // A leaf terminal parallel to the shared edge moves into the parent.
    ConflictTree t = two_triangles_2sum();
    BasicNode& leaf = t.node_mut("n2");
    leaf.graph.add_edge("t", "4", "6");  // parallel to the shared edge s
    BinaryMatroid before = compose_tree(t);

    bool flipped = terminal_flip_once(t, {"t"});
    CHECK(flipped);
    CHECK(t.node("n1").has_element("t"));
    CHECK_FALSE(t.node("n2").has_element("t"));
    CHECK(compose_tree(t).same_independence(before));

    // Idempotent for the same terminal.
    CHECK_FALSE(terminal_flip_once(t, {"t"}));
    // After exhaustion no leaf terminal is parallel to a sum-set element.
    auto par = t.parents();
    for (const auto& [child, parent] : par) {
        const SumEdge& e = t.edge_between(child, parent);
        for (const auto& sh : e.shared)
            if (t.node(child).has_element("t"))
                CHECK_FALSE(t.node(child).parallel_in_node(sh, "t"));
    }
}

TEST_CASE("terminal flipping across a cographic parent subdivides the shared edge") {
    ConflictTree t;
    BasicNode parent;
    parent.name = "p";
    parent.kind = BasicNode::Kind::Cographic;
    parent.graph.add_edge("s", "1", "2");
    parent.graph.add_edge("x", "1", "2");
    parent.graph.add_edge("y", "1", "2");
    BasicNode leaf;
    leaf.name = "q";
    leaf.kind = BasicNode::Kind::Graphic;
    leaf.graph.add_edge("s", "4", "5");
    leaf.graph.add_edge("t", "4", "5");
    leaf.graph.add_edge("z", "4", "5");
    t.nodes = {parent, leaf};
    t.edges = {SumEdge{"p", "q", {"s"}}};
    t.root = "p";
    BinaryMatroid before = compose_tree(t);
    REQUIRE(terminal_flip_once(t, {"t"}));
    CHECK(compose_tree(t).same_independence(before));
}

TEST_CASE("triangle exchange: spanning two circuit elements spans the third") {
    Rng rng(137);
    int done = 0;
    for (int trial = 0; trial < 120 && done < 25; ++trial) {
        BinaryMatroid m = random_matroid(rng, 4, 9);
        std::optional<ElementSet> tri;
        for (Mask c : m.circuits_up_to(3))
            if (gf2::popcount(c) == 3) tri = m.ids_of(c);
        if (!tri) continue;
        WeightMap w;
        for (const auto& e : m.elements()) w[e] = 1 + rand_below(rng, 3);
        // Minimum F avoiding the circuit spanning the first two elements.
        Mask cmask = m.mask_of(*tri);
        Mask candidates = m.ground_mask() & ~cmask;
        Mask t12 = m.mask_of({(*tri)[0], (*tri)[1]});
        int best = kInf;
        Mask best_f = 0;
        for (Mask f = 0;; f = (f - candidates) & candidates) {
            int fw = 0;
            for (Mask it = f; it; it &= it - 1) fw += w.at(m.element(gf2::lowest_bit(it)));
            if (fw < best && m.spans(f, t12)) {
                best = fw;
                best_f = f;
            }
            if (f == candidates) break;
        }
        if (best >= kInf) continue;
        CHECK(m.spans(best_f, cmask));  // the whole triangle comes along
        ++done;
    }
    CHECK(done >= 8);
}

TEST_CASE("circuits of a 3-sum decompose with at most one shared element") {
    Rng rng(173);
    int done = 0;
    for (int trial = 0; trial < 800 && done < 15; ++trial) {
        ConflictTree t = random_conflict_tree(rng, 2, 5, 12);
        if (t.edges.size() != 1 || t.edges[0].shared.size() != 3) continue;
        BinaryMatroid m1 = t.node(t.edges[0].a).matroid();
        BinaryMatroid m2 = t.node(t.edges[0].b).matroid();
        if (m1.size() + m2.size() > 16) continue;
        BinaryMatroid sum = matroid_sum(m1, m2);
        ElementSet shared = t.edges[0].shared;
        for (Mask c : sum.circuits_up_to(sum.size(), 14)) {
            ElementSet cids = sum.ids_of(c);
            bool decomposed = false;
            for (Mask c1 = 0; c1 <= m1.ground_mask() && !decomposed; ++c1) {
                if (!m1.is_cycle(c1)) continue;
                ElementSet s1 = m1.ids_of(c1);
                for (Mask c2 = 0; c2 <= m2.ground_mask(); ++c2) {
                    if (!m2.is_cycle(c2)) continue;
                    ElementSet s2 = m2.ids_of(c2);
                    if (set_intersection(s1, shared) != set_intersection(s2, shared)) continue;
                    if (set_difference(sym_difference(s1, s2), shared) != cids) continue;
                    if (set_intersection(s1, s2).size() <= 1) {
                        decomposed = true;
                        break;
                    }
                }
            }
            CHECK(decomposed);
        }
        ++done;
    }
    CHECK(done >= 8);
}
