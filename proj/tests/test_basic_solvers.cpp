#include "doctest.h"
#include "spancover/gen.hpp"
#include "spancover/oracle.hpp"

using namespace spancover;

namespace {

WeightMap unit_weights(const ElementSet& es) {
    WeightMap w;
    for (const auto& e : es) w[e] = 1;
    return w;
}

Multigraph c4() {
    Multigraph g;
    g.add_edge("ab", "a", "b");
    g.add_edge("bc", "b", "c");
    g.add_edge("cd", "c", "d");
    g.add_edge("da", "d", "a");
    return g;
}

Instance graph_instance(Rng& rng, const Multigraph& g, bool graphic, int max_weight = 3,
                        int max_k = 4) {
    BinaryMatroid m = graphic ? g.cycle_matroid() : g.bond_matroid();
    WeightMap w;
    for (const auto& e : m.elements()) w[e] = rand_below(rng, max_weight + 1);
    ElementSet terms;
    int nt = rand_below(rng, 4);
    for (int i = 0; i < nt; ++i) terms.push_back(m.element(rand_below(rng, m.size())));
    return Instance{m, w, normalized(terms), rand_below(rng, max_k + 1)};
}

}  // namespace

TEST_CASE("steiner tree small cases") {
    WeightMap w = unit_weights(c4().edge_ids());
    CHECK(steiner_tree_weight(c4(), w, {"a"}) == 0);
    CHECK(steiner_tree_weight(c4(), w, {"a", "b", "c"}) == 2);

    Multigraph p = path_graph({"x", "y"}, {"e"});
    CHECK(steiner_tree_weight(p, {{"e", 3}}, {"x", "y"}) == 3);

    Multigraph two;
    two.add_vertex("x");
    two.add_vertex("y");
    CHECK(steiner_tree_weight(two, {}, {"x", "y"}) >= kInf);
}

TEST_CASE("steiner forest on the four-cycle") {
    WeightMap w = unit_weights(c4().edge_ids());
    std::vector<DemandPair> demands{{"a", "c"}, {"b", "d"}};
    CHECK(steiner_forest_weight(c4(), w, demands, 3) == 3);
    CHECK(steiner_forest_weight(c4(), w, demands, 2) >= kInf);
    CHECK(steiner_forest_weight(c4(), w, {}, 0) == 0);
}

TEST_CASE("steiner forest equals exhaustive search over edge subsets") {
    Rng rng(61);
    for (int trial = 0; trial < 120; ++trial) {
        Multigraph g = random_connected_graph(rng, 6, 4, false);
        if (g.num_edges() > 10) continue;
        WeightMap w;
        for (const auto& e : g.edge_ids()) w[e] = 1 + rand_below(rng, 3);
        std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
        std::vector<DemandPair> demands;
        int nd = 1 + rand_below(rng, 3);
        for (int i = 0; i < nd; ++i) {
            int a = rand_below(rng, static_cast<int>(vs.size()));
            int b = rand_below(rng, static_cast<int>(vs.size()));
            if (a == b) b = (b + 1) % static_cast<int>(vs.size());
            demands.push_back({vs[a], vs[b]});
        }
        int k = 1 + rand_below(rng, 5);

        ElementSet all = g.edge_ids();
        int best = kInf;
        for (unsigned long long bits = 0; bits < (1ull << all.size()); ++bits) {
            ElementSet f;
            int fw = 0;
            for (size_t i = 0; i < all.size(); ++i)
                if ((bits >> i) & 1) {
                    f.push_back(all[i]);
                    fw += w[all[i]];
                }
            if (fw >= best) continue;
            ElementSet removed = set_difference(all, f);
            bool ok = true;
            for (const auto& d : demands)
                if (!g.reachable_side(removed, d.x).count(d.y)) ok = false;
            if (ok) best = fw;
        }
        int got = steiner_forest_weight(g, w, demands, k);
        if (best > k) {
            CHECK(got >= kInf);
        } else {
            CHECK(got == best);
        }
    }
}

TEST_CASE("solve_graphic on the triangle") {
    Multigraph g = triangle_graph();
    WeightMap w = unit_weights(g.edge_ids());
    SolveResult yes = solve_graphic(Instance{g.cycle_matroid(), w, {"a"}, 2}, g);
    REQUIRE(yes.yes);
    CHECK(*yes.opt_weight == 2);
    CHECK(*yes.witness == ElementSet{"b", "c"});
    CHECK_FALSE(solve_graphic(Instance{g.cycle_matroid(), w, {"a"}, 1}, g).yes);
}

TEST_CASE("solve_graphic matches the oracle on random graphs") {
    Rng rng(67);
    for (int trial = 0; trial < 150; ++trial) {
        Multigraph g = random_connected_graph(rng, 7, 4, true);
        Instance inst = graph_instance(rng, g, true);
        SolveResult want = oracle::brute_space_cover(inst);
        SolveResult got = solve_graphic(inst, g);
        REQUIRE(got.yes == want.yes);
        if (want.yes) {
            CHECK(*got.opt_weight == *want.opt_weight);
            CHECK(witness_is_valid(inst, got));
        }
    }
}

TEST_CASE("restricted graphic solver avoids the free edge for t*") {
    Multigraph g;
    g.add_edge("tstar", "x", "y");
    g.add_edge("estar", "x", "y");
    g.add_edge("xm", "x", "m");
    g.add_edge("my", "m", "y");
    WeightMap w{{"tstar", 1}, {"estar", 0}, {"xm", 1}, {"my", 1}};
    RestrictedInstance ri{Instance{g.cycle_matroid(), w, {"tstar"}, 2}, "estar", "tstar"};
    SolveResult r = solve_graphic_restricted(ri, g);
    REQUIRE(r.yes);
    CHECK(*r.opt_weight == 2);
    BinaryMatroid m = g.cycle_matroid();
    Mask f = m.mask_of(set_difference(*r.witness, {"estar"}));
    CHECK(m.spans(f, m.mask_of({"tstar"})));

    ri.base.k = 1;
    CHECK_FALSE(solve_graphic_restricted(ri, g).yes);

    SolveResult plain = solve_graphic(ri.base, g);
    REQUIRE(plain.yes);
    CHECK(*plain.opt_weight == 0);
}

TEST_CASE("restricted graphic solver matches the restricted oracle") {
    Rng rng(71);
    int ran = 0;
    for (int trial = 0; trial < 220; ++trial) {
        Multigraph g = random_connected_graph(rng, 6, 4, true);
        Instance inst = graph_instance(rng, g, true);
        if (inst.terminals.empty()) continue;
        ElementSet nonterm = set_difference(normalized(inst.matroid.elements()), inst.terminals);
        if (nonterm.empty()) continue;
        RestrictedInstance ri{
            inst, nonterm[rand_below(rng, static_cast<int>(nonterm.size()))],
            inst.terminals[rand_below(rng, static_cast<int>(inst.terminals.size()))]};
        ri.base.weights[ri.estar] = 0;
        SolveResult want = oracle::brute_restricted(ri);
        SolveResult got = solve_graphic_restricted(ri, g);
        REQUIRE(got.yes == want.yes);
        if (want.yes) {
            CHECK(*got.opt_weight == *want.opt_weight);
            const BinaryMatroid& m = inst.matroid;
            Mask f = m.mask_of(*got.witness);
            Mask fe = m.mask_of(set_difference(*got.witness, {ri.estar}));
            CHECK(m.spans(f, inst.terminal_mask()));
            CHECK(m.spans(fe, m.mask_of({ri.tstar})));
        }
        ++ran;
    }
    CHECK(ran > 100);
}

TEST_CASE("solve_r10 basics") {
    BinaryMatroid r10 = BinaryMatroid::r10();
    WeightMap w = unit_weights(normalized(r10.elements()));

    BinaryMatroid ext = r10.with_parallel("r0", "tpar");
    WeightMap we = w;
    we["tpar"] = 1;
    SolveResult par = solve_r10(Instance{ext, we, {"tpar"}, 3});
    REQUIRE(par.yes);
    CHECK(*par.opt_weight == 1);
    CHECK(*par.witness == ElementSet{"r0"});

    SolveResult three = solve_r10(Instance{r10, w, {"r0"}, 3});
    REQUIRE(three.yes);
    CHECK(*three.opt_weight == 3);
    CHECK_FALSE(solve_r10(Instance{r10, w, {"r0"}, 2}).yes);
}

TEST_CASE("solve_r10 equals exhaustive search on R10 derivatives") {
    Rng rng(73);
    for (int trial = 0; trial < 60; ++trial) {
        BinaryMatroid m = BinaryMatroid::r10();
        int pars = rand_below(rng, 4);
        for (int i = 0; i < pars; ++i)
            m = m.with_parallel(m.element(rand_below(rng, m.size())), "p" + std::to_string(i));
        int surgeries = rand_below(rng, 3);
        for (int i = 0; i < surgeries && m.size() > 4; ++i) {
            Mask x = gf2::bit(rand_below(rng, m.size()));
            m = (rng() & 1) ? m.deleted(x) : m.contracted(x);
        }
        WeightMap w;
        for (const auto& e : m.elements()) w[e] = rand_below(rng, 4);
        ElementSet terms;
        int nt = 1 + rand_below(rng, 2);
        for (int i = 0; i < nt; ++i) terms.push_back(m.element(rand_below(rng, m.size())));
        Instance inst{m, w, normalized(terms), rand_below(rng, 5)};
        SolveResult want = oracle::brute_space_cover(inst);
        SolveResult got = solve_r10(inst);
        REQUIRE(got.yes == want.yes);
        if (want.yes) {
            CHECK(*got.opt_weight == *want.opt_weight);
            CHECK(witness_is_valid(inst, got));
        }
    }
}

TEST_CASE("subset feedback basics and closed-form comparison") {
    BinaryMatroid k3 = triangle_graph().cycle_matroid();
    CHECK(solve_subset_feedback(k3, {}, 0).yes);
    SolveResult r = solve_subset_feedback(k3, {"a", "b"}, 1);
    REQUIRE(r.yes);
    CHECK(*r.witness == ElementSet{"c"});
    CHECK(solve_subset_feedback(k3, {"a"}, 2).yes);  // k >= |E \ T|

    // The polynomial closed form min|F| = r*(T) = |T| + r(E\T) - r(E) matches the
    // variant where F may meet T, but not the boxed problem with F within E \ T:
    // two triangles glued along a terminal edge witness the gap.
    Multigraph two = triangle_graph();
    two.add_edge("d", "1", "4");
    two.add_edge("e", "4", "2");
    BinaryMatroid m = two.cycle_matroid();  // triangles a,b,c and a,d,e share edge a
    ElementSet t{"a"};
    int corank = static_cast<int>(t.size()) + m.rank(m.ground_mask() & ~m.mask_of(t)) - m.rank();
    CHECK(corank == 1);
    CHECK_FALSE(solve_subset_feedback(m, t, 1).yes);  // both triangles must break
    CHECK(solve_subset_feedback(m, t, 2).yes);

    // Variant allowing F to intersect T: threshold is exactly the corank.
    Rng rng(79);
    for (int trial = 0; trial < 40; ++trial) {
        BinaryMatroid rm = random_matroid(rng, 4, 9);
        ElementSet terms;
        int nt = 1 + rand_below(rng, 3);
        for (int i = 0; i < nt; ++i) terms.push_back(rm.element(rand_below(rng, rm.size())));
        terms = normalized(std::move(terms));
        Mask tmask = rm.mask_of(terms);
        int threshold =
            static_cast<int>(terms.size()) + rm.rank(rm.ground_mask() & ~tmask) - rm.rank();
        int best = rm.size() + 1;
        for (Mask f = 0; f <= rm.ground_mask(); ++f) {
            BinaryMatroid rest = rm.deleted(f);
            int full = rest.rank();
            bool ok = true;
            for (const auto& te : terms) {
                if (!rest.contains(te)) continue;
                Mask without = rest.ground_mask() & ~gf2::bit(rest.index_of(te));
                if (rest.rank(without) == full) ok = false;  // te still sits in a circuit
            }
            if (ok) best = std::min(best, gf2::popcount(f));
        }
        CHECK(best == threshold);
    }
}

TEST_CASE("restricted subset feedback via duality") {
    Multigraph g = triangle_graph();
    BinaryMatroid bond = g.bond_matroid();
    WeightMap w = unit_weights(g.edge_ids());
    CHECK_FALSE(solve_rsfs(bond, w, {"a"}, 1).yes);
    CHECK(solve_rsfs(bond, w, {"a"}, 2).yes);
}

TEST_CASE("duality: deletion kills terminal circuits iff the dual spans") {
    Rng rng(83);
    for (int trial = 0; trial < 30; ++trial) {
        BinaryMatroid m = random_matroid(rng, 4, 9);
        BinaryMatroid dual = m.dualized();
        for (int reps = 0; reps < 25; ++reps) {
            Mask t = rng() & m.ground_mask();
            Mask f = rng() & m.ground_mask() & ~t;
            bool direct = oracle::deletion_kills_terminal_circuits(m, f, t);
            bool via_dual = dual.spans(f, t);
            CHECK(direct == via_dual);
        }
    }
}

TEST_CASE("solve_rsfs agrees with the direct circuit check") {
    Rng rng(89);
    for (int trial = 0; trial < 60; ++trial) {
        BinaryMatroid m = random_matroid(rng, 4, 9);
        WeightMap w;
        for (const auto& e : m.elements()) w[e] = rand_below(rng, 3) + 1;
        ElementSet terms;
        int nt = rand_below(rng, 3);
        for (int i = 0; i < nt; ++i) terms.push_back(m.element(rand_below(rng, m.size())));
        terms = normalized(std::move(terms));
        int k = rand_below(rng, 5);
        SolveResult got = solve_rsfs(m, w, terms, k);

        Mask tmask = m.mask_of(terms);
        Mask candidates = m.ground_mask() & ~tmask;
        int best = k + 1;
        for (Mask f = 0;; f = (f - candidates) & candidates) {
            int fw = 0;
            for (Mask it = f; it; it &= it - 1) fw += w.at(m.element(gf2::lowest_bit(it)));
            if (fw < best && oracle::deletion_kills_terminal_circuits(m, f, tmask)) best = fw;
            if (f == candidates) break;
        }
        CHECK(got.yes == (best <= k));
        if (got.yes) CHECK(*got.opt_weight == best);
    }
}

TEST_CASE("steiner forest witness form") {
    Multigraph g;
    g.add_edge("ab", "a", "b");
    g.add_edge("bc", "b", "c");
    g.add_edge("cd", "c", "d");
    g.add_edge("da", "d", "a");
    WeightMap w{{"ab", 1}, {"bc", 1}, {"cd", 1}, {"da", 1}};
    SolveResult r = steiner_forest(g, w, {{"a", "c"}, {"b", "d"}}, 3);
    REQUIRE(r.yes);
    CHECK(*r.opt_weight == 3);
    CHECK(r.witness->size() == 3);
    CHECK_FALSE(steiner_forest(g, w, {{"a", "c"}, {"b", "d"}}, 2).yes);
}

TEST_CASE("forest weights grow with the demand set") {
    Rng rng(91);
    for (int trial = 0; trial < 40; ++trial) {
        Multigraph g = random_connected_graph(rng, 6, 4, false);
        WeightMap w;
        for (const auto& e : g.edge_ids()) w[e] = 1 + rand_below(rng, 3);
        std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
        std::vector<DemandPair> demands;
        for (int i = 0; i < 3; ++i) {
            int a = rand_below(rng, static_cast<int>(vs.size()));
            int b = rand_below(rng, static_cast<int>(vs.size()));
            if (a == b) b = (b + 1) % static_cast<int>(vs.size());
            demands.push_back({vs[a], vs[b]});
        }
        int k = 12;
        for (unsigned sub = 0; sub < 8; ++sub) {
            std::vector<DemandPair> part, whole = demands;
            for (int i = 0; i < 3; ++i)
                if ((sub >> i) & 1) part.push_back(demands[i]);
            CHECK(steiner_forest_weight(g, w, part, k) <=
                  steiner_forest_weight(g, w, whole, k));
        }
    }
}
