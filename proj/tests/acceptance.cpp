// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here; all comparisons are exact (answer and optimum).

#include <chrono>
#include <iostream>
#include <map>

#include "spancover/driver.hpp"
#include "spancover/gen.hpp"
#include "spancover/oracle.hpp"

using namespace spancover;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << " ("
              << detail << ")\n";
    if (!ok) ++failures;
}

long long ipow(long long b, int e) {
    long long p = 1;
    for (int i = 0; i < e; ++i) p *= b;
    return p;
}

TreeInstance corpus_tree(Rng& rng, int max_weight) {
    TreeInstance ti;
    ti.tree = random_conflict_tree(rng, 3, 7, 14);
    for (const auto& e : ti.tree.composed_elements()) {
        int roll = rand_below(rng, 8);
        ti.weights[e] = roll == 0 ? 0 : 1 + rand_below(rng, max_weight);
    }
    ElementSet pool = ti.tree.composed_elements();
    int nt = rand_below(rng, 4);
    for (int i = 0; i < nt && !pool.empty(); ++i) {
        int pick = rand_below(rng, static_cast<int>(pool.size()));
        ti.terminals.push_back(pool[pick]);
        pool.erase(pool.begin() + pick);
    }
    ti.terminals = normalized(std::move(ti.terminals));
    ti.k = rand_below(rng, 5);
    return ti;
}

Instance random_graph_instance(Rng& rng, const Multigraph& g, bool graphic) {
    BinaryMatroid m = graphic ? g.cycle_matroid() : g.bond_matroid();
    WeightMap w;
    for (const auto& e : m.elements()) w[e] = rand_below(rng, 4);
    ElementSet terms;
    int nt = rand_below(rng, 4);
    for (int i = 0; i < nt; ++i) terms.push_back(m.element(rand_below(rng, m.size())));
    return Instance{m, w, normalized(terms), rand_below(rng, 5)};
}

// ---------------------------------------------------------------------------
// 1 + 5 + 6: the 1000-seed end-to-end corpus, with per-rule slicing and the
// branching-discipline counters measured on the same runs.
void criteria_1_5_6() {
    auto started = std::chrono::steady_clock::now();
    Rng rng(20260810);
    int total = 0, agree = 0;
    bool budgets_ok = true, leaves_ok = true;
    std::map<std::string, std::pair<int, int>> slice;  // rule -> (fired, agreed)
    const char* keys[] = {"terminal-flip",          "reduce-1leaf",
                          "reduce-2leaf",           "branch-2leaf",
                          "branch-3leaf",           "reduce-graphic-3leaf",
                          "reduce-cographic-3leaf", "subleaf-split"};
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        Rng lrng(rng());
        TreeInstance ti = corpus_tree(lrng, 3);
        Instance composed = ti.composed_instance();
        SolveResult want = oracle::brute_space_cover(composed);
        SolveStats stats;
        SolveResult got = solve(ti, &stats);
        ++total;
        bool same = got.yes == want.yes && (!want.yes || *got.opt_weight == *want.opt_weight);
        bool witness_ok = witness_is_valid(composed, got);
        if (same && witness_ok) ++agree;
        budgets_ok &= stats.budget_strictly_decreased;
        leaves_ok &= stats.search_leaves <= ipow(15, ti.k);
        for (const char* key : keys) {
            bool fired = false;
            for (const auto& line : stats.trace)
                if (line.rfind(key, 0) == 0) fired = true;
            if (fired) {
                slice[key].first++;
                if (same) slice[key].second++;
            }
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report(1, "end-to-end oracle equivalence on the 1000-seed corpus", agree == total,
           std::to_string(agree) + "/" + std::to_string(total) + " in " +
               std::to_string(secs) + "s");

    // A 3-sum heavy slice with terminals planted inside the leaf keeps the 15-way
    // branching (including its restricted sub-solves) well exercised.
    {
        Rng rng3(314159);
        int extra = 0;
        while (extra < 150) {
            TreeInstance ti = corpus_tree(rng3, 1);
            bool has3 = false;
            for (const auto& e : ti.tree.edges) has3 |= e.shared.size() == 3;
            if (!has3) continue;
            ti.k = 2 + rand_below(rng3, 3);
            Instance composed = ti.composed_instance();
            SolveResult want = oracle::brute_space_cover(composed);
            SolveStats stats;
            SolveResult got = solve(ti, &stats);
            ++extra;
            bool same =
                got.yes == want.yes && (!want.yes || *got.opt_weight == *want.opt_weight);
            budgets_ok &= stats.budget_strictly_decreased;
            leaves_ok &= stats.search_leaves <= ipow(15, ti.k);
            for (const char* key : keys) {
                bool fired = false;
                for (const auto& line : stats.trace)
                    if (line.rfind(key, 0) == 0) fired = true;
                if (fired) {
                    slice[key].first++;
                    if (same) slice[key].second++;
                }
            }
        }
    }

    bool slices_ok = true;
    std::string detail;
    for (const char* key : keys) {
        auto [fired, ok] = slice[key];
        slices_ok &= fired > 0 && fired == ok;
        detail += std::string(key) + "=" + std::to_string(ok) + "/" + std::to_string(fired) + " ";
    }
    report(5, "leaf rules preserve the oracle on their corpus slices", slices_ok, detail);
    report(6, "branching strictly decreases k and the search tree has at most 15^k leaves",
           budgets_ok && leaves_ok,
           std::string("budget=") + (budgets_ok ? "ok" : "violated") +
               " leaves=" + (leaves_ok ? "ok" : "violated"));
}

// Extra slice for criterion 5: instances engineered so that the terminal flipping
// rule and preprocessing both fire, checked against the oracle.
void criterion_5_preprocess_and_flips() {
    Rng rng(555);
    int pp_total = 0, pp_agree = 0;
    for (int trial = 0; trial < 400; ++trial) {
        BinaryMatroid m = random_matroid(rng, 4, 10);
        WeightMap w;
        for (const auto& e : m.elements()) w[e] = rand_below(rng, 4);
        ElementSet terms;
        int nt = rand_below(rng, 4);
        for (int i = 0; i < nt; ++i) terms.push_back(m.element(rand_below(rng, m.size())));
        Instance inst{m, w, normalized(terms), rand_below(rng, 5)};
        SolveResult before = oracle::brute_space_cover(inst);
        PreprocessResult pre = preprocess(inst);
        ++pp_total;
        if (pre.verdict) {
            if (before.yes == (*pre.verdict == Verdict::Yes)) ++pp_agree;
            continue;
        }
        SolveResult after = oracle::brute_space_cover(*pre.instance);
        if (before.yes == after.yes && (!before.yes || *before.opt_weight == *after.opt_weight))
            ++pp_agree;
    }

    int flip_total = 0, flip_agree = 0;
    for (int trial = 0; trial < 800 && flip_total < 120; ++trial) {
        TreeInstance ti = corpus_tree(rng, 3);
        // Plant a terminal parallel to a shared element inside a leaf.
        auto par = ti.tree.parents();
        bool planted = false;
        for (const auto& [child, parent] : par) {
            const SumEdge& e = ti.tree.edge_between(child, parent);
            if (e.shared.size() != 1) continue;
            const ElementId& sh = e.shared.front();
            if (ti.tree.node(child).is_node_loop(sh)) continue;
            ElementId tid = "flip" + std::to_string(trial);
            ti.tree.node_mut(child) = ti.tree.node(child).with_parallel_added(
                sh, tid, &ti.tree.fresh_counter);
            ti.weights[tid] = 1 + rand_below(rng, 3);
            ti.terminals = set_union(ti.terminals, {tid});
            planted = true;
            break;
        }
        if (!planted) continue;
        ConflictTree flipped = ti.tree;
        bool fired = terminal_flip_once(flipped, ti.terminals);
        if (!fired) continue;
        ++flip_total;
        bool same_matroid =
            compose_tree(flipped).same_independence(compose_tree(ti.tree));
        SolveResult want = oracle::brute_space_cover(ti.composed_instance());
        SolveResult got = solve(ti);
        if (same_matroid && got.yes == want.yes &&
            (!want.yes || *got.opt_weight == *want.opt_weight))
            ++flip_agree;
    }
    report(5, "preprocessing and terminal flipping are answer-preserving",
           pp_agree == pp_total && flip_total > 50 && flip_agree == flip_total,
           "preprocess " + std::to_string(pp_agree) + "/" + std::to_string(pp_total) +
               ", flips " + std::to_string(flip_agree) + "/" + std::to_string(flip_total));
}

void criterion_2() {
    Rng rng(222);
    int total = 0, agree = 0;
    for (int trial = 0; trial < 500; ++trial) {
        bool graphic = trial % 2 == 0;
        Multigraph g = random_connected_graph(rng, 7, 4, true);
        Instance inst = random_graph_instance(rng, g, graphic);
        SolveResult want = oracle::brute_space_cover(inst);
        SolveResult got = graphic ? solve_graphic(inst, g) : solve_cographic(inst, g);
        ++total;
        if (got.yes == want.yes && (!want.yes || *got.opt_weight == *want.opt_weight) &&
            witness_is_valid(inst, got))
            ++agree;
    }
    int rtotal = 0, ragree = 0;
    for (int trial = 0; rtotal < 500 && trial < 3000; ++trial) {
        bool graphic = trial % 2 == 0;
        Multigraph g = random_connected_graph(rng, 7, 4, true);
        Instance inst = random_graph_instance(rng, g, graphic);
        if (inst.terminals.empty()) continue;
        ElementSet nonterm =
            set_difference(normalized(inst.matroid.elements()), inst.terminals);
        if (nonterm.empty()) continue;
        RestrictedInstance ri{
            inst, nonterm[rand_below(rng, static_cast<int>(nonterm.size()))],
            inst.terminals[rand_below(rng, static_cast<int>(inst.terminals.size()))]};
        ri.base.weights[ri.estar] = 0;
        SolveResult want = oracle::brute_restricted(ri);
        SolveResult got =
            graphic ? solve_graphic_restricted(ri, g) : solve_cographic_restricted(ri, g);
        ++rtotal;
        if (got.yes == want.yes && (!want.yes || *got.opt_weight == *want.opt_weight))
            ++ragree;
    }
    report(2, "basic solvers match their oracles on 500 + 500 instances",
           agree == total && ragree == rtotal && total == 500 && rtotal == 500,
           "plain " + std::to_string(agree) + "/" + std::to_string(total) + ", restricted " +
               std::to_string(ragree) + "/" + std::to_string(rtotal));
}

void criterion_3() {
    Rng rng(333);
    int ic_total = 0, ic_ok = 0;
    for (int trial = 0; ic_total < 500 && trial < 2000; ++trial) {
        Multigraph g = random_connected_graph(rng, 8, 4, true);
        if (g.num_edges() > 12) continue;
        std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
        VertexSet x{vs[rand_below(rng, static_cast<int>(vs.size()))]};
        VertexSet y;
        int ny = 1 + rand_below(rng, 2);
        for (int i = 0; i < ny; ++i) {
            VertexId v = vs[rand_below(rng, static_cast<int>(vs.size()))];
            if (!x.count(v)) y.insert(v);
        }
        if (y.empty()) continue;
        int k = rand_below(rng, 5);
        auto got = enumerate_important_cuts(g, x, y, k);
        auto want = oracle::brute_important_cuts(g, x, y, k);
        ++ic_total;
        if (got == want && static_cast<long long>(got.size()) <= ipow(4, k)) ++ic_ok;
    }
    int si_total = 0, si_ok = 0;
    for (int trial = 0; si_total < 300 && trial < 2000; ++trial) {
        Multigraph g = random_connected_graph(rng, 8, 4, true);
        std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
        VertexId s = vs[rand_below(rng, static_cast<int>(vs.size()))];
        VertexSet terms;
        int nt = rand_below(rng, 3);
        for (int i = 0; i < nt; ++i) {
            VertexId v = vs[rand_below(rng, static_cast<int>(vs.size()))];
            if (v != s) terms.insert(v);
        }
        int k = rand_below(rng, 4);
        auto got = enumerate_semi_important(g, s, terms, k);
        auto want = oracle::brute_semi_important(g, s, terms, k);
        ++si_total;
        if (got == want && static_cast<long long>(got.size()) <= ipow(4, k) * (1 + ipow(4, k + 1)))
            ++si_ok;
    }
    report(3, "cut enumerations equal brute force within the combinatorial bounds",
           ic_ok == ic_total && si_ok == si_total && ic_total == 500 && si_total == 300,
           "important " + std::to_string(ic_ok) + "/" + std::to_string(ic_total) +
               ", semi-important " + std::to_string(si_ok) + "/" + std::to_string(si_total));
}

void criterion_4() {
    Rng rng(444);
    int total = 0, ok = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        BinaryMatroid m = random_matroid(rng, 5, 12);
        bool good = true;
        // Dualize twice is the identity.
        good &= m.dualized().dualized().same_independence(m);
        // Deleting here is contracting in the dual.
        int x = rand_below(rng, m.size());
        good &= m.deleted(gf2::bit(x)).dualized().same_independence(
            m.dualized().contracted(gf2::bit(x)));
        // Cycles are closed under symmetric difference.
        std::vector<Mask> cycles;
        for (Mask s = 0; s <= m.ground_mask(); ++s)
            if (m.is_cycle(s)) cycles.push_back(s);
        for (int reps = 0; reps < 16 && good; ++reps) {
            Mask c1 = cycles[rand_below(rng, static_cast<int>(cycles.size()))];
            Mask c2 = cycles[rand_below(rng, static_cast<int>(cycles.size()))];
            good &= m.is_cycle(c1 ^ c2);
        }
        ++total;
        if (good) ++ok;
    }
    // Sum definition equivalence: cycles of the sum are the compatible symmetric
    // differences of member cycles, by double enumeration.
    int sums_total = 0, sums_ok = 0;
    for (int trial = 0; sums_total < 250 && trial < 4000; ++trial) {
        BinaryMatroid m1 = random_matroid(rng, 4, 7);
        BinaryMatroid m2 = random_matroid(rng, 4, 7);
        int arity = rand_below(rng, 3);
        std::map<ElementId, ElementId> ren1, ren2;
        if (arity == 1) {
            ren1[m1.element(rand_below(rng, m1.size()))] = "sh";
            ren2[m2.element(rand_below(rng, m2.size()))] = "sh";
        } else if (arity == 2) {
            auto pick = [&](const BinaryMatroid& m) -> std::optional<ElementSet> {
                for (Mask c : m.circuits_up_to(3))
                    if (gf2::popcount(c) == 3) return m.ids_of(c);
                return std::nullopt;
            };
            auto c1 = pick(m1), c2 = pick(m2);
            if (!c1 || !c2) continue;
            for (int i = 0; i < 3; ++i) {
                ren1[(*c1)[i]] = "sh" + std::to_string(i);
                ren2[(*c2)[i]] = "sh" + std::to_string(i);
            }
        }
        BinaryMatroid a = m1.renamed(ren1);
        std::map<ElementId, ElementId> prefix;
        for (const auto& e : m2.elements())
            if (!ren2.count(e)) prefix[e] = "o" + e;
        for (const auto& [from, to] : ren2) prefix[from] = to;
        BinaryMatroid b = m2.renamed(prefix);
        if (a.size() + b.size() > 15) continue;
        BinaryMatroid sum = matroid_sum(a, b);
        ElementSet shared = set_intersection(normalized(a.elements()), normalized(b.elements()));
        std::set<ElementSet> want;
        for (Mask c1 = 0; c1 <= a.ground_mask(); ++c1) {
            if (!a.is_cycle(c1)) continue;
            for (Mask c2 = 0; c2 <= b.ground_mask(); ++c2) {
                if (!b.is_cycle(c2)) continue;
                ElementSet s1 = a.ids_of(c1), s2 = b.ids_of(c2);
                if (set_intersection(s1, shared) != set_intersection(s2, shared)) continue;
                want.insert(set_difference(sym_difference(s1, s2), shared));
            }
        }
        std::set<ElementSet> got;
        for (Mask c = 0; c <= sum.ground_mask(); ++c)
            if (sum.is_cycle(c)) got.insert(sum.ids_of(c));
        ++sums_total;
        if (got == want) ++sums_ok;
    }
    report(4, "algebraic invariants hold under fuzzing",
           ok == total && sums_ok == sums_total && total == 1000 && sums_total == 250,
           "matroid " + std::to_string(ok) + "/" + std::to_string(total) + ", sums " +
               std::to_string(sums_ok) + "/" + std::to_string(sums_total));
}

void criterion_7() {
    Rng rng(777);
    int total = 0, agree = 0;
    for (int trial = 0; trial < 300; ++trial) {
        BinaryMatroid m = random_matroid(rng, 4, 10);
        WeightMap w;
        for (const auto& e : m.elements()) w[e] = 1 + rand_below(rng, 3);
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
        ++total;
        if (got.yes == (best <= k) && (!got.yes || *got.opt_weight == best)) ++agree;
    }
    report(7, "restricted subset feedback agrees with the direct circuit check",
           agree == total && total == 300,
           std::to_string(agree) + "/" + std::to_string(total));
}

void criterion_8() {
    Rng rng(888);
    int total = 0, agree = 0;
    for (int trial = 0; trial < 300; ++trial) {
        BinaryMatroid m = random_matroid(rng, 4, 10);
        int h = 1 + rand_below(rng, 2);
        int k = 1 + rand_below(rng, 4);
        SolveResult got = rank_reduction(m, h, k);
        SolveResult want = oracle::brute_rank_reduction(m, h, k);
        ++total;
        bool same = got.yes == want.yes && (!want.yes || *got.opt_weight == *want.opt_weight);
        if (same && got.yes) {
            Mask x = m.mask_of(*got.witness);
            same = m.rank() - m.rank(m.ground_mask() & ~x) >= h;
        }
        if (same) ++agree;
    }
    report(8, "rank reduction agrees with the brute-force rank check",
           agree == total && total == 300,
           std::to_string(agree) + "/" + std::to_string(total));
}

}  // namespace

int main() {
    auto started = std::chrono::steady_clock::now();
    criteria_1_5_6();
    criterion_5_preprocess_and_flips();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_7();
    criterion_8();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cout << (failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " (" << secs
              << "s total)\n";
    return failures == 0 ? 0 : 1;
}
