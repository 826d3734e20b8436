#include "spancover/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace spancover::oracle {

OracleBudget default_budget() {
    OracleBudget b;
    if (const char* cap = std::getenv("SPANCOVER_CAP")) {
        int v = std::atoi(cap);
        if (v > 0) b.max_ground = v;
    }
    return b;
}

namespace {

void check_caps(const Instance& inst, const OracleBudget& b) {
    if (inst.matroid.size() > b.max_ground)
        throw std::length_error("oracle cap exceeded: ground set of " +
                                std::to_string(inst.matroid.size()));
    if (inst.k > b.max_k) throw std::length_error("oracle cap exceeded: k");
    for (const auto& [e, w] : inst.weights)
        if (w > b.max_weight) throw std::length_error("oracle cap exceeded: weight");
}

}  // namespace

SolveResult brute_space_cover(const Instance& inst, const OracleBudget& b) {
    inst.validate();
    check_caps(inst, b);
    const BinaryMatroid& m = inst.matroid;
    Mask tmask = inst.terminal_mask();
    Mask candidates = m.ground_mask() & ~tmask;
    std::vector<int> w(m.size());
    for (int i = 0; i < m.size(); ++i) w[i] = inst.weights.at(m.element(i));

    int best = inst.k + 1;
    Mask best_f = 0;
    bool found = false;
    // Gray-code walk over subsets of the candidate positions keeps the weight current.
    std::vector<int> pos;
    for (Mask it = candidates; it; it &= it - 1) pos.push_back(gf2::lowest_bit(it));
    int n = static_cast<int>(pos.size());
    Mask f = 0;
    int fw = 0;
    auto consider = [&](Mask f_now, int w_now) {
        if (w_now > inst.k) return;
        if (found && (w_now > best || (w_now == best && f_now >= best_f))) return;
        if (m.spans(f_now, tmask)) {
            best = w_now;
            best_f = f_now;
            found = true;
        }
    };
    consider(0, 0);
    for (unsigned long long g = 1; g < (1ull << n); ++g) {
        int flip = gf2::lowest_bit(g);
        Mask pbit = gf2::bit(pos[flip]);
        if (f & pbit) {
            f &= ~pbit;
            fw -= w[pos[flip]];
        } else {
            f |= pbit;
            fw += w[pos[flip]];
        }
        consider(f, fw);
    }
    if (!found) return SolveResult::no();
    return SolveResult::found(best, m.ids_of(best_f));
}

SolveResult brute_restricted(const RestrictedInstance& inst, const OracleBudget& b) {
    inst.validate();
    check_caps(inst.base, b);
    const BinaryMatroid& m = inst.base.matroid;
    Mask tmask = inst.base.terminal_mask();
    Mask estar_bit = gf2::bit(m.index_of(inst.estar));
    Mask tstar_bit = gf2::bit(m.index_of(inst.tstar));
    Mask candidates = m.ground_mask() & ~tmask;

    int best = inst.base.k + 1;
    Mask best_f = 0;
    bool found = false;
    for (Mask f = 0;; f = (f - candidates) & candidates) {
        int fw = 0;
        for (Mask it = f; it; it &= it - 1) fw += inst.base.weights.at(m.element(gf2::lowest_bit(it)));
        if (fw <= inst.base.k && m.spans(f, tmask) && m.spans(f & ~estar_bit, tstar_bit)) {
            if (!found || fw < best || (fw == best && f < best_f)) {
                best = fw;
                best_f = f;
                found = true;
            }
        }
        if (f == candidates) break;
    }
    if (!found) return SolveResult::no();
    return SolveResult::found(best, m.ids_of(best_f));
}

std::vector<ImportantCut> brute_important_cuts(const Multigraph& g, const VertexSet& x,
                                               const VertexSet& y, int k) {
    if (g.num_edges() > 20) throw std::length_error("oracle cap exceeded: edges");
    ElementSet all = g.edge_ids();
    int n = static_cast<int>(all.size());
    std::vector<ImportantCut> minimal;
    for (unsigned long long bits = 0; bits < (1ull << n); ++bits) {
        if (gf2::popcount(bits) > k) continue;
        ElementSet s;
        for (int i = 0; i < n; ++i)
            if ((bits >> i) & 1) s.push_back(all[i]);
        if (!g.separates(x, y, s)) continue;
        bool min = true;
        for (const auto& e : s)
            if (g.separates(x, y, set_difference(s, {e}))) {
                min = false;
                break;
            }
        if (!min) continue;
        minimal.push_back(ImportantCut{s, g.reachable_from(x, s)});
    }
    // Keep those not dominated by any equal-or-smaller cut with a strictly larger side.
    std::vector<ImportantCut> out;
    for (const auto& c : minimal) {
        bool dominated = false;
        for (unsigned long long bits = 0; bits < (1ull << n) && !dominated; ++bits) {
            if (gf2::popcount(bits) > static_cast<int>(c.cut.size())) continue;
            ElementSet s;
            for (int i = 0; i < n; ++i)
                if ((bits >> i) & 1) s.push_back(all[i]);
            if (!g.separates(x, y, s)) continue;
            VertexSet side = g.reachable_from(x, s);
            if (side != c.side &&
                std::includes(side.begin(), side.end(), c.side.begin(), c.side.end()))
                dominated = true;
        }
        if (!dominated) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SemiImportantSet> brute_semi_important(const Multigraph& g, const VertexId& s,
                                                   const VertexSet& terminals, int k) {
    if (g.num_vertices() > 16) throw std::length_error("oracle cap exceeded: vertices");
    std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
    int n = static_cast<int>(vs.size());
    std::vector<VertexSet> interesting;
    for (unsigned long long bits = 0; bits < (1ull << n); ++bits) {
        VertexSet w;
        for (int i = 0; i < n; ++i)
            if ((bits >> i) & 1) w.insert(vs[i]);
        if (is_interesting_set(g, s, terminals, w)) interesting.push_back(std::move(w));
    }
    std::vector<SemiImportantSet> out;
    for (const auto& w : interesting) {
        if (static_cast<int>(g.delta(w).size()) > k) continue;
        bool maximal = true;
        for (const auto& w1 : interesting)
            if (w1 != w && set_preferred(g, terminals, w, w1)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(SemiImportantSet{w, g.delta(w)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

SolveResult brute_rank_reduction(const BinaryMatroid& m, int h, int k, const OracleBudget& b) {
    if (m.size() > b.max_ground) throw std::length_error("oracle cap exceeded: ground set");
    int full = m.rank();
    int best = k + 1;
    Mask best_x = 0;
    for (Mask x = 0;; ++x) {
        int sz = gf2::popcount(x);
        if (sz <= k && full - m.rank(m.ground_mask() & ~x) >= h) {
            if (sz < best) {
                best = sz;
                best_x = x;
            }
        }
        if (x == m.ground_mask()) break;
    }
    if (best > k) return SolveResult::no();
    return SolveResult::found(best, m.ids_of(best_x));
}

bool deletion_kills_terminal_circuits(const BinaryMatroid& m, Mask f, Mask t) {
    BinaryMatroid rest = m.deleted(f);
    Mask trest = rest.mask_of(m.ids_of(t & ~f));
    for (Mask c : rest.circuits_up_to(rest.size()))
        if (c & trest) return false;
    return true;
}

}  // namespace spancover::oracle
