#pragma once

#include "spancover/instance.hpp"

namespace spancover {

struct ImportantCut {
    ElementSet cut;
    VertexSet side;  // vertices reachable from X once the cut is removed
    bool operator==(const ImportantCut& o) const { return cut == o.cut && side == o.side; }
    bool operator<(const ImportantCut& o) const {
        return cut != o.cut ? cut < o.cut : side < o.side;
    }
};

struct SemiImportantSet {
    VertexSet w;
    ElementSet boundary;
    bool operator==(const SemiImportantSet& o) const { return w == o.w; }
    bool operator<(const SemiImportantSet& o) const { return w < o.w; }
};

// W is interesting for (s, terminals) iff g[W] is connected, s lies in W and W holds
// at most one terminal vertex.
bool is_interesting_set(const Multigraph& g, const VertexId& s, const VertexSet& terminals,
                        const VertexSet& w);
// The preference order on interesting sets: w2 <= w1 iff w2 is contained in w1, w1's
// boundary is no larger, and w1 adds no terminal.
bool set_preferred(const Multigraph& g, const VertexSet& terminals, const VertexSet& w2,
                   const VertexSet& w1);

// All important (X,Y)-cuts of size at most k: inclusion-minimal cuts not dominated by
// an equal-or-smaller cut with a strictly larger source side. At most 4^k of them.
std::vector<ImportantCut> enumerate_important_cuts(const Multigraph& g, const VertexSet& x,
                                                   const VertexSet& y, int k);

// All (s,T,k)-semi-important sets: maximal interesting sets with boundary at most k.
// Built from important cuts of the graph itself plus a sink-gadget auxiliary graph,
// then filtered by the maximality predicate.
std::vector<SemiImportantSet> enumerate_semi_important(const Multigraph& g, const VertexId& s,
                                                       const VertexSet& terminals, int k);

// Space cover on the bond matroid of g: branching over semi-important cuts.
SolveResult solve_cographic(const Instance& inst, const Multigraph& g);
SolveResult solve_cographic_restricted(const RestrictedInstance& inst, const Multigraph& g);

bool decide_cographic(const Multigraph& g, const WeightMap& w, const ElementSet& terminals,
                      int k);
bool decide_cographic_restricted(const Multigraph& g, const WeightMap& w,
                                 const ElementSet& terminals, int k, const ElementId& estar,
                                 const ElementId& tstar);

}  // namespace spancover
