#pragma once

#include "spancover/steiner.hpp"

namespace spancover {

// Lifts a witness of a preprocessed instance back to the original ground set by
// re-adding every element the trace contracted at zero weight.
ElementSet lift_witness(const ReductionTrace& trace, ElementSet f);

// Exact solver for matroids derived from R10 by parallel additions, deletions and
// contractions: preprocessing caps the ground set, then exhaustive search.
SolveResult solve_r10(const Instance& inst);

// Space cover on the cycle matroid of g via steiner forest on g - T.
SolveResult solve_graphic(const Instance& inst, const Multigraph& g);

// Restricted space cover on graphic matroids: the tree covering t*'s demand group
// must connect its endpoints avoiding e*.
SolveResult solve_graphic_restricted(const RestrictedInstance& inst, const Multigraph& g);

// Decision-only entry points used by the conflict-tree driver.
bool decide_graphic(const Multigraph& g, const WeightMap& w, const ElementSet& terminals, int k);
bool decide_graphic_restricted(const Multigraph& g, const WeightMap& w,
                               const ElementSet& terminals, int k, const ElementId& estar,
                               const ElementId& tstar);

// Optimal weight within the budget, skipping witness extraction.
std::optional<int> graphic_opt(const Multigraph& g, const WeightMap& w,
                               const ElementSet& terminals, int k);
std::optional<int> graphic_restricted_opt(const Multigraph& g, const WeightMap& w,
                                          const ElementSet& terminals, int k,
                                          const ElementId& estar, const ElementId& tstar);

// Subset feedback: delete at most k nonterminals so that no circuit of the rest
// meets T. Exhaustive under the oracle cap (see the closed-form comparison tests).
SolveResult solve_subset_feedback(const BinaryMatroid& m, const ElementSet& terminals, int k);

// Restricted subset feedback via duality: space cover on the dual matroid.
SolveResult solve_rsfs(const BinaryMatroid& m, const WeightMap& w, const ElementSet& terminals,
                       int k);

// Space cover decided by plain exhaustive search over nonterminal subsets; used for
// small matrix instances and as the dual-side workhorse of solve_rsfs.
SolveResult solve_exhaustive(const Instance& inst, int ground_cap = 24);

}  // namespace spancover
