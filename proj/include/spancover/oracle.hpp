#pragma once

#include "spancover/cuts.hpp"
#include "spancover/graph.hpp"
#include "spancover/instance.hpp"

namespace spancover::oracle {

// Caps for the exhaustive solvers; exceeding one is an error, never silent truncation.
struct OracleBudget {
    int max_ground = 16;
    int max_k = 16;
    int max_weight = 1000;
};

// Reads SPANCOVER_CAP from the environment (overrides max_ground when set).
OracleBudget default_budget();

// Minimum over all F within E \ T with span(F) containing T.
SolveResult brute_space_cover(const Instance& inst, const OracleBudget& b = default_budget());

// As above with the extra requirement that F \ {e*} spans t*.
SolveResult brute_restricted(const RestrictedInstance& inst,
                             const OracleBudget& b = default_budget());

std::vector<ImportantCut> brute_important_cuts(const Multigraph& g, const VertexSet& x,
                                               const VertexSet& y, int k);

std::vector<SemiImportantSet> brute_semi_important(const Multigraph& g, const VertexId& s,
                                                   const VertexSet& terminals, int k);

// Can deleting at most k elements drop the rank of M by at least h?
SolveResult brute_rank_reduction(const BinaryMatroid& m, int h, int k,
                                 const OracleBudget& b = default_budget());

// Definitional check used by the duality tests: after deleting F, no circuit of M
// contains a terminal.
bool deletion_kills_terminal_circuits(const BinaryMatroid& m, Mask f, Mask t);

}  // namespace spancover::oracle
