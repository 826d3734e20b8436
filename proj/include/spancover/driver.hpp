#pragma once

#include "spancover/basic_solvers.hpp"
#include "spancover/cuts.hpp"
#include "spancover/sums.hpp"

namespace spancover {

// A space cover instance whose matroid is given as a conflict tree. Weights and
// terminals live on the composed ground set (sum-set elements carry neither).
struct TreeInstance {
    ConflictTree tree;
    WeightMap weights;
    ElementSet terminals;
    int k = 0;

    void validate() const;
    Instance composed_instance() const;  // composes the tree (small instances only)
};

struct SolveStats {
    long long dispatch_calls = 0;    // recursion steps expanded
    long long branch_invocations = 0;
    long long search_leaves = 0;     // resolutions not produced by a branching rule
    int max_branch_depth = 0;
    bool budget_strictly_decreased = true;  // every branch child had a smaller k
    std::vector<std::string> trace;  // one line per rule firing (bounded)

    void note(const std::string& line) {
        if (trace.size() < 10000) trace.push_back(line);
    }
};

// Exact solver: answer, optimal weight and a witness, via the bottom-up conflict
// tree recursion. `jobs` > 1 evaluates top-level branch children concurrently.
SolveResult solve(const TreeInstance& ti, SolveStats* stats = nullptr, int jobs = 1);

// Decision-only entry point (budget fixed at ti.k).
bool decide_tree(const TreeInstance& ti, SolveStats* stats = nullptr, int jobs = 1);

// Can deleting at most k elements drop the rank by at least h? Reduces to unit-weight
// space cover instances on the dual, one per h-subset of candidate terminals.
SolveResult rank_reduction(const BinaryMatroid& m, int h, int k);

// Basic-node instance helpers shared with the CLI.
std::optional<int> basic_min_budget(const BasicNode& n, const WeightMap& w,
                                    const ElementSet& terminals, int k);
SolveResult basic_solve(const BasicNode& n, const WeightMap& w, const ElementSet& terminals,
                        int k);

}  // namespace spancover
