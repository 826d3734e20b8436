#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spancover/graph.hpp"
#include "spancover/matroid.hpp"

namespace spancover {

using WeightMap = std::map<ElementId, int>;

int weight_of(const WeightMap& w, const ElementSet& s);

// A space cover instance: find F within E \ T of weight <= k spanning T.
struct Instance {
    BinaryMatroid matroid;
    WeightMap weights;   // defined on every element, nonnegative
    ElementSet terminals;
    int k = 0;

    void validate() const;
    Mask terminal_mask() const { return matroid.mask_of(terminals); }
    Instance with_element_deleted(const ElementId& e) const;
};

// Space cover plus a zero-weight element e* that must not be needed to span t*.
struct RestrictedInstance {
    Instance base;
    ElementId estar;
    ElementId tstar;

    void validate() const;
};

struct SolveResult {
    bool yes = false;
    std::optional<int> opt_weight;
    std::optional<ElementSet> witness;

    static SolveResult no() { return SolveResult{}; }
    static SolveResult found(int w, ElementSet f) { return SolveResult{true, w, std::move(f)}; }
};

bool witness_is_valid(const Instance& inst, const SolveResult& r);

enum class Verdict { Yes, No };

// Replayable log of reduction-rule firings.
struct TraceStep {
    std::string rule;
    ElementSet elements;
    int k_delta = 0;
};

struct ReductionTrace {
    std::vector<TraceStep> steps;
    std::optional<Verdict> verdict;
};

struct PreprocessResult {
    std::optional<Verdict> verdict;      // set iff the stopping rule resolved the instance
    std::optional<Instance> instance;    // set otherwise
    ReductionTrace trace;
};

struct RestrictedPreprocessResult {
    std::optional<Verdict> verdict;
    std::optional<RestrictedInstance> restricted;  // e* and t* both survived
    std::optional<Instance> demoted;               // e* or t* was eliminated
    ReductionTrace trace;
};

// Exhaustive application of the elementary reduction rules: contract zero-weight
// nonterminals, drop an element of any all-terminal circuit, drop nonterminal loops,
// drop the dearer of two parallel nonterminals, then decide trivial instances.
PreprocessResult preprocess(const Instance& inst);

// Variant where e* is exempt from contraction and parallel deletion and t* from
// circuit deletion; eliminating either demotes the instance to plain space cover.
RestrictedPreprocessResult preprocess_restricted(const RestrictedInstance& inst);

// Mirrors a trace produced on cycle_matroid(g) / bond_matroid(g) onto the graph:
// graphic nodes contract/delete edges directly, cographic nodes swap the two.
enum class GraphKind { Graphic, Cographic };
Multigraph replay_trace_on_graph(const Multigraph& g, const ReductionTrace& trace, GraphKind kind);

}  // namespace spancover
