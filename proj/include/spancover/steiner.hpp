#pragma once

#include <limits>
#include <utility>

#include "spancover/instance.hpp"

namespace spancover {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct DemandPair {
    VertexId x, y;
};

// Subset dynamic program over a fixed terminal-vertex list P: table(X, v) is the
// minimum weight of a tree containing the terminals X and the vertex v.
class SteinerTable {
public:
    SteinerTable(const Multigraph& g, const WeightMap& w, std::vector<VertexId> terminals);

    int tree_weight(Mask terminal_subset) const;  // min over all roots
    int terminal_count() const { return static_cast<int>(terms_.size()); }
    Mask terminal_mask(const VertexSet& vs) const;

private:
    std::vector<VertexId> terms_;
    std::vector<VertexId> verts_;
    std::vector<std::vector<int>> dp_;  // dp_[X][v]
};

// Variant whose trees are edge-count bounded and avoid routing the path between
// `x1` and `y1` (or from whichever of them is present to the root) through the
// edge `forbidden`. Used for the restricted graphic solver.
class RestrictedSteinerTable {
public:
    RestrictedSteinerTable(const Multigraph& g, const WeightMap& w,
                           std::vector<VertexId> terminals, const VertexId& x1,
                           const VertexId& y1, const ElementId& forbidden, int max_edges);

    // Minimum weight over roots for terminal subset X, with at most max_edges edges.
    int tree_weight(Mask terminal_subset) const;
    Mask terminal_mask(const VertexSet& vs) const;

private:
    std::vector<VertexId> terms_;
    std::vector<VertexId> verts_;
    int levels_;
    // c_[l][X][v], level l = max edge count
    std::vector<std::vector<std::vector<int>>> c_;
};

// Minimum Steiner tree weight connecting the vertex set s (kInf when impossible).
int steiner_tree_weight(const Multigraph& g, const WeightMap& w, const VertexSet& s);

// Exact steiner forest: minimum weight edge set connecting every demand pair, or
// kInf when that exceeds k / is impossible. Positive weights expected.
int steiner_forest_weight(const Multigraph& g, const WeightMap& w,
                          const std::vector<DemandPair>& demands, int k);

// As above with a witness edge set, pinned down by greedy deletion.
SolveResult steiner_forest(const Multigraph& g, const WeightMap& w,
                           const std::vector<DemandPair>& demands, int k);

}  // namespace spancover
