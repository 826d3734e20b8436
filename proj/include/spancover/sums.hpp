#pragma once

#include <optional>

#include "spancover/graph.hpp"
#include "spancover/matroid.hpp"

namespace spancover {

// A basic matroid of the decomposition: graphic or cographic with its realizing
// graph, or a matroid derived from R10 (parallel additions on input; deletions and
// contractions may happen during solving).
struct BasicNode {
    enum class Kind { Graphic, Cographic, R10Like };

    std::string name;
    Kind kind = Kind::Graphic;
    Multigraph graph;      // graphic / cographic
    BinaryMatroid matrix;  // r10like

    BinaryMatroid matroid() const;
    ElementSet elements() const;
    bool has_element(const ElementId& e) const;
    int element_count() const;

    // Element-level surgery; graph nodes translate through the cycle/bond dictionary.
    BasicNode with_element_deleted(const ElementId& e) const;
    BasicNode with_element_contracted(const ElementId& e) const;
    BasicNode with_parallel_added(const ElementId& of, const ElementId& copy_id,
                                  int* fresh_vertex) const;

    bool is_node_loop(const ElementId& e) const;
    bool parallel_in_node(const ElementId& a, const ElementId& b) const;
};

struct SumEdge {
    std::string a, b;
    ElementSet shared;  // 0, 1 or 3 elements appearing in both endpoint nodes
};

// Conflict tree: basic matroids on the nodes, sums on the edges. Composing the sums
// in any order yields the represented matroid whose ground set holds exactly the
// elements living in a single node.
struct ConflictTree {
    std::vector<BasicNode> nodes;
    std::vector<SumEdge> edges;
    std::string root;
    int fresh_counter = 0;  // serial for gadget element and vertex names

    const BasicNode& node(const std::string& name) const;
    BasicNode& node_mut(const std::string& name);
    bool has_node(const std::string& name) const;
    void remove_node(std::string name);

    std::vector<std::string> neighbors(const std::string& name) const;
    // Children/parent relative to the root.
    std::map<std::string, std::string> parents() const;
    std::optional<std::string> deepest_subleaf() const;  // all children are leaves
    const SumEdge& edge_between(const std::string& a, const std::string& b) const;

    ElementSet composed_elements() const;
    std::string owner_of(const ElementId& e) const;  // node holding a composed element
    ElementId fresh_element(const std::string& stem);
    VertexId fresh_vertex();

    // Structural checks: connected tree, shared elements match edge sum-sets, sum
    // arities in {0,1,3} and every 3-element sum-set a circuit of both endpoints.
    void validate() const;
};

// Extended 1/2/3-sum. The ground set is the symmetric difference, the cycle space is
// built from compatible pairs of member cycles. The 3-element shared set must be a
// circuit of both operands.
BinaryMatroid matroid_sum(const BinaryMatroid& m1, const BinaryMatroid& m2);

BinaryMatroid compose_tree(const ConflictTree& t);

// Repairs sum-sets degraded by node surgery: a sum element that became a node loop
// is folded into the neighbour (3-sums drop to 2-sums, 2-sums to 1-sums) and
// 2-sum elements that became coloops detach entirely. Empty nodes are spliced out.
// The represented matroid is unchanged.
void normalize_tree(ConflictTree& t);

// Moves a terminal that is parallel (inside a leaf) to a shared element into the
// parent node as a fresh parallel copy; the composed matroid is unchanged.
// Returns false when no flip applies.
bool terminal_flip_once(ConflictTree& t, const ElementSet& terminals);

struct CleanCut {
    std::string leaf;       // child whose sum-set image is the clean cut
    VertexSet component;    // bridgeless component H avoiding all other sum-sets
};

// Lemma-style search for a clean cut at a cographic sub-leaf: swaps series edge
// pairs inside the node's graph (a matroid-preserving relabeling) until some child
// sum-set isolates a bridgeless component free of every other sum-set image.
CleanCut find_clean_cut(ConflictTree& t, const std::string& subleaf);

// Splits the clean component H off a cographic sub-leaf as a new child leaf
// (1-, 2- or 3-sum depending on the attachment size). Returns the new leaf's name.
std::string split_cographic_subleaf(ConflictTree& t, const std::string& subleaf,
                                    const VertexSet& component);

}  // namespace spancover
