#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spancover/matroid.hpp"

namespace spancover {

using VertexId = std::string;
using VertexSet = std::set<VertexId>;

struct GraphEdge {
    ElementId id;
    VertexId u, v;
    bool is_loop() const { return u == v; }
    VertexId other(const VertexId& x) const { return x == u ? v : u; }
};

// Labeled multigraph. Loops and parallel edges are allowed; vertex and edge ids are
// stable under deletion and contraction of other elements.
class Multigraph {
public:
    Multigraph() = default;

    void add_vertex(const VertexId& v);
    void add_edge(const ElementId& id, const VertexId& u, const VertexId& v);

    bool has_vertex(const VertexId& v) const { return vertices_.count(v) > 0; }
    bool has_edge(const ElementId& id) const;
    const GraphEdge& edge(const ElementId& id) const;
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const std::set<VertexId>& vertices() const { return vertices_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    ElementSet edge_ids() const;

    Multigraph with_edges_deleted(const ElementSet& ids) const;
    Multigraph with_vertices_deleted(const VertexSet& vs) const;  // drops incident edges
    // Contraction merges the endpoints (the surviving vertex keeps the smaller id);
    // contracting a loop just deletes it.
    Multigraph with_edge_contracted(const ElementId& id) const;
    Multigraph with_edge_ids_renamed(const std::map<ElementId, ElementId>& renames) const;
    Multigraph induced(const VertexSet& vs) const;

    std::map<VertexId, int> components() const;  // vertex -> component index
    int num_components() const;
    ElementSet bridges() const;
    std::vector<ElementSet> blocks() const;  // biconnected components as edge sets
    VertexSet reachable_side(const ElementSet& removed_edges, const VertexId& x) const;
    VertexSet reachable_from(const VertexSet& xs, const ElementSet& removed_edges) const;
    ElementSet delta(const VertexSet& r) const;  // edges with exactly one endpoint in r
    bool connected() const { return num_components() <= 1; }

    // True iff removing `s` increases the component count.
    bool is_cutset(const ElementSet& s) const;
    // True iff `s` is an inclusion-minimal cut-set.
    bool is_minimal_cutset(const ElementSet& s) const;
    // Some inclusion-minimal cut-set contained in `s`, if one exists.
    std::optional<ElementSet> minimal_cutset_within(const ElementSet& s) const;
    // True iff every x-y path for x in xs, y in ys meets `s`.
    bool separates(const VertexSet& xs, const VertexSet& ys, const ElementSet& s) const;

    // GF(2) vertex-edge incidence; loops become zero columns. Columns follow the
    // edge insertion order.
    BinaryMatroid cycle_matroid() const;
    BinaryMatroid bond_matroid() const { return cycle_matroid().dualized(); }

private:
    int edge_pos(const ElementId& id) const;

    std::set<VertexId> vertices_;
    std::vector<GraphEdge> edges_;
    std::map<ElementId, int> edge_index_;
};

Multigraph triangle_graph();  // K3 on vertices 1,2,3 with edges a,b,c
Multigraph path_graph(const std::vector<VertexId>& vs, const std::vector<ElementId>& edge_ids);

}  // namespace spancover
