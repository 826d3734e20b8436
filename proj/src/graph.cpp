#include "spancover/graph.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace spancover {

void Multigraph::add_vertex(const VertexId& v) { vertices_.insert(v); }

void Multigraph::add_edge(const ElementId& id, const VertexId& u, const VertexId& v) {
    if (edge_index_.count(id)) throw std::invalid_argument("duplicate edge id: " + id);
    vertices_.insert(u);
    vertices_.insert(v);
    edge_index_[id] = static_cast<int>(edges_.size());
    edges_.push_back(GraphEdge{id, u, v});
}

bool Multigraph::has_edge(const ElementId& id) const { return edge_index_.count(id) > 0; }

int Multigraph::edge_pos(const ElementId& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw std::out_of_range("unknown edge id: " + id);
    return it->second;
}

const GraphEdge& Multigraph::edge(const ElementId& id) const { return edges_[edge_pos(id)]; }

ElementSet Multigraph::edge_ids() const {
    ElementSet out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back(e.id);
    return normalized(std::move(out));
}

Multigraph Multigraph::with_edges_deleted(const ElementSet& ids) const {
    Multigraph g;
    g.vertices_ = vertices_;
    for (const auto& e : edges_)
        if (!set_contains(ids, e.id)) g.add_edge(e.id, e.u, e.v);
    return g;
}

Multigraph Multigraph::with_vertices_deleted(const VertexSet& vs) const {
    Multigraph g;
    for (const auto& v : vertices_)
        if (!vs.count(v)) g.add_vertex(v);
    for (const auto& e : edges_)
        if (!vs.count(e.u) && !vs.count(e.v)) g.add_edge(e.id, e.u, e.v);
    return g;
}

Multigraph Multigraph::with_edge_contracted(const ElementId& id) const {
    const GraphEdge& c = edge(id);
    Multigraph g;
    if (c.is_loop()) return with_edges_deleted({id});
    VertexId keep = std::min(c.u, c.v), drop = std::max(c.u, c.v);
    for (const auto& v : vertices_)
        if (v != drop) g.add_vertex(v);
    for (const auto& e : edges_) {
        if (e.id == id) continue;
        VertexId u = e.u == drop ? keep : e.u;
        VertexId v = e.v == drop ? keep : e.v;
        g.add_edge(e.id, u, v);
    }
    return g;
}

Multigraph Multigraph::with_edge_ids_renamed(const std::map<ElementId, ElementId>& renames) const {
    Multigraph g;
    g.vertices_ = vertices_;
    for (const auto& e : edges_) {
        auto it = renames.find(e.id);
        g.add_edge(it == renames.end() ? e.id : it->second, e.u, e.v);
    }
    return g;
}

Multigraph Multigraph::induced(const VertexSet& vs) const {
    Multigraph g;
    for (const auto& v : vs)
        if (vertices_.count(v)) g.add_vertex(v);
    for (const auto& e : edges_)
        if (vs.count(e.u) && vs.count(e.v)) g.add_edge(e.id, e.u, e.v);
    return g;
}

std::map<VertexId, int> Multigraph::components() const {
    std::map<VertexId, int> comp;
    std::map<VertexId, std::vector<const GraphEdge*>> adj;
    for (const auto& e : edges_) {
        adj[e.u].push_back(&e);
        adj[e.v].push_back(&e);
    }
    int next = 0;
    for (const auto& start : vertices_) {
        if (comp.count(start)) continue;
        std::vector<VertexId> stack{start};
        comp[start] = next;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (const GraphEdge* e : adj[v]) {
                VertexId w = e->other(v);
                if (!comp.count(w)) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

int Multigraph::num_components() const {
    auto comp = components();
    int mx = -1;
    for (const auto& [v, c] : comp) mx = std::max(mx, c);
    return mx + 1;
}

ElementSet Multigraph::bridges() const {
    // An edge is a bridge iff no other edge path connects its endpoints; parallel
    // edges and loops are never bridges. Found by the lowpoint DFS.
    ElementSet out;
    std::map<VertexId, int> disc, low;
    int timer = 0;
    std::map<VertexId, std::vector<const GraphEdge*>> adj;
    for (const auto& e : edges_) {
        if (e.is_loop()) continue;
        adj[e.u].push_back(&e);
        adj[e.v].push_back(&e);
    }
    std::function<void(const VertexId&, const GraphEdge*)> dfs = [&](const VertexId& v,
                                                                     const GraphEdge* via) {
        disc[v] = low[v] = timer++;
        for (const GraphEdge* e : adj[v]) {
            if (e == via) continue;
            VertexId w = e->other(v);
            if (!disc.count(w)) {
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v]) out.push_back(e->id);
            } else {
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    for (const auto& v : vertices_)
        if (!disc.count(v)) dfs(v, nullptr);
    return normalized(std::move(out));
}

std::vector<ElementSet> Multigraph::blocks() const {
    // Biconnected components by the classic edge-stack DFS. Loops form their own blocks.
    std::vector<ElementSet> out;
    std::map<VertexId, int> disc, low;
    int timer = 0;
    std::vector<const GraphEdge*> stack;
    std::map<VertexId, std::vector<const GraphEdge*>> adj;
    for (const auto& e : edges_) {
        if (e.is_loop()) {
            out.push_back({e.id});
            continue;
        }
        adj[e.u].push_back(&e);
        adj[e.v].push_back(&e);
    }
    std::function<void(const VertexId&, const GraphEdge*)> dfs = [&](const VertexId& v,
                                                                     const GraphEdge* via) {
        disc[v] = low[v] = timer++;
        for (const GraphEdge* e : adj[v]) {
            if (e == via) continue;
            VertexId w = e->other(v);
            if (!disc.count(w)) {
                stack.push_back(e);
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= disc[v]) {
                    ElementSet block;
                    while (true) {
                        const GraphEdge* top = stack.back();
                        stack.pop_back();
                        block.push_back(top->id);
                        if (top == e) break;
                    }
                    out.push_back(normalized(std::move(block)));
                }
            } else if (disc[w] < disc[v]) {
                stack.push_back(e);
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    for (const auto& v : vertices_)
        if (!disc.count(v)) dfs(v, nullptr);
    return out;
}

VertexSet Multigraph::reachable_from(const VertexSet& xs, const ElementSet& removed_edges) const {
    std::map<VertexId, std::vector<const GraphEdge*>> adj;
    for (const auto& e : edges_) {
        if (set_contains(removed_edges, e.id)) continue;
        adj[e.u].push_back(&e);
        adj[e.v].push_back(&e);
    }
    VertexSet seen;
    std::vector<VertexId> stack;
    for (const auto& x : xs)
        if (vertices_.count(x) && seen.insert(x).second) stack.push_back(x);
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (const GraphEdge* e : adj[v]) {
            VertexId w = e->other(v);
            if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return seen;
}

VertexSet Multigraph::reachable_side(const ElementSet& removed_edges, const VertexId& x) const {
    return reachable_from({x}, removed_edges);
}

ElementSet Multigraph::delta(const VertexSet& r) const {
    ElementSet out;
    for (const auto& e : edges_)
        if (r.count(e.u) != r.count(e.v)) out.push_back(e.id);
    return normalized(std::move(out));
}

bool Multigraph::is_cutset(const ElementSet& s) const {
    return with_edges_deleted(s).num_components() > num_components();
}

bool Multigraph::is_minimal_cutset(const ElementSet& s) const {
    if (s.empty() || !is_cutset(s)) return false;
    for (const auto& e : s)
        if (is_cutset(set_difference(s, {e}))) return false;
    return true;
}

std::optional<ElementSet> Multigraph::minimal_cutset_within(const ElementSet& s) const {
    if (!is_cutset(s)) return std::nullopt;
    ElementSet cur = s;
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (const auto& e : cur) {
            ElementSet cand = set_difference(cur, {e});
            if (is_cutset(cand)) {
                cur = std::move(cand);
                shrunk = true;
                break;
            }
        }
    }
    return cur;
}

bool Multigraph::separates(const VertexSet& xs, const VertexSet& ys, const ElementSet& s) const {
    VertexSet r = reachable_from(xs, s);
    for (const auto& y : ys)
        if (r.count(y)) return false;
    return true;
}

BinaryMatroid Multigraph::cycle_matroid() const {
    if (num_vertices() > 64 || num_edges() > 64)
        throw std::length_error("graph too large for a matroid representation");
    std::vector<VertexId> vs(vertices_.begin(), vertices_.end());
    std::map<VertexId, int> row;
    for (int i = 0; i < static_cast<int>(vs.size()); ++i) row[vs[i]] = i;
    gf2::Mat m(static_cast<int>(vs.size()), num_edges());
    std::vector<ElementId> ids;
    for (int j = 0; j < num_edges(); ++j) {
        const GraphEdge& e = edges_[j];
        ids.push_back(e.id);
        if (!e.is_loop()) {
            m.set(row[e.u], j, true);
            m.set(row[e.v], j, true);
        }
    }
    return BinaryMatroid(std::move(ids), std::move(m));
}

Multigraph triangle_graph() {
    Multigraph g;
    g.add_edge("a", "1", "2");
    g.add_edge("b", "2", "3");
    g.add_edge("c", "1", "3");
    return g;
}

Multigraph path_graph(const std::vector<VertexId>& vs, const std::vector<ElementId>& edge_ids) {
    if (edge_ids.size() + 1 != vs.size()) throw std::invalid_argument("path size mismatch");
    Multigraph g;
    for (const auto& v : vs) g.add_vertex(v);
    for (size_t i = 0; i < edge_ids.size(); ++i) g.add_edge(edge_ids[i], vs[i], vs[i + 1]);
    return g;
}

}  // namespace spancover
