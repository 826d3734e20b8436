#include "spancover/gen.hpp"

#include <algorithm>

namespace spancover {

int rand_below(Rng& rng, int n) { return n <= 1 ? 0 : static_cast<int>(rng() % n); }

Multigraph random_connected_graph(Rng& rng, int max_vertices, int max_extra_edges,
                                  bool allow_loops) {
    int n = 2 + rand_below(rng, std::max(1, max_vertices - 1));
    Multigraph g;
    std::vector<VertexId> vs;
    for (int i = 0; i < n; ++i) {
        vs.push_back("v" + std::to_string(i));
        g.add_vertex(vs.back());
    }
    int serial = 0;
    // Random spanning tree first, extra edges after.
    for (int i = 1; i < n; ++i)
        g.add_edge("e" + std::to_string(serial++), vs[rand_below(rng, i)], vs[i]);
    int extra = rand_below(rng, max_extra_edges + 1);
    for (int i = 0; i < extra; ++i) {
        int a = rand_below(rng, n);
        int b = rand_below(rng, n);
        if (a == b && !allow_loops) b = (a + 1) % n;
        g.add_edge("e" + std::to_string(serial++), vs[a], vs[b]);
    }
    return g;
}

BinaryMatroid random_matroid(Rng& rng, int max_rows, int max_cols) {
    int rows = 2 + rand_below(rng, std::max(1, max_rows - 1));
    int cols = 3 + rand_below(rng, std::max(1, max_cols - 2));
    gf2::Mat m(rows, cols);
    std::vector<ElementId> ids;
    for (int c = 0; c < cols; ++c) {
        ids.push_back("m" + std::to_string(c));
        m.set_column(c, rng() & gf2::full_mask(rows));
    }
    return BinaryMatroid(std::move(ids), std::move(m));
}

namespace {

BasicNode random_basic_node(Rng& rng, const std::string& name, int max_vertices,
                            bool allow_r10) {
    BasicNode n;
    n.name = name;
    int pick = rand_below(rng, allow_r10 ? 5 : 4);
    if (pick == 4) {
        n.kind = BasicNode::Kind::R10Like;
        BinaryMatroid m = BinaryMatroid::r10();
        int extra = rand_below(rng, 3);
        for (int i = 0; i < extra; ++i) {
            int of = rand_below(rng, 10);
            m = m.with_parallel(m.element(of), "p" + std::to_string(i));
        }
        // Prefix ids with the node name so ground sets stay disjoint.
        std::map<ElementId, ElementId> ren;
        std::vector<ElementId> elems = m.elements();
        for (const auto& e : elems) ren[e] = name + "." + e;
        n.matrix = m.renamed(ren);
        return n;
    }
    n.kind = pick % 2 == 0 ? BasicNode::Kind::Graphic : BasicNode::Kind::Cographic;
    Multigraph g = random_connected_graph(rng, max_vertices, 4, pick == 0);
    std::map<ElementId, ElementId> ren;
    for (const auto& e : g.edge_ids()) ren[e] = name + "." + e;
    n.graph = g.with_edge_ids_renamed(ren);
    return n;
}

// Renames one node element to a fresh shared id (for 2-sums).
ElementId adopt_shared_single(Rng& rng, BasicNode& n, const ElementSet& taken,
                              const std::string& fresh) {
    ElementSet pool;
    for (const auto& e : n.elements()) {
        if (set_contains(taken, e)) continue;
        if (n.is_node_loop(e)) continue;
        pool.push_back(e);
    }
    if (pool.empty()) return "";
    const ElementId pick = pool[rand_below(rng, static_cast<int>(pool.size()))];
    if (n.kind == BasicNode::Kind::R10Like) {
        n.matrix = n.matrix.renamed({{pick, fresh}});
    } else {
        n.graph = n.graph.with_edge_ids_renamed({{pick, fresh}});
    }
    return fresh;
}

// Plants a fresh 3-circuit into a graphic or cographic node: a triangle on existing
// vertices, or a new degree-3 apex whose star is a minimal cut-set.
ElementSet plant_shared_triple(Rng& rng, BasicNode& n, int serial) {
    ElementSet ids;
    for (int i = 0; i < 3; ++i) ids.push_back("z" + std::to_string(serial) + "_" + std::to_string(i));
    std::vector<VertexId> vs(n.graph.vertices().begin(), n.graph.vertices().end());
    if (n.kind == BasicNode::Kind::Graphic) {
        if (vs.size() < 3) return {};
        int a = rand_below(rng, static_cast<int>(vs.size()));
        int b = (a + 1 + rand_below(rng, static_cast<int>(vs.size()) - 1)) %
                static_cast<int>(vs.size());
        int c = b;
        while (c == a || c == b) c = rand_below(rng, static_cast<int>(vs.size()));
        n.graph.add_edge(ids[0], vs[a], vs[b]);
        n.graph.add_edge(ids[1], vs[b], vs[c]);
        n.graph.add_edge(ids[2], vs[c], vs[a]);
        return normalized(ids);
    }
    // Cographic: a new apex vertex of degree three; its star is a minimal cut-set
    // because the rest of the graph is connected.
    VertexId apex = "a" + std::to_string(serial);
    n.graph.add_vertex(apex);
    for (int i = 0; i < 3; ++i)
        n.graph.add_edge(ids[i], apex, vs[rand_below(rng, static_cast<int>(vs.size()))]);
    return normalized(ids);
}

}  // namespace

ConflictTree random_conflict_tree(Rng& rng, int max_nodes, int max_vertices, int max_elements) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        ConflictTree t;
        int nnodes = 1 + rand_below(rng, max_nodes);
        for (int i = 0; i < nnodes; ++i)
            t.nodes.push_back(random_basic_node(rng, "n" + std::to_string(i), max_vertices,
                                                /*allow_r10=*/true));
        t.root = t.nodes.front().name;
        bool ok = true;
        ElementSet taken;
        for (int i = 1; i < nnodes && ok; ++i) {
            BasicNode& child = t.nodes[i];
            int pi = rand_below(rng, i);
            BasicNode& parent = t.nodes[pi];
            bool graphs_only = child.kind != BasicNode::Kind::R10Like &&
                               parent.kind != BasicNode::Kind::R10Like;
            int arity_pick = rand_below(rng, graphs_only ? 3 : 2);
            SumEdge e;
            e.a = parent.name;
            e.b = child.name;
            if (arity_pick == 1) {
                ElementId fresh = "z" + std::to_string(t.fresh_counter++);
                if (adopt_shared_single(rng, parent, taken, fresh).empty() ||
                    adopt_shared_single(rng, child, taken, fresh + "_c").empty()) {
                    ok = false;
                    break;
                }
                // unify the two names
                if (child.kind == BasicNode::Kind::R10Like)
                    child.matrix = child.matrix.renamed({{fresh + "_c", fresh}});
                else
                    child.graph = child.graph.with_edge_ids_renamed({{fresh + "_c", fresh}});
                e.shared = {fresh};
                taken = set_union(taken, e.shared);
            } else if (arity_pick == 2) {
                int serial = t.fresh_counter++;
                ElementSet za = plant_shared_triple(rng, parent, serial);
                if (za.empty()) {
                    ok = false;
                    break;
                }
                BasicNode replanted = child;
                ElementSet zb = plant_shared_triple(rng, replanted, serial);
                if (zb.empty()) {
                    ok = false;
                    break;
                }
                child = replanted;
                e.shared = za;
                taken = set_union(taken, e.shared);
            }
            t.edges.push_back(std::move(e));
        }
        if (!ok) continue;
        try {
            t.validate();
        } catch (const std::exception&) {
            continue;
        }
        if (static_cast<int>(t.composed_elements().size()) > max_elements) continue;
        return t;
    }
    throw std::runtime_error("could not generate a conflict tree within the size budget");
}

ParsedInstance generate_instance(const GenOptions& opt) {
    Rng rng(opt.seed);
    ParsedInstance out;
    if (opt.kind == "graphic" || opt.kind == "cographic") {
        out.kind = opt.kind == "graphic" ? ParsedInstance::Kind::Graphic
                                         : ParsedInstance::Kind::Cographic;
        out.graph = random_connected_graph(rng, opt.max_vertices, 5, true);
    } else if (opt.kind == "matroid") {
        out.kind = ParsedInstance::Kind::Matroid;
        out.matroid = random_matroid(rng, 5, 10);
    } else if (opt.kind == "tree") {
        out.kind = ParsedInstance::Kind::Tree;
        out.tree = random_conflict_tree(rng, opt.max_nodes, opt.max_vertices, opt.max_elements);
    } else {
        throw std::invalid_argument("unknown generator kind '" + opt.kind + "'");
    }

    ElementSet ground = out.ground_elements();
    for (const auto& e : ground) {
        int roll = rand_below(rng, 8);
        out.weights[e] = roll == 0 ? 0 : 1 + rand_below(rng, std::max(1, opt.max_weight));
    }
    out.k = rand_below(rng, opt.max_k + 1);
    int nterm = rand_below(rng, std::min<int>(static_cast<int>(ground.size()),
                                              std::max(1, opt.max_k)) +
                           1);
    ElementSet pool = ground;
    for (int i = 0; i < nterm && !pool.empty(); ++i) {
        int pick = rand_below(rng, static_cast<int>(pool.size()));
        out.terminals.push_back(pool[pick]);
        pool.erase(pool.begin() + pick);
    }
    out.terminals = normalized(std::move(out.terminals));

    if (opt.with_restriction && !out.terminals.empty()) {
        ElementSet nonterm = set_difference(ground, out.terminals);
        if (!nonterm.empty()) {
            const ElementId es = nonterm[rand_below(rng, static_cast<int>(nonterm.size()))];
            out.estar = es;
            out.weights[es] = 0;
            out.tstar = out.terminals[rand_below(rng, static_cast<int>(out.terminals.size()))];
        }
    }
    return out;
}

}  // namespace spancover
