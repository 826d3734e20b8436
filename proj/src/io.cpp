#include "spancover/io.hpp"

#include <fstream>
#include <sstream>

namespace spancover {

namespace {

struct Lines {
    std::vector<std::vector<std::string>> toks;  // tokenized non-empty lines
    std::vector<int> numbers;                    // original line numbers
    size_t pos = 0;

    explicit Lines(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::istringstream ls(line);
            std::vector<std::string> tk;
            std::string t;
            while (ls >> t) tk.push_back(t);
            if (tk.empty()) continue;
            toks.push_back(std::move(tk));
            numbers.push_back(no);
        }
    }

    bool done() const { return pos >= toks.size(); }
    const std::vector<std::string>& peek() const { return toks[pos]; }
    const std::vector<std::string>& next() { return toks[pos++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        int no = pos < numbers.size() ? numbers[pos] : (numbers.empty() ? 0 : numbers.back());
        throw std::runtime_error("line " + std::to_string(no) + ": " + msg);
    }
};

int to_int(Lines& in, const std::string& s) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        in.fail("expected an integer, got '" + s + "'");
    }
}

Multigraph parse_graph_block(Lines& in) {
    const auto& head = in.peek();
    if (head[0] != "graph" || head.size() != 2) in.fail("expected 'graph <name>'");
    in.next();
    Multigraph g;
    while (!in.done()) {
        const auto& tk = in.peek();
        if (tk[0] == "v") {
            if (tk.size() != 2) in.fail("expected 'v <id>'");
            g.add_vertex(tk[1]);
            in.next();
        } else if (tk[0] == "e") {
            if (tk.size() != 4) in.fail("expected 'e <id> <u> <v>'");
            if (g.has_edge(tk[1])) in.fail("duplicate edge id '" + tk[1] + "'");
            g.add_edge(tk[1], tk[2], tk[3]);
            in.next();
        } else {
            break;
        }
    }
    return g;
}

BinaryMatroid parse_matrix_block(Lines& in) {
    const auto& head = in.peek();
    if (head[0] != "matrix" || head.size() != 3) in.fail("expected 'matrix <rows> <cols>'");
    int rows = to_int(in, head[1]);
    int cols = to_int(in, head[2]);
    in.next();
    if (in.done() || in.peek()[0] != "ids") in.fail("expected 'ids <id...>' after matrix header");
    const auto ids_line = in.next();
    if (static_cast<int>(ids_line.size()) != cols + 1)
        throw std::runtime_error("matrix header: expected " + std::to_string(cols) +
                                 " element ids");
    std::vector<ElementId> ids(ids_line.begin() + 1, ids_line.end());
    gf2::Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (in.done()) in.fail("missing matrix row");
        const auto& tk = in.next();
        if (tk.size() != 1 || static_cast<int>(tk[0].size()) != cols)
            throw std::runtime_error("matrix row must be " + std::to_string(cols) +
                                     " characters of 0/1");
        for (int c = 0; c < cols; ++c) {
            if (tk[0][c] != '0' && tk[0][c] != '1')
                throw std::runtime_error("matrix rows use characters 0 and 1 only");
            if (tk[0][c] == '1') m.set(r, c, true);
        }
    }
    return BinaryMatroid(std::move(ids), std::move(m));
}

}  // namespace

ElementSet ParsedInstance::ground_elements() const {
    switch (kind) {
        case Kind::Graphic:
        case Kind::Cographic:
            return graph.edge_ids();
        case Kind::Matroid:
            return normalized(matroid.elements());
        case Kind::Tree:
            return tree.composed_elements();
    }
    throw std::logic_error("bad instance kind");
}

BinaryMatroid ParsedInstance::instance_matroid() const {
    switch (kind) {
        case Kind::Graphic:
            return graph.cycle_matroid();
        case Kind::Cographic:
            return graph.bond_matroid();
        case Kind::Matroid:
            return matroid;
        case Kind::Tree:
            return compose_tree(tree);
    }
    throw std::logic_error("bad instance kind");
}

Instance ParsedInstance::to_instance() const {
    return Instance{instance_matroid(), weights, terminals, k};
}

TreeInstance ParsedInstance::to_tree_instance() const {
    if (kind != Kind::Tree) throw std::logic_error("not a tree instance");
    return TreeInstance{tree, weights, terminals, k};
}

ParsedInstance parse_instance_text(const std::string& text) {
    Lines in(text);
    if (in.done()) throw std::runtime_error("line 0: empty instance");
    const auto& head = in.peek();
    if (head[0] != "instance" || head.size() != 2)
        in.fail("expected 'instance graphic|cographic|matroid|tree'");
    ParsedInstance out;
    const std::string& kind = head[1];
    in.next();
    if (kind == "graphic")
        out.kind = ParsedInstance::Kind::Graphic;
    else if (kind == "cographic")
        out.kind = ParsedInstance::Kind::Cographic;
    else if (kind == "matroid")
        out.kind = ParsedInstance::Kind::Matroid;
    else if (kind == "tree")
        out.kind = ParsedInstance::Kind::Tree;
    else
        in.fail("unknown instance kind '" + kind + "'");

    if (out.kind == ParsedInstance::Kind::Graphic || out.kind == ParsedInstance::Kind::Cographic) {
        if (in.done()) in.fail("expected a graph block");
        out.graph = parse_graph_block(in);
    } else if (out.kind == ParsedInstance::Kind::Matroid) {
        if (in.done()) in.fail("expected a matrix block");
        out.matroid = parse_matrix_block(in);
    } else {
        while (!in.done() && in.peek()[0] == "node") {
            const auto head_tk = in.next();
            if (head_tk.size() != 3) in.fail("expected 'node <name> graphic|cographic|r10like'");
            BasicNode n;
            n.name = head_tk[1];
            if (head_tk[2] == "graphic") {
                n.kind = BasicNode::Kind::Graphic;
                n.graph = parse_graph_block(in);
            } else if (head_tk[2] == "cographic") {
                n.kind = BasicNode::Kind::Cographic;
                n.graph = parse_graph_block(in);
            } else if (head_tk[2] == "r10like") {
                n.kind = BasicNode::Kind::R10Like;
                n.matrix = parse_matrix_block(in);
            } else {
                in.fail("unknown node kind '" + head_tk[2] + "'");
            }
            out.tree.nodes.push_back(std::move(n));
        }
        if (out.tree.nodes.empty()) in.fail("a tree instance needs at least one node");
        out.tree.root = out.tree.nodes.front().name;
        while (!in.done() && in.peek()[0] == "sumedge") {
            const auto tk = in.next();
            if (tk.size() != 3 && tk.size() != 4 && tk.size() != 6)
                throw std::runtime_error(
                    "sumedge " + (tk.size() >= 3 ? tk[1] + "-" + tk[2] : std::string("?")) +
                    ": needs 0, 1 or 3 shared element ids");
            SumEdge e;
            e.a = tk[1];
            e.b = tk[2];
            for (size_t i = 3; i < tk.size(); ++i) e.shared.push_back(tk[i]);
            e.shared = normalized(std::move(e.shared));
            if (tk.size() >= 4 && e.shared.size() != tk.size() - 3)
                throw std::runtime_error("sumedge " + e.a + "-" + e.b +
                                         ": repeated shared element id");
            out.tree.edges.push_back(std::move(e));
        }
    }

    while (!in.done()) {
        const auto tk = in.next();
        if (tk[0] == "w" && tk.size() == 3)
            out.weights[tk[1]] = to_int(in, tk[2]);
        else if (tk[0] == "t" && tk.size() == 2)
            out.terminals.push_back(tk[1]);
        else if (tk[0] == "k" && tk.size() == 2)
            out.k = to_int(in, tk[1]);
        else if (tk[0] == "estar" && tk.size() == 2)
            out.estar = tk[1];
        else if (tk[0] == "tstar" && tk.size() == 2)
            out.tstar = tk[1];
        else
            throw std::runtime_error("unrecognized directive '" + tk[0] + "'");
    }
    out.terminals = normalized(std::move(out.terminals));

    ElementSet ground = out.ground_elements();
    for (const auto& [e, w] : out.weights) {
        if (!set_contains(ground, e))
            throw std::runtime_error("weight for unknown element '" + e + "'");
        if (w < 0) throw std::runtime_error("negative weight for '" + e + "'");
    }
    for (const auto& e : ground)
        if (!out.weights.count(e)) out.weights[e] = 1;
    for (const auto& t : out.terminals)
        if (!set_contains(ground, t))
            throw std::runtime_error("terminal '" + t + "' is not a ground element");
    if (out.estar) {
        if (!set_contains(ground, *out.estar))
            throw std::runtime_error("estar is not a ground element");
        out.weights[*out.estar] = 0;
        if (set_contains(out.terminals, *out.estar))
            throw std::runtime_error("estar must be a nonterminal");
    }
    if (out.tstar && !set_contains(out.terminals, *out.tstar))
        throw std::runtime_error("tstar must be a terminal");
    if (out.estar.has_value() != out.tstar.has_value())
        throw std::runtime_error("estar and tstar come together");
    if (out.kind == ParsedInstance::Kind::Tree) out.tree.validate();
    return out;
}

ParsedInstance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

std::string format_matrix(const BinaryMatroid& m) {
    std::ostringstream out;
    out << "matrix " << m.matrix().rows() << " " << m.size() << "\n";
    out << "ids";
    for (const auto& e : m.elements()) out << " " << e;
    out << "\n";
    for (int r = 0; r < m.matrix().rows(); ++r) {
        for (int c = 0; c < m.size(); ++c) out << (m.matrix().get(r, c) ? '1' : '0');
        out << "\n";
    }
    return out.str();
}

std::string format_graph(const Multigraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << "\n";
    for (const auto& v : g.vertices()) out << "v " << v << "\n";
    for (const auto& e : g.edges()) out << "e " << e.id << " " << e.u << " " << e.v << "\n";
    return out.str();
}

std::string format_instance(const ParsedInstance& inst) {
    std::ostringstream out;
    switch (inst.kind) {
        case ParsedInstance::Kind::Graphic:
            out << "instance graphic\n" << format_graph(inst.graph, "g");
            break;
        case ParsedInstance::Kind::Cographic:
            out << "instance cographic\n" << format_graph(inst.graph, "g");
            break;
        case ParsedInstance::Kind::Matroid:
            out << "instance matroid\n" << format_matrix(inst.matroid);
            break;
        case ParsedInstance::Kind::Tree: {
            out << "instance tree\n";
            for (const auto& n : inst.tree.nodes) {
                out << "node " << n.name << " ";
                switch (n.kind) {
                    case BasicNode::Kind::Graphic:
                        out << "graphic\n" << format_graph(n.graph, n.name);
                        break;
                    case BasicNode::Kind::Cographic:
                        out << "cographic\n" << format_graph(n.graph, n.name);
                        break;
                    case BasicNode::Kind::R10Like:
                        out << "r10like\n" << format_matrix(n.matrix);
                        break;
                }
            }
            for (const auto& e : inst.tree.edges) {
                out << "sumedge " << e.a << " " << e.b;
                for (const auto& x : e.shared) out << " " << x;
                out << "\n";
            }
            break;
        }
    }
    for (const auto& [e, w] : inst.weights) out << "w " << e << " " << w << "\n";
    for (const auto& t : inst.terminals) out << "t " << t << "\n";
    out << "k " << inst.k << "\n";
    if (inst.estar) out << "estar " << *inst.estar << "\n";
    if (inst.tstar) out << "tstar " << *inst.tstar << "\n";
    return out.str();
}

void write_instance_file(const ParsedInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << format_instance(inst);
}

}  // namespace spancover
