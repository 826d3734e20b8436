#pragma once

#include "spancover/driver.hpp"

namespace spancover {

// One text format family with a single-line type header. Comment lines start with
// '#'. Weights default to 1 when omitted.
struct ParsedInstance {
    enum class Kind { Graphic, Cographic, Matroid, Tree };
    Kind kind = Kind::Graphic;
    Multigraph graph;      // graphic / cographic
    BinaryMatroid matroid;  // matroid
    ConflictTree tree;      // tree
    WeightMap weights;
    ElementSet terminals;
    int k = 0;
    std::optional<ElementId> estar, tstar;

    ElementSet ground_elements() const;
    BinaryMatroid instance_matroid() const;  // composes trees, dualizes cographic graphs
    Instance to_instance() const;
    TreeInstance to_tree_instance() const;  // kind == Tree only
};

ParsedInstance parse_instance_text(const std::string& text);
ParsedInstance parse_instance_file(const std::string& path);
std::string format_instance(const ParsedInstance& inst);
void write_instance_file(const ParsedInstance& inst, const std::string& path);

std::string format_matrix(const BinaryMatroid& m);
std::string format_graph(const Multigraph& g, const std::string& name);

}  // namespace spancover
