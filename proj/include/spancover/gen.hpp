#pragma once

#include <cstdint>
#include <random>

#include "spancover/io.hpp"

namespace spancover {

// Seed-deterministic generators for solver corpora. Only raw engine draws are used,
// so identical seeds give byte-identical instances across platforms.
struct GenOptions {
    std::uint64_t seed = 1;
    std::string kind = "tree";  // graphic | cographic | matroid | tree
    int max_nodes = 3;
    int max_vertices = 7;
    int max_weight = 3;
    int max_k = 4;
    int max_elements = 14;  // cap on the composed ground set
    bool with_restriction = false;  // also pick e* and t* when possible
};

ParsedInstance generate_instance(const GenOptions& opt);

// Building blocks reused by the test suites.
using Rng = std::mt19937_64;
int rand_below(Rng& rng, int n);  // uniform in [0, n)
Multigraph random_connected_graph(Rng& rng, int max_vertices, int max_extra_edges,
                                  bool allow_loops);
BinaryMatroid random_matroid(Rng& rng, int max_rows, int max_cols);
ConflictTree random_conflict_tree(Rng& rng, int max_nodes, int max_vertices, int max_elements);

}  // namespace spancover
