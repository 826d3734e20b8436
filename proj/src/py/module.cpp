#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spancover/gen.hpp"
#include "spancover/oracle.hpp"

namespace py = pybind11;
using namespace spancover;

namespace {

py::dict result_dict(const SolveResult& r) {
    py::dict d;
    d["yes"] = r.yes;
    d["weight"] = r.opt_weight ? py::object(py::int_(*r.opt_weight)) : py::none();
    if (r.witness)
        d["witness"] = *r.witness;
    else
        d["witness"] = py::none();
    return d;
}

SolveResult solve_parsed(const ParsedInstance& pi, int jobs) {
    if (pi.estar) {
        RestrictedInstance ri{pi.to_instance(), *pi.estar, *pi.tstar};
        if (pi.kind == ParsedInstance::Kind::Graphic) return solve_graphic_restricted(ri, pi.graph);
        if (pi.kind == ParsedInstance::Kind::Cographic)
            return solve_cographic_restricted(ri, pi.graph);
        throw std::runtime_error("restricted instances need a graph kind");
    }
    switch (pi.kind) {
        case ParsedInstance::Kind::Graphic:
            return solve_graphic(pi.to_instance(), pi.graph);
        case ParsedInstance::Kind::Cographic:
            return solve_cographic(pi.to_instance(), pi.graph);
        case ParsedInstance::Kind::Matroid:
            return solve_r10(pi.to_instance());
        case ParsedInstance::Kind::Tree:
            return solve(pi.to_tree_instance(), nullptr, jobs);
    }
    throw std::logic_error("bad instance kind");
}

}  // namespace

PYBIND11_MODULE(_spancover, m) {
    m.doc() = "exact space cover solver for regular matroids";

    m.def(
        "solve_text",
        [](const std::string& text, int jobs) {
            ParsedInstance pi = parse_instance_text(text);
            return result_dict(solve_parsed(pi, jobs));
        },
        py::arg("text"), py::arg("jobs") = 1,
        "Solve an instance given in the text format; returns yes/weight/witness.");

    m.def(
        "oracle_text",
        [](const std::string& text) {
            ParsedInstance pi = parse_instance_text(text);
            if (pi.estar)
                return result_dict(oracle::brute_restricted(
                    RestrictedInstance{pi.to_instance(), *pi.estar, *pi.tstar}));
            return result_dict(oracle::brute_space_cover(pi.to_instance()));
        },
        py::arg("text"), "Brute-force reference answer for a small instance.");

    m.def(
        "verify_text",
        [](const std::string& text) {
            ParsedInstance pi = parse_instance_text(text);
            SolveResult got = solve_parsed(pi, 1);
            SolveResult want = pi.estar
                                   ? oracle::brute_restricted(RestrictedInstance{
                                         pi.to_instance(), *pi.estar, *pi.tstar})
                                   : oracle::brute_space_cover(pi.to_instance());
            if (got.yes != want.yes) return false;
            return !got.yes || *got.opt_weight == *want.opt_weight;
        },
        py::arg("text"), "Solver and oracle agree on answer and optimal weight.");

    m.def(
        "generate",
        [](std::uint64_t seed, const std::string& kind, int max_k, int max_weight,
           bool restricted) {
            GenOptions opt;
            opt.seed = seed;
            opt.kind = kind;
            opt.max_k = max_k;
            opt.max_weight = max_weight;
            opt.with_restriction = restricted;
            return format_instance(generate_instance(opt));
        },
        py::arg("seed"), py::arg("kind") = "tree", py::arg("max_k") = 4,
        py::arg("max_weight") = 3, py::arg("restricted") = false,
        "Deterministic random instance in the text format.");

    m.def(
        "rank_reduce_text",
        [](const std::string& text, int h, int k) {
            ParsedInstance pi = parse_instance_text(text);
            return result_dict(rank_reduction(pi.instance_matroid(), h, k));
        },
        py::arg("text"), py::arg("h"), py::arg("k"),
        "Can deleting at most k elements drop the rank by at least h?");
}
