#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "spancover/gen.hpp"
#include "spancover/oracle.hpp"

using namespace spancover;

namespace {

struct RunReport {
    SolveResult result;
    SolveStats stats;
    double wall_seconds = 0;
    std::string trace_path;
};

void print_report(const RunReport& rep) {
    const SolveResult& r = rep.result;
    if (r.yes) {
        std::cout << "answer: yes, optimal weight " << *r.opt_weight << "\n";
        std::cout << "witness:";
        for (const auto& e : *r.witness) std::cout << " " << e;
        std::cout << "\n";
    } else {
        std::cout << "answer: no\n";
    }
    std::cout << "search: " << rep.stats.dispatch_calls << " steps, "
              << rep.stats.branch_invocations << " branchings, " << rep.stats.search_leaves
              << " leaves, depth " << rep.stats.max_branch_depth << "\n";
    std::cout << "wall: " << rep.wall_seconds << "s\n";
    if (!rep.trace_path.empty()) std::cout << "trace: " << rep.trace_path << "\n";
    std::cout << "RESULT " << (r.yes ? "yes" : "no") << " "
              << (r.yes ? std::to_string(*r.opt_weight) : "-") << "\n";
}

// Verifies a witness against the instance matroid, independently of the solver path.
void check_witness(const Instance& inst, const SolveResult& r) {
    if (!witness_is_valid(inst, r))
        throw std::runtime_error("internal error: witness failed re-verification");
}

ParsedInstance load(const std::string& path, int k_override, bool dual) {
    ParsedInstance pi = parse_instance_file(path);
    if (k_override >= 0) pi.k = k_override;
    if (!dual) return pi;
    // The dual swaps the cycle/bond reading of a graph; matrices are dualized and
    // trees composed first (small instances only).
    switch (pi.kind) {
        case ParsedInstance::Kind::Graphic:
            pi.kind = ParsedInstance::Kind::Cographic;
            break;
        case ParsedInstance::Kind::Cographic:
            pi.kind = ParsedInstance::Kind::Graphic;
            break;
        case ParsedInstance::Kind::Matroid:
            pi.matroid = pi.matroid.dualized();
            break;
        case ParsedInstance::Kind::Tree: {
            BinaryMatroid m = compose_tree(pi.tree).dualized();
            if (m.size() > 20) throw std::runtime_error("tree too large to solve dually");
            pi.kind = ParsedInstance::Kind::Matroid;
            pi.matroid = std::move(m);
            break;
        }
    }
    return pi;
}

RunReport run_solve(const ParsedInstance& pi, int jobs, const std::string& trace_path) {
    RunReport rep;
    auto start = std::chrono::steady_clock::now();
    if (pi.estar) {
        RestrictedInstance ri{pi.to_instance(), *pi.estar, *pi.tstar};
        switch (pi.kind) {
            case ParsedInstance::Kind::Graphic:
                rep.result = solve_graphic_restricted(ri, pi.graph);
                break;
            case ParsedInstance::Kind::Cographic:
                rep.result = solve_cographic_restricted(ri, pi.graph);
                break;
            default:
                throw std::runtime_error("restricted instances need a graph kind");
        }
    } else {
        switch (pi.kind) {
            case ParsedInstance::Kind::Graphic:
                rep.result = solve_graphic(pi.to_instance(), pi.graph);
                break;
            case ParsedInstance::Kind::Cographic:
                rep.result = solve_cographic(pi.to_instance(), pi.graph);
                break;
            case ParsedInstance::Kind::Matroid:
                rep.result = solve_r10(pi.to_instance());
                break;
            case ParsedInstance::Kind::Tree:
                rep.result = solve(pi.to_tree_instance(), &rep.stats, jobs);
                break;
        }
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check_witness(pi.to_instance(), rep.result);
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        for (const auto& line : rep.stats.trace) out << line << "\n";
        rep.trace_path = trace_path;
    }
    return rep;
}

// Compares against the brute-force oracle; returns false on disagreement.
bool verify_against_oracle(const ParsedInstance& pi, const SolveResult& r) {
    Instance inst = pi.to_instance();
    SolveResult expected = pi.estar
                               ? oracle::brute_restricted(RestrictedInstance{
                                     inst, *pi.estar, *pi.tstar})
                               : oracle::brute_space_cover(inst);
    if (expected.yes != r.yes) return false;
    if (r.yes && *expected.opt_weight != *r.opt_weight) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact space cover solver for regular matroids"};
    app.set_help_flag("--help", "print usage");  // frees -h / --h for the rank target
    app.require_subcommand(1);

    std::string path, trace_path, out_path;
    int k_override = -1, jobs = 1, h = 1;
    bool dual = false, verify = false;
    std::uint64_t seed = 1;
    GenOptions gen_opt;

    auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
    solve_cmd->add_option("file", path)->required();
    solve_cmd->add_option("--k", k_override, "override the budget");
    solve_cmd->add_flag("--dual", dual, "solve on the dual matroid first");
    solve_cmd->add_flag("--verify", verify, "cross-check against the brute-force oracle");
    solve_cmd->add_option("--jobs", jobs, "parallel branch evaluation");
    solve_cmd->add_option("--trace", trace_path, "write the rule trace to a file");

    auto* verify_cmd = app.add_subcommand("verify", "solve and compare with the oracle");
    verify_cmd->add_option("file", path)->required();
    verify_cmd->add_option("--k", k_override, "override the budget");
    verify_cmd->add_flag("--dual", dual, "verify on the dual matroid");
    verify_cmd->add_option("--jobs", jobs, "parallel branch evaluation");

    auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
    gen_cmd->add_option("out", out_path)->required();
    gen_cmd->add_option("--seed", seed)->required();
    gen_cmd->add_option("--kind", gen_opt.kind, "graphic|cographic|matroid|tree");
    gen_cmd->add_option("--nodes", gen_opt.max_nodes, "max conflict-tree nodes");
    gen_cmd->add_option("--max-weight", gen_opt.max_weight);
    gen_cmd->add_option("--max-k", gen_opt.max_k);
    gen_cmd->add_flag("--restricted", gen_opt.with_restriction, "also draw e* and t*");

    auto* rr_cmd = app.add_subcommand("rank-reduce", "rank h-reduction");
    rr_cmd->add_option("file", path)->required();
    rr_cmd->add_option("--h", h, "required rank drop")->required();
    rr_cmd->add_option("--k", k_override)->required();
    rr_cmd->add_flag("--verify", verify, "cross-check against the brute-force oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(solve_cmd) || app.got_subcommand(verify_cmd)) {
            bool do_verify = verify || app.got_subcommand(verify_cmd);
            ParsedInstance pi = load(path, k_override, dual);
            RunReport rep = run_solve(pi, jobs, trace_path);
            print_report(rep);
            if (do_verify) {
                if (pi.instance_matroid().size() >
                    oracle::default_budget().max_ground) {
                    std::cout << "verification skipped: instance above the oracle cap\n";
                } else if (verify_against_oracle(pi, rep.result)) {
                    std::cout << "verification: ok\n";
                } else {
                    std::cout << "verification: MISMATCH against the oracle\n";
                    return 2;
                }
            }
        } else if (app.got_subcommand(gen_cmd)) {
            gen_opt.seed = seed;
            ParsedInstance pi = generate_instance(gen_opt);
            write_instance_file(pi, out_path);
            std::cout << "wrote " << out_path << "\n";
        } else if (app.got_subcommand(rr_cmd)) {
            ParsedInstance pi = parse_instance_file(path);
            BinaryMatroid m = pi.instance_matroid();
            auto start = std::chrono::steady_clock::now();
            SolveResult r = rank_reduction(m, h, k_override);
            double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            if (r.yes) {
                std::cout << "answer: yes, " << *r.opt_weight << " deletions\nwitness:";
                for (const auto& e : *r.witness) std::cout << " " << e;
                std::cout << "\n";
            } else {
                std::cout << "answer: no\n";
            }
            std::cout << "wall: " << secs << "s\n";
            std::cout << "RESULT " << (r.yes ? "yes" : "no") << " "
                      << (r.yes ? std::to_string(*r.opt_weight) : "-") << "\n";
            if (verify) {
                SolveResult expected = oracle::brute_rank_reduction(m, h, k_override);
                if (expected.yes != r.yes ||
                    (r.yes && *expected.opt_weight != *r.opt_weight)) {
                    std::cout << "verification: MISMATCH against the oracle\n";
                    return 2;
                }
                std::cout << "verification: ok\n";
            }
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
