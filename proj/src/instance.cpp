#include "spancover/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace spancover {

int weight_of(const WeightMap& w, const ElementSet& s) {
    int total = 0;
    for (const auto& e : s) total += w.at(e);
    return total;
}

void Instance::validate() const {
    for (const auto& e : matroid.elements()) {
        auto it = weights.find(e);
        if (it == weights.end()) throw std::invalid_argument("missing weight for " + e);
        if (it->second < 0) throw std::invalid_argument("negative weight for " + e);
    }
    for (const auto& t : terminals)
        if (!matroid.contains(t)) throw std::invalid_argument("terminal not in ground set: " + t);
    if (k < 0) throw std::invalid_argument("negative budget");
}

Instance Instance::with_element_deleted(const ElementId& e) const {
    Instance out;
    out.matroid = matroid.deleted(gf2::bit(matroid.index_of(e)));
    out.weights = weights;
    out.weights.erase(e);
    out.terminals = set_difference(terminals, {e});
    out.k = k;
    return out;
}

void RestrictedInstance::validate() const {
    base.validate();
    if (!base.matroid.contains(estar)) throw std::invalid_argument("e* not in ground set");
    if (base.weights.at(estar) != 0) throw std::invalid_argument("e* must have weight 0");
    if (!set_contains(base.terminals, tstar)) throw std::invalid_argument("t* must be a terminal");
    if (set_contains(base.terminals, estar)) throw std::invalid_argument("e* must be a nonterminal");
}

bool witness_is_valid(const Instance& inst, const SolveResult& r) {
    if (!r.yes) return true;
    if (!r.opt_weight || !r.witness) return false;
    const ElementSet& f = *r.witness;
    if (!set_intersection(f, inst.terminals).empty()) return false;
    for (const auto& e : f)
        if (!inst.matroid.contains(e)) return false;
    if (weight_of(inst.weights, f) != *r.opt_weight || *r.opt_weight > inst.k) return false;
    return inst.matroid.spans(inst.matroid.mask_of(f), inst.terminal_mask());
}

namespace {

// Shared machinery for the plain and restricted rule sets. The restricted flavour
// keeps `estar` out of contraction/parallel deletion and `tstar` out of circuit
// deletion; eliminating one of them flips `demoted`.
struct Reducer {
    Instance inst;
    std::optional<ElementId> estar, tstar;
    bool demoted = false;
    ReductionTrace trace;

    bool restricted() const { return !demoted && estar.has_value(); }

    void record(const std::string& rule, ElementSet elems, int k_delta = 0) {
        trace.steps.push_back(TraceStep{rule, std::move(elems), k_delta});
    }

    // By-value ids: the callers' references often point into the matroid that the
    // surgery replaces.
    void delete_element(ElementId e) {
        inst.matroid = inst.matroid.deleted(gf2::bit(inst.matroid.index_of(e)));
        inst.weights.erase(e);
        inst.terminals = set_difference(inst.terminals, {e});
        if (estar && *estar == e) demoted = true;
        if (tstar && *tstar == e) demoted = true;
    }

    void contract_element(ElementId e) {
        inst.matroid = inst.matroid.contracted(gf2::bit(inst.matroid.index_of(e)));
        inst.weights.erase(e);
    }

    bool contract_zero_nonterminals() {
        for (const auto& e : inst.matroid.elements()) {
            if (set_contains(inst.terminals, e)) continue;
            if (restricted() && e == *estar) continue;
            if (inst.weights.at(e) != 0) continue;
            record(restricted() ? "zero*" : "zero", {e});
            contract_element(e);
            return true;
        }
        return false;
    }

    bool drop_terminal_circuit_element() {
        Mask tmask = inst.terminal_mask();
        if (inst.matroid.is_independent(tmask)) return false;
        // Shrink T to a circuit by greedy removal, then delete the max-id element
        // (avoiding t* in the restricted variant; a loop at t* is deleted outright).
        Mask circ = tmask;
        for (const auto& t : inst.terminals) {
            Mask without = circ & ~gf2::bit(inst.matroid.index_of(t));
            if (!inst.matroid.is_independent(without)) circ = without;
        }
        ElementSet celems = inst.matroid.ids_of(circ);
        ElementId victim;
        if (restricted()) {
            ElementSet allowed = set_difference(celems, {*tstar});
            if (allowed.empty()) {
                // circuit == {t*}: t* is a loop, delete it and demote
                victim = *tstar;
            } else {
                victim = allowed.back();
            }
        } else {
            victim = celems.back();
        }
        record(restricted() ? "terminal-circuit*" : "terminal-circuit", {victim});
        delete_element(victim);
        return true;
    }

    bool drop_nonterminal_loops() {
        for (const auto& e : inst.matroid.elements()) {
            if (set_contains(inst.terminals, e)) continue;
            if (!inst.matroid.is_loop(inst.matroid.index_of(e))) continue;
            record("loop", {e});
            delete_element(e);
            return true;
        }
        return false;
    }

    bool drop_parallel_nonterminal() {
        const auto& m = inst.matroid;
        for (int j = 0; j < m.size(); ++j) {
            const ElementId& victim = m.element(j);
            if (set_contains(inst.terminals, victim)) continue;
            if (restricted() && victim == *estar) continue;
            for (int i = 0; i < m.size(); ++i) {
                if (i == j || !m.parallel(i, j)) continue;
                const ElementId& keeper = m.element(i);
                if (set_contains(inst.terminals, keeper)) continue;
                if (restricted() && keeper == *estar) continue;
                int wk = inst.weights.at(keeper), wv = inst.weights.at(victim);
                // Keep the cheaper copy; on ties keep the lexicographically smaller id.
                if (wk < wv || (wk == wv && keeper < victim)) {
                    record(restricted() ? "parallel*" : "parallel", {victim});
                    delete_element(victim);
                    return true;
                }
            }
        }
        return false;
    }

    std::optional<Verdict> stopping_rule() {
        if (inst.terminals.empty()) return Verdict::Yes;
        int bound = restricted() ? inst.k + 1 : inst.k;
        if (static_cast<int>(inst.terminals.size()) == inst.matroid.size() ||
            static_cast<int>(inst.terminals.size()) > bound)
            return Verdict::No;
        return std::nullopt;
    }

    std::optional<Verdict> run() {
        while (true) {
            bool fired = contract_zero_nonterminals() || drop_terminal_circuit_element() ||
                         drop_nonterminal_loops() || drop_parallel_nonterminal();
            if (fired) continue;
            auto v = stopping_rule();
            if (v) record("stopping", {}, 0);
            trace.verdict = v;
            return v;
        }
    }
};

}  // namespace

PreprocessResult preprocess(const Instance& inst) {
    inst.validate();
    Reducer r{inst, std::nullopt, std::nullopt, false, {}};
    PreprocessResult out;
    out.verdict = r.run();
    out.trace = std::move(r.trace);
    if (!out.verdict) out.instance = std::move(r.inst);
    return out;
}

RestrictedPreprocessResult preprocess_restricted(const RestrictedInstance& inst) {
    inst.validate();
    Reducer r{inst.base, inst.estar, inst.tstar, false, {}};
    RestrictedPreprocessResult out;
    out.verdict = r.run();
    out.trace = std::move(r.trace);
    if (!out.verdict) {
        if (r.demoted)
            out.demoted = std::move(r.inst);
        else
            out.restricted = RestrictedInstance{std::move(r.inst), inst.estar, inst.tstar};
    }
    return out;
}

Multigraph replay_trace_on_graph(const Multigraph& g, const ReductionTrace& trace, GraphKind kind) {
    Multigraph cur = g;
    for (const auto& step : trace.steps) {
        if (step.elements.empty()) continue;
        bool contracts = step.rule == "zero" || step.rule == "zero*";
        // In a bond matroid, element contraction deletes the edge and vice versa.
        if (kind == GraphKind::Cographic) contracts = !contracts;
        for (const auto& e : step.elements) {
            cur = contracts ? cur.with_edge_contracted(e) : cur.with_edges_deleted({e});
        }
    }
    return cur;
}

}  // namespace spancover
