#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spancover/gf2.hpp"

namespace spancover {

using gf2::Mask;
using ElementId = std::string;
using ElementSet = std::vector<ElementId>;  // kept sorted and unique

ElementSet normalized(ElementSet s);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
ElementSet sym_difference(const ElementSet& a, const ElementSet& b);
bool set_contains(const ElementSet& a, const ElementId& e);

// Binary matroid given by a GF(2) representation. Columns are labelled with stable
// element ids; deleting or contracting other elements never renames survivors.
class BinaryMatroid {
public:
    BinaryMatroid() = default;
    BinaryMatroid(std::vector<ElementId> elements, gf2::Mat matrix);

    static BinaryMatroid r10();

    int size() const { return static_cast<int>(elements_.size()); }
    const std::vector<ElementId>& elements() const { return elements_; }
    const ElementId& element(int i) const { return elements_[i]; }
    const gf2::Mat& matrix() const { return mat_; }

    bool contains(const ElementId& e) const;
    int index_of(const ElementId& e) const;  // throws if absent
    Mask mask_of(const ElementSet& s) const;
    ElementSet ids_of(Mask m) const;
    Mask ground_mask() const { return gf2::full_mask(size()); }

    int rank(Mask s) const;
    int rank() const;  // rank of the full ground set, cached
    bool is_independent(Mask s) const { return rank(s) == gf2::popcount(s); }
    // F spans T iff rank(F u T) == rank(F). Disjointness is not required.
    bool spans(Mask f, Mask t) const { return rank(f | t) == rank(f); }
    // S is a cycle iff its columns sum to zero (disjoint union of circuits).
    bool is_cycle(Mask s) const { return mat_.column_sum(s) == 0; }
    bool is_circuit(Mask s) const;
    bool is_loop(int i) const { return mat_.column(i) == 0; }
    // Two elements are parallel iff they form a two-element circuit.
    bool parallel(int i, int j) const {
        return i != j && mat_.column(i) != 0 && mat_.column(i) == mat_.column(j);
    }

    // The unique circuit inside B u {e} for independent B with B u {e} dependent.
    Mask fundamental_circuit(Mask b, int e) const;

    BinaryMatroid dualized() const;
    BinaryMatroid deleted(Mask x) const;
    // Non-loops are pivoted out; contraction of a loop is deletion.
    BinaryMatroid contracted(Mask x) const;
    BinaryMatroid with_parallel(const ElementId& e, const ElementId& copy_id) const;
    BinaryMatroid restricted_to(Mask keep) const { return deleted(ground_mask() & ~keep); }
    BinaryMatroid renamed(const std::map<ElementId, ElementId>& renames) const;

    // All circuits of size <= size_bound. Refuses ground sets above `ground_cap`
    // since the enumeration is exponential and meant for small oracle inputs.
    std::vector<Mask> circuits_up_to(int size_bound, int ground_cap = 24) const;

    // True iff both matroids have the same ground set and identical independence
    // oracles (checked on every subset; both must be small).
    bool same_independence(const BinaryMatroid& other) const;

private:
    void rebuild_index();

    std::vector<ElementId> elements_;
    gf2::Mat mat_;
    std::map<ElementId, int> index_;
    mutable int full_rank_ = -1;
};

}  // namespace spancover
