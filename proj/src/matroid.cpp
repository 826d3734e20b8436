#include "spancover/matroid.hpp"

#include <algorithm>
#include <stdexcept>

namespace spancover {

ElementSet normalized(ElementSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

ElementSet sym_difference(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool set_contains(const ElementSet& a, const ElementId& e) {
    return std::binary_search(a.begin(), a.end(), e);
}

BinaryMatroid::BinaryMatroid(std::vector<ElementId> elements, gf2::Mat matrix)
    : elements_(std::move(elements)), mat_(std::move(matrix)) {
    if (static_cast<int>(elements_.size()) != mat_.cols())
        throw std::invalid_argument("element list does not match matrix width");
    rebuild_index();
}

void BinaryMatroid::rebuild_index() {
    index_.clear();
    for (int i = 0; i < size(); ++i) {
        if (!index_.emplace(elements_[i], i).second)
            throw std::invalid_argument("duplicate element id: " + elements_[i]);
    }
    full_rank_ = -1;
}

BinaryMatroid BinaryMatroid::r10() {
    // 5x10 matrix whose columns are the ten distinct weight-3 binary 5-vectors.
    gf2::Mat m(5, 10);
    int c = 0;
    std::vector<ElementId> ids;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int d = b + 1; d < 5; ++d) {
                m.set_column(c, gf2::bit(a) | gf2::bit(b) | gf2::bit(d));
                ids.push_back("r" + std::to_string(c));
                ++c;
            }
    return BinaryMatroid(std::move(ids), std::move(m));
}

bool BinaryMatroid::contains(const ElementId& e) const { return index_.count(e) > 0; }

int BinaryMatroid::index_of(const ElementId& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw std::out_of_range("unknown element id: " + e);
    return it->second;
}

Mask BinaryMatroid::mask_of(const ElementSet& s) const {
    Mask m = 0;
    for (const auto& e : s) m |= gf2::bit(index_of(e));
    return m;
}

ElementSet BinaryMatroid::ids_of(Mask m) const {
    ElementSet out;
    for (Mask it = m; it; it &= it - 1) out.push_back(elements_[gf2::lowest_bit(it)]);
    return normalized(std::move(out));
}

int BinaryMatroid::rank(Mask s) const { return gf2::rank(mat_, s); }

int BinaryMatroid::rank() const {
    if (full_rank_ < 0) full_rank_ = gf2::rank(mat_, ground_mask());
    return full_rank_;
}

bool BinaryMatroid::is_circuit(Mask s) const {
    int n = gf2::popcount(s);
    if (n == 0 || rank(s) != n - 1) return false;
    for (Mask it = s; it; it &= it - 1) {
        Mask sub = s & ~(it & -it);
        if (rank(sub) != n - 1) return false;
    }
    return true;
}

Mask BinaryMatroid::fundamental_circuit(Mask b, int e) const {
    if (!is_independent(b)) throw std::invalid_argument("fundamental_circuit: B is dependent");
    Mask combo = 0;
    if (((b >> e) & 1) || !gf2::solve_in_span(mat_, b, mat_.column(e), &combo))
        throw std::invalid_argument("fundamental_circuit: B u {e} is independent");
    return combo | gf2::bit(e);
}

BinaryMatroid BinaryMatroid::dualized() const {
    // Rows of the dual representation form a basis of the null space of the primal,
    // with columns kept in the original element order.
    std::vector<Mask> cycles = gf2::nullspace(mat_);
    gf2::Mat dual(static_cast<int>(cycles.size()), size());
    for (int r = 0; r < static_cast<int>(cycles.size()); ++r)
        for (int c = 0; c < size(); ++c)
            if ((cycles[r] >> c) & 1) dual.set(r, c, true);
    return BinaryMatroid(elements_, std::move(dual));
}

BinaryMatroid BinaryMatroid::deleted(Mask x) const {
    std::vector<ElementId> ids;
    for (int i = 0; i < size(); ++i)
        if (!((x >> i) & 1)) ids.push_back(elements_[i]);
    return BinaryMatroid(std::move(ids), mat_.with_columns_erased(x));
}

BinaryMatroid BinaryMatroid::contracted(Mask x) const {
    gf2::Mat m = mat_;
    std::vector<ElementId> ids = elements_;
    // Contract one element at a time; loops degenerate to deletion.
    while (x) {
        int c = gf2::lowest_bit(x);
        Mask col = m.column(c);
        if (col != 0) {
            int pivot = gf2::lowest_bit(col);
            for (int j = 0; j < m.cols(); ++j)
                if (j != c && m.get(pivot, j)) m.set_column(j, m.column(j) ^ col);
            m = m.with_row_erased(pivot);
        }
        m = m.with_columns_erased(gf2::bit(c));
        ids.erase(ids.begin() + c);
        // Re-align the remaining selection mask after dropping column c.
        Mask low = gf2::full_mask(c);
        x = ((x >> 1) & ~low) | (x & low & ~gf2::bit(c));
    }
    return BinaryMatroid(std::move(ids), std::move(m));
}

BinaryMatroid BinaryMatroid::with_parallel(const ElementId& e, const ElementId& copy_id) const {
    int i = index_of(e);
    if (is_loop(i)) throw std::invalid_argument("cannot add a parallel element to a loop");
    gf2::Mat m = mat_;
    m.append_column(mat_.column(i));
    std::vector<ElementId> ids = elements_;
    ids.push_back(copy_id);
    return BinaryMatroid(std::move(ids), std::move(m));
}

BinaryMatroid BinaryMatroid::renamed(const std::map<ElementId, ElementId>& renames) const {
    std::vector<ElementId> ids = elements_;
    for (auto& id : ids) {
        auto it = renames.find(id);
        if (it != renames.end()) id = it->second;
    }
    return BinaryMatroid(std::move(ids), mat_);
}

std::vector<Mask> BinaryMatroid::circuits_up_to(int size_bound, int ground_cap) const {
    if (size() > ground_cap)
        throw std::length_error("circuit enumeration refused: ground set larger than cap");
    std::vector<Mask> out;
    if (size_bound <= 0) return out;
    size_bound = std::min(size_bound, size());
    // Walk subsets by size using the standard next-combination bit trick.
    for (int s = 1; s <= size_bound; ++s) {
        Mask subset = gf2::full_mask(s);
        Mask limit = gf2::bit(size() - 1) << 1;
        while (subset < limit) {
            if (is_circuit(subset)) out.push_back(subset);
            Mask c = subset & -subset;
            Mask r = subset + c;
            subset = (((r ^ subset) >> 2) / c) | r;
            if (r >= limit) break;
        }
    }
    return out;
}

bool BinaryMatroid::same_independence(const BinaryMatroid& other) const {
    if (size() != other.size() || size() > 20) return false;
    ElementSet mine = normalized(elements_);
    if (mine != normalized(other.elements())) return false;
    for (Mask s = 0; s <= ground_mask(); ++s) {
        ElementSet ids = ids_of(s);
        if (is_independent(s) != other.is_independent(other.mask_of(ids))) return false;
    }
    return true;
}

}  // namespace spancover
