#include "spancover/gf2.hpp"

#include <algorithm>

namespace spancover::gf2 {

Mat Mat::with_columns_erased(Mask cols) const {
    Mat out(rows_, 0);
    for (int c = 0; c < this->cols(); ++c)
        if (!((cols >> c) & 1)) out.append_column(col_[c]);
    return out;
}

Mat Mat::with_row_erased(int r) const {
    Mat out(rows_ - 1, this->cols());
    Mask low = full_mask(r);
    for (int c = 0; c < this->cols(); ++c) {
        Mask v = col_[c];
        out.set_column(c, (v & low) | ((v >> 1) & ~low));
    }
    return out;
}

int rank(const Mat& m, Mask cols) {
    // Incremental xor-basis over row-index bitsets.
    Mask basis[64] = {0};
    int r = 0;
    for (Mask it = cols; it; it &= it - 1) {
        Mask v = m.column(lowest_bit(it));
        while (v) {
            int lead = lowest_bit(v);
            if (!basis[lead]) {
                basis[lead] = v;
                ++r;
                break;
            }
            v ^= basis[lead];
        }
    }
    return r;
}

int rank(const Mat& m) { return rank(m, full_mask(m.cols())); }

Rref rref(const Mat& m) {
    Rref out;
    out.mat = m;
    out.pivot_row_of_col.assign(m.cols(), -1);
    int next_row = 0;
    for (int c = 0; c < m.cols() && next_row < m.rows(); ++c) {
        // Find a row >= next_row with a 1 in column c.
        int pivot = -1;
        for (int r = next_row; r < m.rows(); ++r)
            if (out.mat.get(r, c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != next_row) {
            // Swap rows pivot <-> next_row across all columns.
            for (int j = 0; j < m.cols(); ++j) {
                bool a = out.mat.get(next_row, j), b = out.mat.get(pivot, j);
                out.mat.set(next_row, j, b);
                out.mat.set(pivot, j, a);
            }
        }
        for (int r = 0; r < m.rows(); ++r) {
            if (r != next_row && out.mat.get(r, c)) {
                for (int j = 0; j < m.cols(); ++j)
                    if (out.mat.get(next_row, j)) out.mat.set(r, j, !out.mat.get(r, j));
            }
        }
        out.pivot_row_of_col[c] = next_row;
        ++next_row;
    }
    out.rank = next_row;
    return out;
}

std::vector<Mask> nullspace(const Mat& m) {
    Rref rr = rref(m);
    std::vector<Mask> basis;
    for (int j = 0; j < m.cols(); ++j) {
        if (rr.pivot_row_of_col[j] >= 0) continue;
        Mask v = bit(j);
        for (int c = 0; c < m.cols(); ++c) {
            int pr = rr.pivot_row_of_col[c];
            if (pr >= 0 && rr.mat.get(pr, j)) v |= bit(c);
        }
        basis.push_back(v);
    }
    return basis;
}

Mat parity_check(const std::vector<Mask>& generators, int n) {
    // Rows of the result = basis of the orthogonal complement of span(generators),
    // i.e. the null space of the matrix whose rows are the generators.
    Mat g(static_cast<int>(generators.size()), n);
    for (int r = 0; r < static_cast<int>(generators.size()); ++r)
        for (int c = 0; c < n; ++c)
            if ((generators[r] >> c) & 1) g.set(r, c, true);
    std::vector<Mask> comp = nullspace(g);
    Mat out(static_cast<int>(comp.size()), n);
    for (int r = 0; r < static_cast<int>(comp.size()); ++r)
        for (int c = 0; c < n; ++c)
            if ((comp[r] >> c) & 1) out.set(r, c, true);
    return out;
}

bool solve_in_span(const Mat& m, Mask candidate_cols, Mask target, Mask* combination) {
    // Xor-basis insertion that remembers which original columns built each basis vector.
    Mask basis[64] = {0};
    Mask made_of[64] = {0};
    for (Mask it = candidate_cols; it; it &= it - 1) {
        int c = lowest_bit(it);
        Mask v = m.column(c);
        Mask rep = bit(c);
        while (v) {
            int lead = lowest_bit(v);
            if (!basis[lead]) {
                basis[lead] = v;
                made_of[lead] = rep;
                break;
            }
            v ^= basis[lead];
            rep ^= made_of[lead];
        }
    }
    Mask v = target, rep = 0;
    while (v) {
        int lead = lowest_bit(v);
        if (!basis[lead]) return false;
        v ^= basis[lead];
        rep ^= made_of[lead];
    }
    if (combination) *combination = rep;
    return true;
}

}  // namespace spancover::gf2
