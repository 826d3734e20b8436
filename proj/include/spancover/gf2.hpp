#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spancover::gf2 {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest_bit(Mask m) { return __builtin_ctzll(m); }
inline Mask bit(int i) { return Mask{1} << i; }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Dense matrix over GF(2), stored column-wise: col(j) holds bit i for entry (i,j).
// Both dimensions are capped at 64 so that row and column index sets fit in a Mask.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(static_cast<int>(cols)), col_(cols, 0) {
        if (rows < 0 || rows > 64 || cols < 0 || cols > 64)
            throw std::invalid_argument("gf2::Mat dimensions must be in [0,64]");
    }

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(col_.size()); }

    bool get(int r, int c) const { return (col_[c] >> r) & 1; }
    void set(int r, int c, bool v) {
        if (v)
            col_[c] |= bit(r);
        else
            col_[c] &= ~bit(r);
    }

    Mask column(int c) const { return col_[c]; }
    void set_column(int c, Mask v) { col_[c] = v; }

    // XOR of the columns selected by `cols`.
    Mask column_sum(Mask cols) const {
        Mask acc = 0;
        for (Mask m = cols; m; m &= m - 1) acc ^= col_[lowest_bit(m)];
        return acc;
    }

    Mat with_columns_erased(Mask cols) const;
    Mat with_row_erased(int r) const;
    void append_column(Mask v) {
        if (cols() >= 64) throw std::length_error("gf2::Mat column overflow");
        col_.push_back(v);
    }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && col_ == o.col_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Mask> col_;
};

// Rank of the column set selected by `cols`.
int rank(const Mat& m, Mask cols);
int rank(const Mat& m);

// Row-reduce and report pivot structure. After the call, `pivot_row_of_col[j]` is the
// row index whose leading 1 sits in column j, or -1 for free columns.
struct Rref {
    Mat mat;
    std::vector<int> pivot_row_of_col;
    int rank = 0;
};
Rref rref(const Mat& m);

// Basis of { x : M x = 0 } as column-index masks. These are exactly the cycles of the
// column matroid of M (every cycle is a GF(2) sum of basis vectors).
std::vector<Mask> nullspace(const Mat& m);

// A matrix whose null space equals the span of `generators` (vectors over `n` coordinates):
// its rows form a basis of the orthogonal complement.
Mat parity_check(const std::vector<Mask>& generators, int n);

// Expresses `target` as a sum of the given columns, if possible.
// Returns the mask of used columns, or nullopt.
bool solve_in_span(const Mat& m, Mask candidate_cols, Mask target, Mask* combination);

}  // namespace spancover::gf2
