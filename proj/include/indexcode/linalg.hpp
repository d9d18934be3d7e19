#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "indexcode/errors.hpp"
#include "indexcode/field.hpp"

namespace indexcode {

using BigUint = boost::multiprecision::cpp_int;

// Dense row-major matrix over GF(q). Entries are stored as uint8_t in
// 0..q-1; all arithmetic goes through the Field.
class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0)
    {
    }

    static Matrix from_rows(const Field& field, const std::vector<std::vector<int>>& rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows[0].size();
        Matrix m(field, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                fail(ErrorKind::dimension_mismatch, "ragged rows");
            for (std::size_t j = 0; j < c; ++j) {
                const int v = rows[i][j];
                if (v < 0 || v >= field.q())
                    fail(ErrorKind::invalid_param, "matrix entry out of range");
                m.set(i, j, v);
            }
        }
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    int at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, int v) { a_[r * cols_ + c] = static_cast<std::uint8_t>(v); }

    std::span<const std::uint8_t> row(std::size_t r) const
    {
        return {a_.data() + r * cols_, cols_};
    }

    std::vector<int> row_vec(std::size_t r) const
    {
        std::vector<int> out(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            out[j] = at(r, j);
        return out;
    }

    void append_row(std::span<const std::uint8_t> r)
    {
        if (r.size() != cols_)
            fail(ErrorKind::dimension_mismatch, "appended row has wrong length");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    Matrix transpose() const
    {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t.set(j, i, at(i, j));
        return t;
    }

    bool operator==(const Matrix& o) const
    {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint8_t> a_;
};

struct RrefResult {
    Matrix matrix;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form: pivots are 1, pivot columns are otherwise zero,
// zero rows are dropped. The result is the unique RREF basis of the row
// space, which makes it a canonical form for subspaces.
inline RrefResult rref(const Matrix& m)
{
    const Field& f = m.field();
    Matrix w = m;
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < w.cols() && pivot_row < w.rows(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < w.rows() && w.at(sel, col) == 0)
            ++sel;
        if (sel == w.rows())
            continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < w.cols(); ++j) {
                const int tmp = w.at(pivot_row, j);
                w.set(pivot_row, j, w.at(sel, j));
                w.set(sel, j, tmp);
            }
        const int scale = f.inv(w.at(pivot_row, col));
        if (scale != 1)
            for (std::size_t j = col; j < w.cols(); ++j)
                w.set(pivot_row, j, f.mul(scale, w.at(pivot_row, j)));
        for (std::size_t i = 0; i < w.rows(); ++i) {
            if (i == pivot_row)
                continue;
            const int factor = w.at(i, col);
            if (factor == 0)
                continue;
            for (std::size_t j = col; j < w.cols(); ++j)
                w.set(i, j, f.sub(w.at(i, j), f.mul(factor, w.at(pivot_row, j))));
        }
        pivots.push_back(col);
        ++pivot_row;
    }
    Matrix reduced(f, pivots.size(), w.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            reduced.set(i, j, w.at(i, j));
    return RrefResult{std::move(reduced), pivots.size(), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

// True iff v lies in the row space of basis.
inline bool in_span(const std::vector<int>& v, const Matrix& basis)
{
    if (v.size() != basis.cols())
        fail(ErrorKind::dimension_mismatch, "vector length does not match basis columns");
    Matrix extended = basis;
    std::vector<std::uint8_t> row(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] < 0 || v[j] >= basis.field().q())
            fail(ErrorKind::invalid_param, "vector entry out of range");
        row[j] = static_cast<std::uint8_t>(v[j]);
    }
    extended.append_row(row);
    return rref(extended).rank == rref(basis).rank;
}

// Nullspace basis (right kernel) as an RREF-canonical matrix: the rows z
// satisfy m * z^T = 0.
inline Matrix nullspace(const Matrix& m)
{
    const Field& f = m.field();
    const std::size_t n = m.cols();
    const RrefResult r = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : r.pivot_cols)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    Matrix basis(f, free_cols.size(), n);
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        const std::size_t fc = free_cols[i];
        basis.set(i, fc, 1);
        for (std::size_t pr = 0; pr < r.pivot_cols.size(); ++pr)
            basis.set(i, r.pivot_cols[pr], f.neg(r.matrix.at(pr, fc)));
    }
    return rref(basis).matrix;
}

// Number of k-dimensional subspaces of GF(q)^n, exact.
inline BigUint gaussian_binomial(std::size_t n, std::size_t k, int q)
{
    if (k > n)
        fail(ErrorKind::invalid_param, "k exceeds n");
    BigUint num = 1;
    BigUint den = 1;
    const BigUint bq = q;
    for (std::size_t i = 0; i < k; ++i) {
        num *= boost::multiprecision::pow(bq, static_cast<unsigned>(n - i)) - 1;
        den *= boost::multiprecision::pow(bq, static_cast<unsigned>(k - i)) - 1;
    }
    return num / den;
}

// Enumerates every k-dimensional subspace of GF(q)^n exactly once, as its
// unique RREF basis. Order: pivot-column sets lexicographically ascending;
// within a pivot set, the free entries read in row-major order form the
// digits (most significant first) of a base-q counter that runs ascending.
//
// A [first_set, last_set) range restricts enumeration to a slice of the
// pivot-column sets, which lets callers partition the space; concatenating
// the slices reproduces the full enumeration.
class SubspaceIter {
public:
    SubspaceIter(std::size_t n, std::size_t k, Field field, const BigUint& budget)
        : SubspaceIter(n, k, std::move(field), budget, 0, num_pivot_sets(n, k))
    {
    }

    SubspaceIter(std::size_t n, std::size_t k, Field field, const BigUint& budget,
                 std::size_t first_set, std::size_t last_set)
        : n_(n), k_(k), field_(std::move(field)), last_set_(last_set)
    {
        if (k > n)
            fail(ErrorKind::invalid_param, "k exceeds n");
        total_ = gaussian_binomial(n, k, field_.q());
        if (total_ > budget)
            fail(ErrorKind::budget_exceeded,
                 "subspace count " + total_.str() + " exceeds budget " + budget.str());
        set_index_ = first_set;
        if (set_index_ < last_set_) {
            pivots_.resize(k_);
            load_set(set_index_);
        }
    }

    static std::size_t num_pivot_sets(std::size_t n, std::size_t k)
    {
        // C(n, k) as size_t; n stays desk-sized here.
        std::size_t c = 1;
        for (std::size_t i = 0; i < k; ++i)
            c = c * (n - i) / (i + 1);
        return c;
    }

    const BigUint& total() const { return total_; }

    std::optional<Matrix> next()
    {
        if (k_ == 0) {
            if (emitted_empty_ || set_index_ >= last_set_)
                return std::nullopt;
            emitted_empty_ = true;
            return Matrix(field_, 0, n_);
        }
        while (set_index_ < last_set_) {
            if (digit_value_ < digit_count_) {
                Matrix m = materialize();
                advance_digits();
                return m;
            }
            ++set_index_;
            if (set_index_ < last_set_)
                load_set(set_index_);
        }
        return std::nullopt;
    }

private:
    void load_set(std::size_t index)
    {
        // index-th k-combination of 0..n-1 in lexicographic order.
        std::size_t rem = index;
        std::size_t start = 0;
        for (std::size_t i = 0; i < k_; ++i) {
            for (std::size_t c = start; c <= n_ - (k_ - i); ++c) {
                const std::size_t block = num_pivot_sets(n_ - c - 1, k_ - i - 1);
                if (rem < block) {
                    pivots_[i] = c;
                    start = c + 1;
                    break;
                }
                rem -= block;
            }
        }
        free_pos_.clear();
        std::vector<bool> is_pivot(n_, false);
        for (std::size_t p : pivots_)
            is_pivot[p] = true;
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t j = pivots_[i] + 1; j < n_; ++j)
                if (!is_pivot[j])
                    free_pos_.emplace_back(i, j);
        digits_.assign(free_pos_.size(), 0);
        digit_value_ = 0;
        digit_count_ = 1;
        for (std::size_t i = 0; i < free_pos_.size(); ++i)
            digit_count_ *= field_.q();
    }

    Matrix materialize() const
    {
        Matrix m(field_, k_, n_);
        for (std::size_t i = 0; i < k_; ++i)
            m.set(i, pivots_[i], 1);
        for (std::size_t t = 0; t < free_pos_.size(); ++t)
            m.set(free_pos_[t].first, free_pos_[t].second, digits_[t]);
        return m;
    }

    void advance_digits()
    {
        ++digit_value_;
        // Row-major digits, most significant first: increment from the back.
        for (std::size_t t = digits_.size(); t-- > 0;) {
            if (++digits_[t] < field_.q())
                return;
            digits_[t] = 0;
        }
    }

    std::size_t n_;
    std::size_t k_;
    Field field_;
    BigUint total_;
    std::size_t set_index_ = 0;
    std::size_t last_set_ = 0;
    bool emitted_empty_ = false;
    std::vector<std::size_t> pivots_;
    std::vector<std::pair<std::size_t, std::size_t>> free_pos_;
    std::vector<int> digits_;
    BigUint digit_value_ = 0;
    BigUint digit_count_ = 1;
};

// Word-parallel GF(2) row operations; rows are bitmasks (column j = bit j,
// up to 64 columns). This is the hot path of the binary solver.
namespace gf2 {

// XOR elimination basis indexed by pivot bit: slot i holds a row whose
// lowest set bit is i. Insertion reduces by pivots until the row is new or
// vanishes; the lowest set bit strictly increases, so this terminates.
struct Basis {
    std::array<std::uint64_t, 64> slot{};
    std::size_t dim = 0;

    bool insert(std::uint64_t v)
    {
        while (v != 0) {
            const int i = std::countr_zero(v);
            if (slot[i] == 0) {
                slot[i] = v;
                ++dim;
                return true;
            }
            v ^= slot[i];
        }
        return false;
    }

    bool contains(std::uint64_t v) const
    {
        while (v != 0) {
            const int i = std::countr_zero(v);
            if (slot[i] == 0)
                return false;
            v ^= slot[i];
        }
        return true;
    }
};

inline std::size_t rank(const std::vector<std::uint64_t>& rows)
{
    Basis b;
    for (std::uint64_t r : rows)
        b.insert(r);
    return b.dim;
}

} // namespace gf2

} // namespace indexcode
