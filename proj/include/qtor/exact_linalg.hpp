#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtor {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

// Sparse integer row, entries sorted by column, no explicit zeros.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }
    std::vector<T> col(std::size_t c) const {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }
    void append_row(const std::vector<T>& values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

// Floor of a/b for b > 0.
Integer floor_div(const Integer& a, const Integer& b);
// Representative of q in [0, 1).
Rational mod_one(const Rational& q);

Integer determinant(const IntMatrix& m);
// Exact inverse; throws exact_linalg.Singular when det = 0.
RationalMatrix inverse(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

IntVector multiply(const IntMatrix& m, const IntVector& v);
RationalVector multiply(const IntMatrix& m, const RationalVector& v);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RationalMatrix to_rational(const IntMatrix& m);

// A finitely generated subgroup of Q^ambient, stored by its canonical row
// Hermite normal form: echelon rows, positive pivots, and every entry above a
// pivot reduced into [0, pivot).
class Lattice {
public:
    explicit Lattice(std::size_t ambient = 0) : basis_(0, ambient), ambient_(ambient) {}

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return basis_.rows(); }
    const RationalMatrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    RationalVector row(std::size_t i) const { return basis_.row(i); }

    // Integer coordinates of v in the HNF basis, or nullopt if v is not in
    // the lattice.
    std::optional<IntVector> coordinates(const RationalVector& v) const;
    bool contains(const RationalVector& v) const { return coordinates(v).has_value(); }

    friend bool operator==(const Lattice& a, const Lattice& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    friend struct HermiteAccess;
    RationalMatrix basis_;
    std::vector<std::size_t> pivots_;
    std::size_t ambient_ = 0;
};

// Row HNF of the Z-span of the rows of m.
Lattice hnf(const RationalMatrix& m);
// Same for integer rows given sparsely as (column, value) pairs.
Lattice hnf(std::size_t cols, const std::vector<std::vector<std::pair<std::size_t, Integer>>>& rows);

// Throws exact_linalg.DimensionMismatch when sizes disagree.
bool member(const Lattice& l, const RationalVector& v);

// {z in Z^rows : z * m = 0}, as a canonical lattice.
Lattice kernel_lattice(const RationalMatrix& m);

bool sublattice_inclusion(const Lattice& a, const Lattice& b);

// HNF together with the bookkeeping that expresses each basis row as an
// integer combination of the input rows, and a generating set of the integer
// relation module among the input rows. Relations are the leftover transforms
// of rows that reduced to zero; they generate the kernel but are not reduced.
struct HermiteDecomposition {
    Lattice lattice;
    std::vector<SparseRow> transform;  // one per basis row, over input rows
    std::vector<SparseRow> relations;  // each z satisfies z * m = 0
};

HermiteDecomposition hermite_decompose(const RationalMatrix& m);

// Integer row HNF with a dense unimodular transform: U * m = [H; 0].
struct IntegerHermite {
    IntMatrix h;
    IntMatrix u;
    std::vector<std::size_t> pivots;
};
IntegerHermite integer_hnf(const IntMatrix& m);

// Nonzero diagonal entries d_1 | d_2 | ... of the Smith normal form.
std::vector<Integer> smith_invariants(const IntMatrix& m);

}  // namespace qtor
