#pragma once

// Dense bit-packed linear algebra over GF(2).
//
// Vectors are packed 64 bits to a word; matrices are row-major lists of
// packed rows.  Everything downstream (Steenrod action matrices, simplicial
// face maps, spectral-sequence pages) reduces to the handful of primitives
// here: elimination, rank, kernel, solve, and subspace arithmetic.
//
// Determinism contract: elimination always picks the pivot in the
// lowest-index nonzero column and, within that column, the lowest row.
// Every basis this module hands back (kernels, images, quotient
// representatives) is in reduced row echelon form under that rule, so
// repeated runs produce byte-identical results.

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace adams::gf2 {

using Word = std::uint64_t;
inline constexpr int kWordBits = 64;

// A packed row vector over GF(2).
class Vec {
public:
    Vec() = default;
    explicit Vec(int size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

    int size() const { return size_; }
    // Accessors are unchecked in release builds; an out-of-range index would
    // silently toggle padding bits and corrupt ==/popcount, hence the asserts.
    bool get(int i) const {
        assert(i >= 0 && i < size_);
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set(int i, bool v) {
        assert(i >= 0 && i < size_);
        Word mask = Word(1) << (i % kWordBits);
        if (v)
            words_[i / kWordBits] |= mask;
        else
            words_[i / kWordBits] &= ~mask;
    }
    void flip(int i) {
        assert(i >= 0 && i < size_);
        words_[i / kWordBits] ^= Word(1) << (i % kWordBits);
    }

    void operator^=(const Vec& other) {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] ^= other.words_[w];
    }

    bool is_zero() const {
        for (Word w : words_)
            if (w)
                return false;
        return true;
    }

    // Index of the lowest set bit, or -1 if zero.
    int lowest_set() const;
    int popcount() const;

    bool operator==(const Vec& other) const { return size_ == other.size_ && words_ == other.words_; }
    bool operator<(const Vec& other) const { return words_ < other.words_; }

    std::string str() const;  // e.g. "1011" (index 0 leftmost)

private:
    int size_ = 0;
    std::vector<Word> words_;
};

// Row-major matrix.  An m x n matrix represents a linear map F2^n -> F2^m
// acting on column vectors; apply() computes M*x.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows, Vec(cols)) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const { return data_[r].get(c); }
    void set(int r, int c, bool v) { data_[r].set(c, v); }
    void flip(int r, int c) { data_[r].flip(c); }

    const Vec& row(int r) const { return data_[r]; }
    Vec& row(int r) { return data_[r]; }
    void append_row(Vec v);

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    bool operator==(const Matrix& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_; }

    Vec apply(const Vec& x) const;  // M*x, x has cols() entries
    bool is_zero() const;

    // Horizontal stack [this | rhs] (same row count).
    Matrix hstack(const Matrix& rhs) const;
    // Vertical stack [this ; rhs] (same column count).
    Matrix vstack(const Matrix& rhs) const;

    std::string str() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Vec> data_;
};

// Reduced row echelon form together with pivot bookkeeping.
struct Echelon {
    Matrix rref;                      // nonzero rows only, in pivot-column order
    std::vector<int> pivot_cols;      // pivot column of each rref row
    std::vector<int> pivot_row_of_col;  // inverse map, -1 for free columns
    int rank = 0;
    int cols = 0;
};

// Gauss-Jordan elimination under the deterministic pivot rule.
Echelon eliminate(const Matrix& m);

int rank(const Matrix& m);

// Basis of the right kernel {x : M x = 0}, one row per basis vector,
// in reduced row echelon form.
Matrix kernel(const Matrix& m);

// Row-space basis in reduced row echelon form.
Matrix row_basis(const Matrix& m);

// Column-space basis (as row vectors of length m.rows()), i.e. a basis of
// the image of the map represented by m.
Matrix image(const Matrix& m);

// Solve M x = b.  Returns false if inconsistent; otherwise writes one
// solution (the one with all free variables zero).
bool solve(const Matrix& m, const Vec& b, Vec& x_out);

// A subspace of F2^n stored as an RREF row basis.  Construction reduces
// whatever spanning set is supplied, so equal subspaces compare equal.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}

    static Subspace span(const Matrix& spanning_rows);
    static Subspace full(int ambient);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    // Reduce v modulo this subspace (canonical coset representative).
    Vec reduce(const Vec& v) const;
    // Coordinates of v in this basis; v must lie in the subspace.
    Vec coordinates(const Vec& v) const;

    static Subspace sum(const Subspace& a, const Subspace& b);
    static Subspace intersect(const Subspace& a, const Subspace& b);

    // {x : m*x in s}; m acts on columns, so the result lives in GF(2)^cols(m).
    static Subspace preimage(const Matrix& m, const Subspace& s);

    bool operator==(const Subspace& other) const { return ambient_ == other.ambient_ && basis_ == other.basis_; }

private:
    int ambient_ = 0;
    Matrix basis_;
};

// Canonical representatives of the quotient total/sub (sub must be contained
// in total).  Rows are the reduced representatives, again in RREF, so the
// choice is reproducible.
struct QuotientBasis {
    Matrix reps;  // dim(total) - dim(sub) rows in the ambient space
    int dim() const { return reps.rows(); }
};
QuotientBasis quotient(const Subspace& total, const Subspace& sub);

// Express the class of v (an element of total) in the quotient basis.
Vec quotient_coordinates(const QuotientBasis& q, const Subspace& sub, const Vec& v);

// Batched elimination over independent matrices (one per internal degree in
// the graded callers).  jobs <= 0 means "use the library default", see
// set_default_jobs().  Results are identical to calling eliminate() in a
// loop; only the scheduling differs.
std::vector<Echelon> eliminate_batch(const std::vector<Matrix>& mats, int jobs = 0);

void set_default_jobs(int jobs);
int default_jobs();

}  // namespace adams::gf2
