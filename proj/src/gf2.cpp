#include "adams/gf2.hpp"

#include <bit>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adams::gf2 {

int Vec::lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w])
            return int(w) * kWordBits + std::countr_zero(words_[w]);
    }
    return -1;
}

int Vec::popcount() const {
    int n = 0;
    for (Word w : words_)
        n += std::popcount(w);
    return n;
}

std::string Vec::str() const {
    std::string s;
    s.reserve(size_);
    for (int i = 0; i < size_; ++i)
        s.push_back(get(i) ? '1' : '0');
    return s;
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

void Matrix::append_row(Vec v) {
    if (v.size() != cols_)
        throw std::invalid_argument("append_row: size mismatch");
    data_.push_back(std::move(v));
    ++rows_;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c))
                t.set(c, r, true);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("matrix product: dimension mismatch");
    // Accumulate rows of rhs selected by the bits of each row of *this.
    Matrix out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k)
            if (get(r, k))
                out.row(r) ^= rhs.row(k);
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix sum: dimension mismatch");
    Matrix out = *this;
    for (int r = 0; r < rows_; ++r)
        out.row(r) ^= rhs.row(r);
    return out;
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("apply: dimension mismatch");
    Vec y(rows_);
    for (int r = 0; r < rows_; ++r) {
        // <row r, x> over GF(2)
        int parity = 0;
        for (int c = 0; c < cols_; ++c)
            if (data_[r].get(c) && x.get(c))
                parity ^= 1;
        if (parity)
            y.set(r, true);
    }
    return y;
}

bool Matrix::is_zero() const {
    for (int r = 0; r < rows_; ++r)
        if (!data_[r].is_zero())
            return false;
    return true;
}

Matrix Matrix::hstack(const Matrix& rhs) const {
    if (rows_ != rhs.rows_)
        throw std::invalid_argument("hstack: row mismatch");
    Matrix out(rows_, cols_ + rhs.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c)
            if (get(r, c))
                out.set(r, c, true);
        for (int c = 0; c < rhs.cols_; ++c)
            if (rhs.get(r, c))
                out.set(r, cols_ + c, true);
    }
    return out;
}

Matrix Matrix::vstack(const Matrix& rhs) const {
    if (cols_ != rhs.cols_)
        throw std::invalid_argument("vstack: column mismatch");
    Matrix out = *this;
    for (int r = 0; r < rhs.rows_; ++r)
        out.append_row(rhs.row(r));
    return out;
}

std::string Matrix::str() const {
    std::string s;
    for (int r = 0; r < rows_; ++r) {
        s += data_[r].str();
        s.push_back('\n');
    }
    return s;
}

Echelon eliminate(const Matrix& m) {
    // Gauss-Jordan sweeping columns left to right; within a column the
    // lowest not-yet-pivotal row wins.  Rows are fully reduced so the
    // result is the canonical RREF.
    std::vector<Vec> rows;
    rows.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r)
        rows.push_back(m.row(r));

    Echelon e;
    e.cols = m.cols();
    e.pivot_row_of_col.assign(m.cols(), -1);
    std::vector<char> used(rows.size(), 0);
    std::vector<int> pivot_row_index;  // source row index of each pivot

    for (int c = 0; c < m.cols(); ++c) {
        int pr = -1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!used[r] && rows[r].get(c)) {
                pr = int(r);
                break;
            }
        }
        if (pr < 0)
            continue;
        used[pr] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (int(r) != pr && rows[r].get(c))
                rows[r] ^= rows[pr];
        e.pivot_row_of_col[c] = int(pivot_row_index.size());
        e.pivot_cols.push_back(c);
        pivot_row_index.push_back(pr);
    }

    e.rank = int(pivot_row_index.size());
    e.rref = Matrix(e.rank, m.cols());
    for (int i = 0; i < e.rank; ++i)
        e.rref.row(i) = rows[pivot_row_index[i]];
    return e;
}

int rank(const Matrix& m) { return eliminate(m).rank; }

Matrix kernel(const Matrix& m) {
    // Treat the rows of m as equations; free columns of the RREF
    // parameterize the solutions.  The free-column basis is canonical but a
    // basis vector may lead at a pivot column below its free column, so a
    // final elimination is needed to deliver the documented RREF.
    Echelon e = eliminate(m);
    Matrix k(0, m.cols());
    for (int c = 0; c < m.cols(); ++c) {
        if (e.pivot_row_of_col[c] >= 0)
            continue;
        Vec v(m.cols());
        v.set(c, true);
        for (int i = 0; i < e.rank; ++i)
            if (e.rref.get(i, c))
                v.set(e.pivot_cols[i], true);
        k.append_row(std::move(v));
    }
    return eliminate(k).rref;
}

Matrix row_basis(const Matrix& m) { return eliminate(m).rref; }

Matrix image(const Matrix& m) { return row_basis(m.transpose()); }

bool solve(const Matrix& m, const Vec& b, Vec& x_out) {
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
    // Eliminate the augmented matrix [m | b] as columns of the transpose:
    // work with rows (equations) directly.
    Matrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c)
            if (m.get(r, c))
                aug.set(r, c, true);
        if (b.get(r))
            aug.set(r, m.cols(), true);
    }
    Echelon e = eliminate(aug);
    // Inconsistent iff some pivot lands in the augmented column.
    if (e.pivot_row_of_col[m.cols()] >= 0)
        return false;
    x_out = Vec(m.cols());
    for (int i = 0; i < e.rank; ++i)
        if (e.rref.get(i, m.cols()))
            x_out.set(e.pivot_cols[i], true);
    return true;
}

Subspace Subspace::span(const Matrix& spanning_rows) {
    Subspace s(spanning_rows.cols());
    s.basis_ = row_basis(spanning_rows);
    return s;
}

Subspace Subspace::full(int ambient) {
    Subspace s(ambient);
    s.basis_ = Matrix::identity(ambient);
    return s;
}

Vec Subspace::reduce(const Vec& v) const {
    Vec r = v;
    for (int i = 0; i < basis_.rows(); ++i) {
        int p = basis_.row(i).lowest_set();
        if (p >= 0 && r.get(p))
            r ^= basis_.row(i);
    }
    return r;
}

bool Subspace::contains(const Vec& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
    for (int i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i)))
            return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const {
    Vec r = v;
    Vec coords(dim());
    for (int i = 0; i < basis_.rows(); ++i) {
        int p = basis_.row(i).lowest_set();
        if (p >= 0 && r.get(p)) {
            r ^= basis_.row(i);
            coords.set(i, true);
        }
    }
    if (!r.is_zero())
        throw std::invalid_argument("coordinates: vector not in subspace");
    return coords;
}

Subspace Subspace::sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_)
        throw std::invalid_argument("subspace sum: ambient mismatch");
    return span(a.basis_.vstack(b.basis_));
}

Subspace Subspace::intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_)
        throw std::invalid_argument("subspace intersect: ambient mismatch");
    // Zassenhaus: kernel of [A^T | B^T] columns-coefficients gives the
    // coefficient pairs with equal combinations.  Concretely: x in both
    // spans iff x = u*A = v*B; solve u*A + v*B = 0 row-wise.
    int da = a.dim(), db = b.dim();
    if (da == 0 || db == 0)
        return Subspace(a.ambient_);
    // Rows of stacked = basis vectors; kernel of transpose picks
    // combinations summing to zero.
    Matrix stacked = a.basis_.vstack(b.basis_);           // (da+db) x n
    Matrix coeffs = kernel(stacked.transpose());          // rows: coefficient vectors
    Matrix inter(0, a.ambient_);
    for (int r = 0; r < coeffs.rows(); ++r) {
        Vec x(a.ambient_);
        for (int i = 0; i < da; ++i)
            if (coeffs.get(r, i))
                x ^= a.basis_.row(i);
        inter.append_row(std::move(x));
    }
    return span(inter);
}

Subspace Subspace::preimage(const Matrix& m, const Subspace& s) {
    if (s.ambient() != m.rows())
        throw std::invalid_argument("subspace preimage: ambient mismatch");
    // x lands in s iff every annihilator row of s kills m*x, so the answer
    // is the kernel of Ann(s)*m.  Ann(s) rows = kernel basis of s's basis
    // matrix (standard dot product is nondegenerate over GF(2)).
    Matrix ann = kernel(s.basis_);
    if (ann.rows() == 0) return full(m.cols());
    return span(kernel(ann * m));
}

QuotientBasis quotient(const Subspace& total, const Subspace& sub) {
    if (!total.contains(sub))
        throw std::invalid_argument("quotient: sub not contained in total");
    // Reduce each total-basis vector modulo sub; the nonzero residues span
    // a complement.  Re-reduce for a canonical answer.
    Matrix residues(0, total.ambient());
    for (int i = 0; i < total.basis().rows(); ++i) {
        Vec r = sub.reduce(total.basis().row(i));
        if (!r.is_zero())
            residues.append_row(std::move(r));
    }
    QuotientBasis q;
    q.reps = row_basis(residues);
    return q;
}

Vec quotient_coordinates(const QuotientBasis& q, const Subspace& sub, const Vec& v) {
    // v = sum(coords * reps) + (element of sub); peel off reps greedily.
    Vec r = sub.reduce(v);
    Vec coords(q.reps.rows());
    for (int i = 0; i < q.reps.rows(); ++i) {
        int p = q.reps.row(i).lowest_set();
        if (p >= 0 && r.get(p)) {
            r ^= q.reps.row(i);
            r = sub.reduce(r);
            coords.set(i, true);
        }
    }
    if (!r.is_zero())
        throw std::invalid_argument("quotient_coordinates: vector not in total space");
    return coords;
}

namespace {
int g_default_jobs = 1;
}

void set_default_jobs(int jobs) { g_default_jobs = jobs < 1 ? 1 : jobs; }
int default_jobs() { return g_default_jobs; }

std::vector<Echelon> eliminate_batch(const std::vector<Matrix>& mats, int jobs) {
    if (jobs <= 0)
        jobs = g_default_jobs;
    std::vector<Echelon> out(mats.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
    for (long long i = 0; i < (long long)mats.size(); ++i)
        out[i] = eliminate(mats[i]);
    return out;
}

}  // namespace adams::gf2
