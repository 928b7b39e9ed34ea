#include "adams/smith.hpp"

#include <sstream>
#include <stdexcept>

namespace adams {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("int matrix product: dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            if (at(r, k) == 0)
                continue;
            for (int c = 0; c < rhs.cols_; ++c)
                out.at(r, c) += at(r, k) * rhs.at(k, c);
        }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

void IntMatrix::swap_rows(int a, int b) {
    if (a == b)
        return;
    for (int c = 0; c < cols_; ++c)
        std::swap(at(a, c), at(b, c));
}

void IntMatrix::swap_cols(int a, int b) {
    if (a == b)
        return;
    for (int r = 0; r < rows_; ++r)
        std::swap(at(r, a), at(r, b));
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c)
            os << (c ? " " : "") << at(r, c);
        os << '\n';
    }
    return os.str();
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Locate the nonzero entry of smallest absolute value in the trailing
// submatrix starting at (s, s); ties break toward the lowest (row, col).
bool find_pivot(const IntMatrix& m, int s, int& pr, int& pc) {
    bool found = false;
    BigInt best = 0;
    for (int r = s; r < m.rows(); ++r)
        for (int c = s; c < m.cols(); ++c) {
            const BigInt& x = m.at(r, c);
            if (x == 0)
                continue;
            BigInt a = abs_big(x);
            if (!found || a < best) {
                found = true;
                best = a;
                pr = r;
                pc = c;
            }
        }
    return found;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& input) {
    SmithResult res;
    IntMatrix m = input;
    res.u = IntMatrix::identity(m.rows());
    res.v = IntMatrix::identity(m.cols());

    int steps = std::min(m.rows(), m.cols());
    for (int s = 0; s < steps; ++s) {
        for (;;) {
            int pr = s, pc = s;
            if (!find_pivot(m, s, pr, pc))
                goto done;  // trailing block is zero
            m.swap_rows(s, pr);
            res.u.swap_rows(s, pr);
            m.swap_cols(s, pc);
            res.v.swap_cols(s, pc);

            // Clear the pivot column, then the pivot row.  If any
            // remainder is nonzero the loop repeats with a smaller pivot.
            bool again = false;
            for (int r = s + 1; r < m.rows(); ++r) {
                if (m.at(r, s) == 0)
                    continue;
                BigInt q = m.at(r, s) / m.at(s, s);
                for (int c = s; c < m.cols(); ++c)
                    m.at(r, c) -= q * m.at(s, c);
                for (int c = 0; c < res.u.cols(); ++c)
                    res.u.at(r, c) -= q * res.u.at(s, c);
                if (m.at(r, s) != 0)
                    again = true;
            }
            for (int c = s + 1; c < m.cols(); ++c) {
                if (m.at(s, c) == 0)
                    continue;
                BigInt q = m.at(s, c) / m.at(s, s);
                for (int r = s; r < m.rows(); ++r)
                    m.at(r, c) -= q * m.at(r, s);
                for (int r = 0; r < res.v.rows(); ++r)
                    res.v.at(r, c) -= q * res.v.at(r, s);
                if (m.at(s, c) != 0)
                    again = true;
            }
            if (again)
                continue;

            // Divisibility: the pivot must divide every remaining entry.
            // If not, fold the offending row into the pivot row and redo.
            bool fixed = true;
            for (int r = s + 1; r < m.rows() && fixed; ++r)
                for (int c = s + 1; c < m.cols() && fixed; ++c)
                    if (m.at(r, c) % m.at(s, s) != 0) {
                        for (int cc = 0; cc < m.cols(); ++cc)
                            m.at(s, cc) += m.at(r, cc);
                        for (int cc = 0; cc < res.u.cols(); ++cc)
                            res.u.at(s, cc) += res.u.at(r, cc);
                        fixed = false;
                    }
            if (fixed)
                break;
        }
        if (m.at(s, s) < 0) {
            for (int c = 0; c < m.cols(); ++c)
                m.at(s, c) = -m.at(s, c);
            for (int c = 0; c < res.u.cols(); ++c)
                res.u.at(s, c) = -res.u.at(s, c);
        }
    }
done:
    res.d = m;
    for (int i = 0; i < steps; ++i)
        res.diagonal.push_back(m.at(i, i));
    for (const BigInt& d : res.diagonal)
        if (d != 0)
            ++res.rank;
    return res;
}

int mod2_rank_via_smith(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    int r = 0;
    for (const BigInt& d : s.diagonal)
        if (d % 2 != 0)
            ++r;
    return r;
}

}  // namespace adams
