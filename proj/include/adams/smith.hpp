#pragma once

// Integer matrices and Smith normal form.
//
// Entries are arbitrary-precision (boost cpp_int) so the reduction never
// overflows; callers that start from machine ints convert on the way in.
// smith_normal_form returns unimodular U, V with U*M*V = D, D diagonal
// with d_1 | d_2 | ... and all d_i >= 0.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace adams {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const BigInt& at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
    BigInt& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_; }

    void swap_rows(int a, int b);
    void swap_cols(int a, int b);

    std::string str() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BigInt> data_;
};

struct SmithResult {
    IntMatrix u;            // rows x rows, unimodular
    IntMatrix d;            // rows x cols, diagonal
    IntMatrix v;            // cols x cols, unimodular
    std::vector<BigInt> diagonal;  // min(rows, cols) entries, d_i | d_{i+1}
    int rank = 0;           // number of nonzero diagonal entries
};

SmithResult smith_normal_form(const IntMatrix& m);

// Rank of m over GF(2): the number of odd diagonal entries in its Smith
// form.  Used as an independent oracle for the bit-packed eliminations.
int mod2_rank_via_smith(const IntMatrix& m);

}  // namespace adams
