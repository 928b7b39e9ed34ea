#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adams/gf2.hpp"
#include "adams/gf2_reference.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

using namespace adams::gf2;

namespace {

Matrix random_matrix(std::mt19937& rng, int rows, int cols, double density = 0.5) {
    Matrix m(rows, cols);
    std::bernoulli_distribution bit(density);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (bit(rng)) m.set(r, c, true);
    return m;
}

Vec random_vec(std::mt19937& rng, int size, double density = 0.5) {
    Vec v(size);
    std::bernoulli_distribution bit(density);
    for (int i = 0; i < size; ++i)
        if (bit(rng)) v.set(i, true);
    return v;
}

bool is_rref(const Matrix& m) {
    int last_pivot = -1;
    for (int r = 0; r < m.rows(); ++r) {
        int p = m.row(r).lowest_set();
        if (p < 0) return false;  // no zero rows allowed in a basis
        if (p <= last_pivot) return false;
        for (int rr = 0; rr < m.rows(); ++rr)
            if (rr != r && m.get(rr, p)) return false;
        last_pivot = p;
    }
    return true;
}

}  // namespace

TEST_CASE("vector get/set/flip/xor basics") {
    Vec v(130);
    CHECK(v.size() == 130);
    CHECK(v.is_zero());
    CHECK(v.lowest_set() == -1);
    CHECK(v.popcount() == 0);

    v.set(0, true);
    v.set(64, true);
    v.set(129, true);
    CHECK(v.get(0));
    CHECK(v.get(64));
    CHECK(v.get(129));
    CHECK_FALSE(v.get(63));
    CHECK(v.popcount() == 3);
    CHECK(v.lowest_set() == 0);

    v.flip(0);
    CHECK_FALSE(v.get(0));
    CHECK(v.lowest_set() == 64);

    Vec w(130);
    w.set(64, true);
    v ^= w;
    CHECK_FALSE(v.get(64));
    CHECK(v.popcount() == 1);
    CHECK(v.lowest_set() == 129);

    Vec a(4);
    a.set(0, true);
    a.set(2, true);
    CHECK(a.str() == "1010");
}

TEST_CASE("matrix arithmetic identities") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + int(rng() % 12);
        int m = 1 + int(rng() % 12);
        int k = 1 + int(rng() % 12);
        Matrix a = random_matrix(rng, n, m);
        Matrix b = random_matrix(rng, m, k);

        // (AB)^T == B^T A^T
        CHECK((a * b).transpose() == b.transpose() * a.transpose());
        // A * I == A, I * A == A
        CHECK(a * Matrix::identity(m) == a);
        CHECK(Matrix::identity(n) * a == a);
        // A + A == 0
        CHECK((a + a).is_zero());
        // (AB) x == A (B x)
        Vec x = random_vec(rng, k);
        CHECK((a * b).apply(x) == a.apply(b.apply(x)));
    }
}

TEST_CASE("hstack/vstack/append_row shapes and content") {
    Matrix a(2, 3);
    a.set(0, 0, true);
    a.set(1, 2, true);
    Matrix b(2, 2);
    b.set(0, 1, true);
    Matrix h = a.hstack(b);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 5);
    CHECK(h.get(0, 0));
    CHECK(h.get(0, 4));
    CHECK(h.get(1, 2));

    Matrix c(1, 3);
    c.set(0, 1, true);
    Matrix v = a.vstack(c);
    CHECK(v.rows() == 3);
    CHECK(v.cols() == 3);
    CHECK(v.get(2, 1));

    Matrix d(0, 3);
    Vec row(3);
    row.set(2, true);
    d.append_row(row);
    CHECK(d.rows() == 1);
    CHECK(d.get(0, 2));
}

TEST_CASE("elimination produces reduced echelon form with consistent pivots") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        int rows = 1 + int(rng() % 20);
        int cols = 1 + int(rng() % 20);
        Matrix m = random_matrix(rng, rows, cols);
        Echelon e = eliminate(m);

        CHECK(e.cols == cols);
        CHECK(e.rank == e.rref.rows());
        CHECK(int(e.pivot_cols.size()) == e.rank);
        if (e.rank > 0) CHECK(is_rref(e.rref));
        // pivot bookkeeping is a two-way map
        for (int r = 0; r < e.rank; ++r) {
            CHECK(e.rref.row(r).lowest_set() == e.pivot_cols[r]);
            CHECK(e.pivot_row_of_col[e.pivot_cols[r]] == r);
        }
        int pivots_seen = 0;
        for (int c = 0; c < cols; ++c)
            if (e.pivot_row_of_col[c] >= 0) ++pivots_seen;
        CHECK(pivots_seen == e.rank);
        // row space is preserved
        CHECK(Subspace::span(m) == Subspace::span(e.rref));
    }
}

TEST_CASE("rank agrees with the serial reference under shuffled row orders") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 1 + int(rng() % 24);
        int cols = 1 + int(rng() % 24);
        Matrix m = random_matrix(rng, rows, cols, 0.3 + 0.4 * (trial % 3));
        int r = rank(m);
        CHECK(r == reference::rank(m));
        std::vector<int> order(rows);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(r == reference::rank(m, order));
    }
}

TEST_CASE("kernel satisfies rank-nullity and annihilates the matrix") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        int rows = 1 + int(rng() % 16);
        int cols = 1 + int(rng() % 16);
        Matrix m = random_matrix(rng, rows, cols);
        Matrix k = kernel(m);

        CHECK(k.rows() + rank(m) == cols);
        if (k.rows() > 0) CHECK(is_rref(k));
        for (int r = 0; r < k.rows(); ++r)
            CHECK(m.apply(k.row(r)).is_zero());

        // the independent reference spanning set spans the same subspace
        Matrix ref = reference::kernel_spanning_set(m);
        CHECK(Subspace::span(k) == Subspace::span(ref));
    }
}

TEST_CASE("image rows are attainable and span the column space") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + int(rng() % 14);
        int cols = 1 + int(rng() % 14);
        Matrix m = random_matrix(rng, rows, cols);
        Matrix img = image(m);
        CHECK(img.rows() == rank(m));
        for (int r = 0; r < img.rows(); ++r) {
            Vec x(cols);
            CHECK(solve(m, img.row(r), x));
            CHECK(m.apply(x) == img.row(r));
        }
        // every attained vector lies in the image span
        Subspace s = Subspace::span(img);
        for (int t = 0; t < 5; ++t)
            CHECK(s.contains(m.apply(random_vec(rng, cols))));
    }
}

TEST_CASE("solve finds consistent systems and rejects inconsistent ones") {
    std::mt19937 rng(31337);
    int consistent = 0, rejected = 0;
    for (int trial = 0; trial < 80; ++trial) {
        int rows = 2 + int(rng() % 12);
        int cols = 1 + int(rng() % 12);
        Matrix m = random_matrix(rng, rows, cols, 0.4);

        // guaranteed-consistent system
        Vec x = random_vec(rng, cols);
        Vec b = m.apply(x);
        Vec got(cols);
        CHECK(solve(m, b, got));
        CHECK(m.apply(got) == b);
        ++consistent;

        // random right-hand side: must be accepted iff it lies in the image
        Vec rb = random_vec(rng, rows);
        bool in_image = Subspace::span(image(m)).contains(rb);
        Vec got2(cols);
        bool ok = solve(m, rb, got2);
        CHECK(ok == in_image);
        if (ok)
            CHECK(m.apply(got2) == rb);
        else
            ++rejected;
    }
    CHECK(consistent == 80);
    CHECK(rejected > 5);  // the sample really exercised the inconsistent path
}

TEST_CASE("row_basis spans the row space in canonical form") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix m = random_matrix(rng, 1 + int(rng() % 10), 1 + int(rng() % 10));
        Matrix rb = row_basis(m);
        CHECK(rb.rows() == rank(m));
        if (rb.rows() > 0) CHECK(is_rref(rb));
        CHECK(Subspace::span(rb) == Subspace::span(m));
    }
}

TEST_CASE("subspace membership, reduction and coordinates") {
    std::mt19937 rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + int(rng() % 12);
        Matrix gens = random_matrix(rng, 1 + int(rng() % 8), n);
        Subspace s = Subspace::span(gens);
        CHECK(s.ambient() == n);
        CHECK(s.dim() == rank(gens));

        // every generator is contained; reduce() is idempotent and a coset invariant
        for (int r = 0; r < gens.rows(); ++r) {
            CHECK(s.contains(gens.row(r)));
            CHECK(s.reduce(gens.row(r)).is_zero());
        }
        Vec v = random_vec(rng, n);
        Vec red = s.reduce(v);
        CHECK(s.reduce(red) == red);
        Vec diff = v;
        diff ^= red;
        CHECK(s.contains(diff));

        // coordinates invert the basis expansion
        if (s.dim() > 0) {
            Vec member(n);
            Vec coeff = random_vec(rng, s.dim());
            for (int i = 0; i < s.dim(); ++i)
                if (coeff.get(i)) member ^= s.basis().row(i);
            Vec coords = s.coordinates(member);
            CHECK(coords == coeff);
        }
    }
}

TEST_CASE("subspace sum and intersection obey the dimension law") {
    std::mt19937 rng(919);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + int(rng() % 10);
        Subspace a = Subspace::span(random_matrix(rng, 1 + int(rng() % 6), n));
        Subspace b = Subspace::span(random_matrix(rng, 1 + int(rng() % 6), n));
        Subspace sum = Subspace::sum(a, b);
        Subspace meet = Subspace::intersect(a, b);

        CHECK(sum.dim() + meet.dim() == a.dim() + b.dim());
        CHECK(sum.contains(a));
        CHECK(sum.contains(b));
        CHECK(a.contains(meet));
        CHECK(b.contains(meet));

        // commutativity through canonical form
        CHECK(sum == Subspace::sum(b, a));
        CHECK(meet == Subspace::intersect(b, a));
    }
    Subspace f = Subspace::full(5);
    CHECK(f.dim() == 5);
    CHECK(f.contains(Subspace::span(Matrix::identity(5))));
}

TEST_CASE("preimage characterises exactly the vectors mapping into the target") {
    std::mt19937 rng(606);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 1 + int(rng() % 8);
        int cols = 1 + int(rng() % 8);
        Matrix m = random_matrix(rng, rows, cols);
        Subspace s = Subspace::span(random_matrix(rng, 1 + int(rng() % 4), rows));
        Subspace pre = Subspace::preimage(m, s);
        CHECK(pre.ambient() == cols);
        // membership test on the full cube for small cols, else random probes
        if (cols <= 6) {
            for (int mask = 0; mask < (1 << cols); ++mask) {
                Vec x(cols);
                for (int i = 0; i < cols; ++i)
                    if ((mask >> i) & 1) x.set(i, true);
                CHECK(pre.contains(x) == s.contains(m.apply(x)));
            }
        } else {
            for (int t = 0; t < 20; ++t) {
                Vec x = random_vec(rng, cols);
                CHECK(pre.contains(x) == s.contains(m.apply(x)));
            }
        }
    }
}

TEST_CASE("quotient representatives have the right dimension and coordinates") {
    std::mt19937 rng(2718);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + int(rng() % 10);
        Subspace total = Subspace::span(random_matrix(rng, 2 + int(rng() % 8), n));
        // build a genuine subspace of total from a sub-selection of its basis
        Matrix sub_gens(0, n);
        for (int r = 0; r < total.dim(); ++r)
            if (rng() % 2) sub_gens.append_row(total.basis().row(r));
        Subspace sub = Subspace::span(sub_gens);

        QuotientBasis q = quotient(total, sub);
        CHECK(q.dim() == total.dim() - sub.dim());

        // reps are independent modulo sub, and coordinates reconstruct classes
        if (q.dim() > 0) {
            Vec coeff = random_vec(rng, q.dim());
            Vec v(n);
            for (int i = 0; i < q.dim(); ++i)
                if (coeff.get(i)) v ^= q.reps.row(i);
            // perturb inside sub: same class expected
            if (sub.dim() > 0) v ^= sub.basis().row(int(rng() % sub.dim()));
            CHECK(quotient_coordinates(q, sub, v) == coeff);
        }
    }
}

TEST_CASE("batched elimination matches the serial loop at every job count") {
    std::mt19937 rng(161803);
    std::vector<Matrix> mats;
    for (int i = 0; i < 37; ++i)
        mats.push_back(random_matrix(rng, 1 + int(rng() % 30), 1 + int(rng() % 30)));
    mats.push_back(Matrix());  // empty matrix must survive batching

    std::vector<Echelon> serial;
    for (const Matrix& m : mats) serial.push_back(eliminate(m));

    int saved = default_jobs();
    for (int jobs : {1, 2, 4}) {
        std::vector<Echelon> batched = eliminate_batch(mats, jobs);
        REQUIRE(batched.size() == serial.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(batched[i].rref == serial[i].rref);
            CHECK(batched[i].pivot_cols == serial[i].pivot_cols);
            CHECK(batched[i].pivot_row_of_col == serial[i].pivot_row_of_col);
            CHECK(batched[i].rank == serial[i].rank);
        }
    }
    set_default_jobs(3);
    CHECK(default_jobs() == 3);
    std::vector<Echelon> defaulted = eliminate_batch(mats);
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(defaulted[i].rank == serial[i].rank);
    set_default_jobs(saved);
}

TEST_CASE("edge shapes: empty and degenerate matrices") {
    Matrix empty;
    CHECK(rank(empty) == 0);
    CHECK(kernel(empty).rows() == 0);
    CHECK(eliminate(empty).rank == 0);

    Matrix zero(4, 3);
    CHECK(rank(zero) == 0);
    CHECK(kernel(zero).rows() == 3);
    CHECK(kernel(zero) == Matrix::identity(3));
    CHECK(image(zero).rows() == 0);

    Matrix wide(1, 5);
    wide.set(0, 2, true);
    CHECK(rank(wide) == 1);
    CHECK(kernel(wide).rows() == 4);
}
