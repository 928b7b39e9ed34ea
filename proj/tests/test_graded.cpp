#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adams/graded.hpp"

#include <random>
#include <stdexcept>

using namespace adams;

namespace {

gf2::Matrix random_block(std::mt19937& rng, int rows, int cols, double density = 0.5) {
    gf2::Matrix m(rows, cols);
    std::bernoulli_distribution bit(density);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (bit(rng)) m.set(r, c, true);
    return m;
}

GradedSpace random_space(std::mt19937& rng, const Window& w, int max_dim = 5) {
    GradedSpace s;
    for (int t = w.t_min; t <= w.t_max; ++t)
        s.set_dim(t, int(rng() % (max_dim + 1)));
    return s;
}

GradedMap random_map(std::mt19937& rng, const GradedSpace& src, const GradedSpace& dst, int shift) {
    GradedMap f(src, dst, shift);
    for (auto [t, d] : src.dims()) {
        int rows = dst.dim(t + shift);
        if (d > 0 && rows > 0) f.set_block(t, random_block(rng, rows, d));
    }
    return f;
}

}  // namespace

TEST_CASE("window membership") {
    Window w{2, 5};
    CHECK(w.contains(2));
    CHECK(w.contains(5));
    CHECK_FALSE(w.contains(1));
    CHECK_FALSE(w.contains(6));
}

TEST_CASE("graded space dimensions, totals and labels") {
    GradedSpace s;
    CHECK(s.dim(3) == 0);
    CHECK(s.total_dim() == 0);
    s.set_dim(3, 2);
    s.set_dim(5, 1);
    s.set_dim(7, 4);
    CHECK(s.dim(3) == 2);
    CHECK(s.dim(4) == 0);
    CHECK(s.total_dim() == 7);
    CHECK(s.total_dim(Window{3, 5}) == 3);
    CHECK(s.total_dim(Window{4, 4}) == 0);

    CHECK_FALSE(s.has_labels(3));
    CHECK(s.labels(3).empty());
    s.set_labels(3, {"a", "b"});
    CHECK(s.has_labels(3));
    CHECK(s.labels(3)[1] == "b");

    GradedSpace t;
    t.set_dim(3, 2);
    t.set_dim(5, 1);
    t.set_dim(7, 4);
    CHECK(s == t);  // labels do not affect equality
}

TEST_CASE("graded map blocks, application and zero handling") {
    GradedSpace src, dst;
    src.set_dim(0, 2);
    src.set_dim(1, 3);
    dst.set_dim(1, 2);
    dst.set_dim(2, 1);

    GradedMap f(src, dst, 1);
    CHECK(f.degree_shift() == 1);
    // absent block reads as a correctly-shaped zero
    CHECK(f.block(0).rows() == 2);
    CHECK(f.block(0).cols() == 2);
    CHECK(f.block(0).is_zero());

    gf2::Matrix b(2, 2);
    b.set(0, 0, true);
    b.set(1, 1, true);
    f.set_block(0, b);
    CHECK(f.has_block(0));

    gf2::Vec x(2);
    x.set(1, true);
    gf2::Vec y = f.apply(0, x);
    CHECK(y.size() == 2);
    CHECK(y.get(1));
    CHECK_FALSE(y.get(0));

    CHECK_FALSE(f.is_zero(Window{0, 1}));
    CHECK(GradedMap(src, dst, 1).is_zero(Window{0, 1}));
}

TEST_CASE("composition respects degrees and matrix semantics") {
    std::mt19937 rng(99);
    Window w{0, 4};
    for (int trial = 0; trial < 20; ++trial) {
        GradedSpace a = random_space(rng, w);
        GradedSpace b = random_space(rng, Window{w.t_min + 1, w.t_max + 1});
        GradedSpace c = random_space(rng, Window{w.t_min + 2, w.t_max + 2});
        GradedMap f = random_map(rng, a, b, 1);
        GradedMap g = random_map(rng, b, c, 1);
        GradedMap gf = f.then(g);
        CHECK(gf.degree_shift() == 2);
        for (int t = w.t_min; t <= w.t_max; ++t) {
            if (a.dim(t) == 0) continue;
            gf2::Vec x(a.dim(t));
            for (int i = 0; i < x.size(); ++i)
                if (rng() % 2) x.set(i, true);
            CHECK(gf.apply(t, x) == g.apply(t + 1, f.apply(t, x)));
        }
    }
}

TEST_CASE("sum of maps acts pointwise") {
    std::mt19937 rng(1234);
    Window w{0, 3};
    GradedSpace a = random_space(rng, w);
    GradedSpace b = random_space(rng, w);
    GradedMap f = random_map(rng, a, b, 0);
    GradedMap g = random_map(rng, a, b, 0);
    GradedMap h = f + g;
    for (int t = w.t_min; t <= w.t_max; ++t) {
        if (a.dim(t) == 0) continue;
        gf2::Vec x(a.dim(t));
        for (int i = 0; i < x.size(); ++i)
            if (rng() % 2) x.set(i, true);
        gf2::Vec expect = f.apply(t, x);
        expect ^= g.apply(t, x);
        CHECK(h.apply(t, x) == expect);
    }
    // f + f == 0
    CHECK((f + f).is_zero(w));
}

TEST_CASE("identity map composes trivially") {
    std::mt19937 rng(777);
    Window w{-2, 3};
    GradedSpace a = random_space(rng, w);
    GradedMap id = graded_identity(a);
    CHECK(id.degree_shift() == 0);
    GradedSpace b = random_space(rng, w);
    GradedMap f = random_map(rng, a, b, 0);
    GradedMap lhs = id.then(f);
    for (int t = w.t_min; t <= w.t_max; ++t)
        CHECK(lhs.block(t) == f.block(t));
}

TEST_CASE("kernel and image satisfy degreewise rank-nullity") {
    std::mt19937 rng(31415);
    Window w{0, 6};
    for (int trial = 0; trial < 25; ++trial) {
        GradedSpace a = random_space(rng, w);
        GradedSpace b = random_space(rng, Window{w.t_min + 1, w.t_max + 1});
        GradedMap f = random_map(rng, a, b, 1);
        auto ker = graded_kernel(f, w);
        auto img = graded_image(f, w);
        auto ranks = f.rank_per_degree(w);
        for (int t = w.t_min; t <= w.t_max; ++t) {
            int kd = ker.count(t) ? ker.at(t).dim() : 0;
            int rd = ranks.count(t) ? ranks.at(t) : 0;
            CHECK(kd + rd == a.dim(t));
            int id = img.count(t + 1) ? img.at(t + 1).dim() : 0;
            CHECK(id == rd);
            // kernel members actually map to zero
            if (ker.count(t))
                for (int r = 0; r < ker.at(t).dim(); ++r)
                    CHECK(f.apply(t, ker.at(t).basis().row(r)).is_zero());
        }
    }
}

TEST_CASE("homology of an exact pair vanishes") {
    // 0 -> F2^n --id--> F2^n -> 0 at each degree: homology is zero
    GradedSpace a;
    a.set_dim(0, 3);
    a.set_dim(1, 2);
    GradedMap d_in(a, a, 0);
    for (auto [t, d] : a.dims()) d_in.set_block(t, gf2::Matrix::identity(d));
    GradedSpace zero;
    GradedMap d_out(a, zero, 1);
    GradedHomology h = graded_homology(d_in, d_out, Window{0, 1});
    CHECK(h.total_dim() == 0);
}

TEST_CASE("homology of the zero complex is the whole space") {
    GradedSpace a;
    a.set_dim(2, 4);
    a.set_dim(3, 1);
    GradedSpace zero;
    GradedMap d_in(zero, a, 0);
    GradedMap d_out(a, zero, 1);
    GradedHomology h = graded_homology(d_in, d_out, Window{2, 3});
    CHECK(h.dim(2) == 4);
    CHECK(h.dim(3) == 1);
    CHECK(h.total_dim() == 5);
}

TEST_CASE("homology rejects non-complexes") {
    GradedSpace a;
    a.set_dim(0, 1);
    GradedMap d_in(a, a, 0);
    d_in.set_block(0, gf2::Matrix::identity(1));
    GradedMap d_out(a, a, 0);
    d_out.set_block(0, gf2::Matrix::identity(1));
    // d_out ∘ d_in = identity != 0
    CHECK_THROWS_AS(graded_homology(d_in, d_out, Window{0, 0}), std::invalid_argument);
}

TEST_CASE("homology dimension equals cycles minus boundaries on random complexes") {
    std::mt19937 rng(2020);
    Window w{0, 5};
    int nontrivial = 0;
    for (int trial = 0; trial < 30; ++trial) {
        GradedSpace b = random_space(rng, w, 4);
        GradedSpace a = random_space(rng, Window{w.t_min, w.t_max}, 4);
        // random d_out, then build d_in whose image lies inside ker(d_out):
        GradedSpace c = random_space(rng, w, 4);
        GradedMap d_out = random_map(rng, b, c, 0);
        auto ker = graded_kernel(d_out, w);
        GradedMap d_in(a, b, 0);
        for (int t = w.t_min; t <= w.t_max; ++t) {
            if (a.dim(t) == 0 || b.dim(t) == 0) continue;
            if (!ker.count(t) || ker.at(t).dim() == 0) continue;
            // columns of the block are random kernel members
            gf2::Matrix blk(b.dim(t), a.dim(t));
            for (int c2 = 0; c2 < a.dim(t); ++c2) {
                gf2::Vec pick(b.dim(t));
                for (int r = 0; r < ker.at(t).dim(); ++r)
                    if (rng() % 2) pick ^= ker.at(t).basis().row(r);
                for (int r = 0; r < b.dim(t); ++r)
                    if (pick.get(r)) blk.set(r, c2, true);
            }
            d_in.set_block(t, blk);
        }
        GradedHomology h = graded_homology(d_in, d_out, w);
        for (int t = w.t_min; t <= w.t_max; ++t) {
            int cycles = h.cycles.count(t) ? h.cycles.at(t).dim() : 0;
            int bnd = h.boundaries.count(t) ? h.boundaries.at(t).dim() : 0;
            CHECK(h.dim(t) == cycles - bnd);
            if (h.dim(t) > 0) ++nontrivial;
        }
    }
    CHECK(nontrivial > 10);  // the sample produced genuinely nonzero homology
}
