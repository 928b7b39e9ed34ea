#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adams/spectral.hpp"

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace adams;
using namespace adams::spectral;

namespace {

gf2::Matrix random_invertible(std::mt19937& rng, int n) {
    gf2::Matrix m = gf2::Matrix::identity(n);
    if (n <= 1) return m;
    for (int ops = 0; ops < 2 * n * n + 4; ++ops) {
        int a = int(rng() % n);
        int b = int(rng() % n);
        if (a == b) continue;
        m.row(a) ^= m.row(b);
    }
    return m;
}

gf2::Matrix gf2_inverse(const gf2::Matrix& m) {
    int n = m.rows();
    gf2::Matrix inv(n, n);
    for (int c = 0; c < n; ++c) {
        gf2::Vec e(n), x(n);
        e.set(c, true);
        REQUIRE(gf2::solve(m, e, x));
        for (int r = 0; r < n; ++r)
            if (x.get(r)) inv.set(r, c, true);
    }
    REQUIRE(m * inv == gf2::Matrix::identity(n));
    return inv;
}

// A random level-pure filtered complex assembled from "dots" (one basis
// vector, zero differential: survives to the limit) and "bars" (two basis
// vectors on adjacent levels joined by an isomorphism: dies), hidden behind
// a random change of basis on every (level, degree).  The number of dots is
// an oracle for the total limit dimension that never touches the page
// engine.
struct RandomFiltered {
    FilteredComplex f;
    std::map<int, int> dots_per_degree;
    int total_dots = 0;
};

RandomFiltered random_filtered(std::mt19937& rng, int max_levels = 4, int max_t = 2,
                               int max_entities = 5) {
    RandomFiltered out;
    int levels = 2 + int(rng() % (max_levels - 1));
    FilteredComplex& f = out.f;
    f.window = Window{0, max_t};
    f.spaces.resize(levels);
    f.steps.resize(levels);
    int st = int(rng() % 2);
    for (int n = 0; n < levels; ++n) {
        f.steps[n] = st;
        st += 1 + int(rng() % 3);
    }

    std::vector<std::vector<int>> dots(levels, std::vector<int>(max_t + 1, 0));
    std::vector<std::vector<int>> bars(levels, std::vector<int>(max_t + 1, 0));  // starting level
    for (int t = 0; t <= max_t; ++t) {
        int entities = int(rng() % (max_entities + 1));
        for (int e = 0; e < entities; ++e) {
            if (rng() % 2) {
                ++dots[int(rng() % levels)][t];
                ++out.dots_per_degree[t];
                ++out.total_dots;
            } else {
                ++bars[int(rng() % (levels - 1))][t];
            }
        }
    }

    auto dim_at = [&](int n, int t) {
        return dots[n][t] + bars[n][t] + (n >= 1 ? bars[n - 1][t] : 0);
    };
    for (int n = 0; n < levels; ++n)
        for (int t = 0; t <= max_t; ++t)
            if (dim_at(n, t) > 0) f.spaces[n].set_dim(t, dim_at(n, t));

    // change of basis per (level, degree)
    std::vector<std::vector<gf2::Matrix>> basis(levels), basis_inv(levels);
    for (int n = 0; n < levels; ++n)
        for (int t = 0; t <= max_t; ++t) {
            gf2::Matrix p = random_invertible(rng, dim_at(n, t));
            basis[n].push_back(p);
            basis_inv[n].push_back(dim_at(n, t) > 0 ? gf2_inverse(p) : gf2::Matrix(0, 0));
        }

    for (int n = 0; n < levels; ++n) {
        GradedSpace target = (n + 1 < levels) ? f.spaces[n + 1] : GradedSpace{};
        GradedMap d(f.spaces[n], target, 0);
        if (n + 1 < levels) {
            for (int t = 0; t <= max_t; ++t) {
                int rows = dim_at(n + 1, t), cols = dim_at(n, t);
                if (rows == 0 || cols == 0) continue;
                gf2::Matrix std_d(rows, cols);
                for (int i = 0; i < bars[n][t]; ++i)
                    std_d.set(dots[n + 1][t] + bars[n + 1][t] + i, dots[n][t] + i, true);
                d.set_block(t, basis[n + 1][t] * std_d * basis_inv[n][t]);
            }
        }
        f.diff.push_back(std::move(d));
    }
    return out;
}

}  // namespace

TEST_CASE("cosimplicial dual of a resolution passes the identity audit") {
    auto res = simplicial::cw_resolve(unstable::sphere_presentation(5), 3, 16);
    simplicial::SimplicialModule v = res.complex.simplicial();
    CosimplicialModule w = dualize(v);
    w.check_identities();
    // levels transpose: dims agree with the simplicial side
    for (int n = 0; n <= w.top_level(); ++n)
        for (int t = w.window.t_min; t <= w.window.t_max; ++t)
            CHECK(w.levels[n].dim(t) == v.levels[n].dim(t));
}

TEST_CASE("normalization and quotient cochains have equal dimensions") {
    auto res = simplicial::cw_resolve(unstable::sphere_presentation(5), 3, 16);
    CosimplicialModule w = dualize(res.complex.simplicial());
    QuotientCochains qc = moore_cochains(w);
    CochainComplex cc = d1_complex(w);
    for (int n = 0; n <= w.top_level(); ++n)
        for (int t = w.window.t_min; t <= w.window.t_max; ++t)
            CHECK(cc.spaces[n].dim(t) == qc.spaces[n].dim(t));
    // both differentials square to zero
    for (int n = 0; n + 1 <= w.top_level(); ++n) {
        CHECK(cc.diff[n].then(cc.diff[n + 1]).is_zero(w.window));
        CHECK(qc.diff[n].then(qc.diff[n + 1]).is_zero(w.window));
    }
}

TEST_CASE("bottom differential is the transposed chain differential") {
    auto res = simplicial::cw_resolve(unstable::sphere_presentation(5), 3, 16);
    simplicial::SimplicialModule v = res.complex.simplicial();
    CochainComplex cc = d1_complex(dualize(v));
    simplicial::MooreComplex mc = simplicial::moore_complex(v);
    for (int t = v.window.t_min; t <= v.window.t_max; ++t) {
        gf2::Matrix dn = cc.diff[0].block(t);
        gf2::Matrix dm = mc.diff[1].block(t);
        REQUIRE(dn.rows() == dm.cols());
        REQUIRE(dn.cols() == dm.rows());
        CHECK(dn == dm.transpose());
    }
}

TEST_CASE("normalization dims match quotient dims across random presentations") {
    std::mt19937 rng(20260825);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        unstable::Presentation p;
        p.name = "rand";
        int ngens = 1 + int(rng() % 2);
        for (int g = 0; g < ngens; ++g)
            p.generators.push_back({"g" + std::to_string(g), 1 + int(rng() % 4)});
        int nrel = int(rng() % 3);
        for (int r = 0; r < nrel; ++r) {
            int g = int(rng() % ngens);
            int k = 1 + int(rng() % p.generators[g].degree);
            steenrod::Monomial op;
            op.sq.push_back(k);
            p.relations.push_back(unstable::FreeElement(unstable::FreeTerm{op, g}));
        }
        int t_max = 6;
        for (const auto& g : p.generators) t_max = std::max(t_max, g.degree + 5);
        auto res = simplicial::cw_resolve(p, 2, t_max, (trial % 2) == 0);
        CosimplicialModule w = dualize(res.complex.simplicial());
        w.check_identities();
        QuotientCochains qc = moore_cochains(w);
        CochainComplex cc = d1_complex(w);
        for (int n = 0; n <= w.top_level(); ++n)
            for (int t = w.window.t_min; t <= w.window.t_max; ++t)
                CHECK(cc.spaces[n].dim(t) == qc.spaces[n].dim(t));
        for (int n = 0; n + 1 <= w.top_level(); ++n)
            CHECK(cc.diff[n].then(cc.diff[n + 1]).is_zero(w.window));
        ++checked;
    }
    CHECK(checked == 25);
}

TEST_CASE("sphere resolution pages: corner entries are one-dimensional") {
    auto res = simplicial::cw_resolve(unstable::sphere_presentation(5), 3, 16);
    ResolutionPages rp = resolution_pages(res);
    REQUIRE(rp.e1.table.size() == 4);
    CHECK(rp.e1.table[0].dim(5) == 1);
    CHECK(rp.e1.table[0].labels(5)[0] == "i5");
    CHECK(rp.e1.table[1].dim(6) == 1);
    CHECK(rp.e1.table[1].labels(6)[0] == "v1_6_0");
    // a minimal resolution has vanishing d1, so the next page is unchanged
    for (int s = 0; s <= 2; ++s) CHECK(rp.e1.diff[s].is_zero(res.complex.window()));
    CHECK(rp.e2.table[0].dim(5) == 1);
    CHECK(rp.e2.table[1].dim(6) == 1);
    CHECK(e2_from_resolution(res).table[0].dim(5) == 1);
}

TEST_CASE("redundant generator pair cancels through a nonzero d1") {
    auto mres = simplicial::cw_resolve(unstable::moore_presentation(5), 2, 12);
    ResolutionPages mp = resolution_pages(mres);
    CHECK(mp.e1.table[0].dim(6) == 1);
    CHECK(mp.e1.table[1].dim(6) == 1);
    CHECK_FALSE(mp.e1.diff[0].is_zero(mres.complex.window()));
    CHECK(mp.e2.table[0].dim(6) == 0);
    CHECK(mp.e2.table[1].dim(6) == 0);
    CHECK(mp.e2.table[0].dim(5) == 1);
}

TEST_CASE("chart serialization round-trips") {
    auto res = simplicial::cw_resolve(unstable::sphere_presentation(5), 3, 16);
    SpectralPage e2 = e2_from_resolution(res);
    std::string tsv = chart_tsv(e2);
    CHECK(tsv.substr(0, tsv.find('\n')) == "s\tt-s\tdim\tnames");
    CHECK(tsv.find("0\t5\t1\ti5") != std::string::npos);
    std::istringstream in(tsv);
    SpectralPage parsed = parse_chart(in);
    CHECK(chart_tsv(parsed) == tsv);

    std::istringstream bad("s\tt-s\tdim\tnames\n0\tx\t1\t-\n");
    CHECK_THROWS_AS(parse_chart(bad), unstable::ParseError);
}

TEST_CASE("two-step filtration drives a second-page differential") {
    FilteredComplex f;
    f.window = Window{0, 0};
    f.spaces.resize(2);
    f.spaces[0].set_dim(0, 1);
    f.spaces[1].set_dim(0, 1);
    GradedMap d0(f.spaces[0], f.spaces[1], 0);
    gf2::Matrix m(1, 1);
    m.set(0, 0, true);
    d0.set_block(0, m);
    f.diff.push_back(std::move(d0));
    f.diff.push_back(GradedMap(f.spaces[1], GradedSpace{}, 0));
    f.steps = {0, 2};
    f.validate();
    CHECK(f.filtration_length() == 2);
    CHECK(f.jump(0) == 2);

    auto ps = pages(f, 4);
    REQUIRE(ps.size() == 4);
    // E1: both classes alive, no differential (jump is 2, not 1)
    CHECK(ps[0].r == 1);
    CHECK(ps[0].table[0].dim(0) == 1);
    CHECK(ps[0].table[1].dim(0) == 1);
    CHECK(ps[0].diff[0].is_zero(f.window));
    // E2: differential appears and kills both
    CHECK(ps[1].table[0].dim(0) == 1);
    CHECK(ps[1].table[1].dim(0) == 1);
    CHECK_FALSE(ps[1].diff[0].is_zero(f.window));
    // E3 onwards: zero, stable
    CHECK(ps[2].table[0].dim(0) == 0);
    CHECK(ps[2].table[1].dim(0) == 0);
    CHECK(pages_equal(ps[2], ps[3], f.window));
    SpectralPage lim = limit_page(f);
    CHECK(lim.r == -1);
    CHECK(lim.table[0].dim(0) == 0);
    CHECK(lim.table[1].dim(0) == 0);
}

TEST_CASE("page serialization mirrors the filtered input format") {
    FilteredComplex f;
    f.window = Window{0, 0};
    f.spaces.resize(2);
    f.spaces[0].set_dim(0, 1);
    f.spaces[1].set_dim(0, 1);
    GradedMap d0(f.spaces[0], f.spaces[1], 0);
    gf2::Matrix m(1, 1);
    m.set(0, 0, true);
    d0.set_block(0, m);
    f.diff.push_back(std::move(d0));
    f.diff.push_back(GradedMap(f.spaces[1], GradedSpace{}, 0));
    f.steps = {0, 2};

    auto ps = pages(f, 3);
    CHECK(page_text(ps[1]) ==
          "page\t2\n"
          "space\t0\t0\t1\n"
          "space\t1\t0\t1\n"
          "filtration\t0\t0\n"
          "filtration\t1\t2\n"
          "diff\t0\t0\t1\n");
    CHECK(page_text(ps[2]) ==
          "page\t3\n"
          "filtration\t0\t0\n"
          "filtration\t1\t2\n");
    CHECK(page_text(limit_page(f)) ==
          "page\tlimit\n"
          "filtration\t0\t0\n"
          "filtration\t1\t2\n");
}

TEST_CASE("filtered-complex parser accepts the documented grammar") {
    std::istringstream in(
        "# demo\n"
        "space 0 0 1\n"
        "space 1 0 1\n"
        "diff 0 0 1\n"
        "filtration 0 0\n"
        "filtration 1 2\n");
    FilteredComplex f = parse_filtered(in);
    CHECK(f.top_level() == 1);
    CHECK(f.steps[1] == 2);
    auto ps = pages(f, 3);
    CHECK(ps[2].table[0].dim(0) == 0);

    std::istringstream bad("space 0 0 1\nspace 0 0 2\n");
    try {
        parse_filtered(bad);
        FAIL_CHECK("expected a parse error");
    } catch (const unstable::ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("zero module yields empty pages") {
    unstable::Presentation zero;
    zero.name = "zero";
    auto zres = simplicial::cw_resolve(zero, 2, 5);
    SpectralPage e2 = e2_from_resolution(zres);
    for (const auto& tb : e2.table) CHECK(tb.total_dim() == 0);
}

TEST_CASE("random filtered complexes: limit dimension equals the planted count") {
    std::mt19937 rng(4096);
    for (int trial = 0; trial < 40; ++trial) {
        RandomFiltered rf = random_filtered(rng);
        rf.f.validate();
        SpectralPage lim = limit_page(rf.f);
        int total = 0;
        for (const auto& tb : lim.table) total += tb.total_dim();
        CHECK(total == rf.total_dots);
        for (int t = rf.f.window.t_min; t <= rf.f.window.t_max; ++t) {
            int at_t = 0;
            for (const auto& tb : lim.table) at_t += tb.dim(t);
            int want = rf.dots_per_degree.count(t) ? rf.dots_per_degree.at(t) : 0;
            CHECK(at_t == want);
        }
    }
}

TEST_CASE("random filtered complexes stabilize one past the filtration length") {
    std::mt19937 rng(8192);
    for (int trial = 0; trial < 25; ++trial) {
        RandomFiltered rf = random_filtered(rng);
        rf.f.validate();
        int len = rf.f.filtration_length();
        auto ps = pages(rf.f, len + 2);
        REQUIRE(int(ps.size()) == len + 2);
        // E_{len+1} == E_{len+2}
        CHECK(pages_equal(ps[len], ps[len + 1], rf.f.window));
        // and both agree with the limit page dimensionwise
        SpectralPage lim = limit_page(rf.f);
        for (std::size_t n = 0; n < lim.table.size(); ++n)
            for (int t = rf.f.window.t_min; t <= rf.f.window.t_max; ++t)
                CHECK(ps[len].table[n].dim(t) == lim.table[n].dim(t));
        // every page differential block sits where the step jump equals r
        for (int i = 0; i < int(ps.size()); ++i)
            for (int n = 0; n + 1 < int(ps[i].table.size()); ++n)
                if (rf.f.jump(n) != ps[i].r)
                    CHECK(ps[i].diff[n].is_zero(rf.f.window));
    }
}
