#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adams/polytope.hpp"
#include "adams/smith.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace adams;
using namespace adams::polytope;

namespace {

std::string read_golden(const std::string& name) {
    std::ifstream in(std::string(GOLDEN_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("single simplex is a clean ball") {
    GluedComplex c = build_folding(4, 1);
    CHECK(c.simplex_count() == 1);
    CHECK(c.interior_facet_count() == 0);
    CHECK(c.boundary_facet_count() == 5);
    CHECK(c.vertex_count() == 5);
    c.validate();
    BallReport r = verify_ball(c);
    CHECK(r.ok);
    CHECK(r.failures.empty());
    CHECK(r.h == std::vector<int>({1, 0, 0, 0, 0}));
    CHECK(r.h_boundary == std::vector<int>({1, 0, 0, 1}));
    CHECK(r.chi == 1);
}

TEST_CASE("three glued tetrahedra: counts, closure, homology") {
    GluedComplex c = build_folding(3, 3);
    CHECK(c.simplex_count() == 3);
    CHECK(c.interior_facet_count() == 2);
    CHECK(c.boundary_facet_count() == 8);
    c.validate();
    // 12 facet slots with two glued pairs merged leave 10 distinct 2-faces
    CHECK(c.closure().count(2) == 10);
    CHECK(c.vertex_count() == 6);

    BallReport r = verify_ball(c);
    CHECK(r.ok);
    CHECK(r.h_boundary == std::vector<int>({1, 0, 1}));
    CHECK(r.chi == 1);
    CHECK(r.chi_boundary == 2);

    // report text carries the verdict and a homology block
    std::string text = r.text();
    CHECK(text.find("ok") != std::string::npos);
    CHECK(text.find("labels") == std::string::npos);
    // a supplied label table is inserted as its own block
    std::string with = r.text("0\t0\tX\n");
    CHECK(with.find("labels\n0\t0\tX\n") != std::string::npos);
}

TEST_CASE("signed boundary matrices square to zero and match mod-2 ranks") {
    GluedComplex c = build_folding(3, 3);
    FaceComplex cl = c.closure();
    for (int d = 1; d <= cl.dim(); ++d) {
        IntMatrix b = cl.boundary_int(d);
        CHECK(mod2_rank_via_smith(b) == gf2::rank(cl.boundary_mod2(d)));
        if (d >= 2) {
            IntMatrix prod = cl.boundary_int(d - 1) * b;
            for (int i = 0; i < prod.rows(); ++i)
                for (int j = 0; j < prod.cols(); ++j)
                    CHECK(prod.at(i, j) == 0);
        }
    }
}

TEST_CASE("both families are balls for every stage count up to dimension six") {
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n + 1; ++k)
            for (bool modified : {false, true}) {
                CAPTURE(n);
                CAPTURE(k);
                CAPTURE(modified);
                GluedComplex c = modified ? build_modified(n, k) : build_folding(n, k);
                c.validate();
                CHECK(c.interior_facet_count() == k - 1);
                CHECK(c.boundary_facet_count() == k * (n + 1) - 2 * (k - 1));
                BallReport r = verify_ball(c);
                CHECK(r.ok);
                if (!r.ok)
                    for (const std::string& f : r.failures) MESSAGE(f);
            }
}

TEST_CASE("facet label tables match the frozen goldens") {
    CHECK(facet_label_table(facet_labels(3, 3, LabelVariant::standard)) ==
          read_golden("labels_33_standard.tsv"));
    CHECK(facet_label_table(facet_labels(3, 3, LabelVariant::filtration)) ==
          read_golden("labels_33_filtration.tsv"));
}

TEST_CASE("variant names parse and print consistently") {
    for (LabelVariant v :
         {LabelVariant::standard, LabelVariant::modified, LabelVariant::filtration})
        CHECK(parse_variant(variant_name(v)) == v);
    CHECK_THROWS_AS(parse_variant("bogus"), std::invalid_argument);
    // the filtration scheme needs the shifted family, defined only for k <= n
    CHECK_THROWS_AS(facet_labels(3, 4, LabelVariant::filtration), std::invalid_argument);
}

TEST_CASE("label schemes have the structural invariants across the sweep") {
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n + 1; ++k)
            for (LabelVariant v :
                 {LabelVariant::standard, LabelVariant::modified, LabelVariant::filtration}) {
                if (v == LabelVariant::filtration && k > n) continue;
                CAPTURE(n);
                CAPTURE(k);
                auto labels = facet_labels(n, k, v);
                CHECK(int(labels.size()) == k * (n + 1));
                GluedComplex c =
                    v == LabelVariant::standard ? build_folding(n, k) : build_modified(n, k);
                auto subs = c.subscripts();
                auto tag_of = [&](int pos, int facet) {
                    for (const auto& l : labels)
                        if (l.subscript == subs[pos] && l.facet == facet) return l.tag;
                    return std::string("missing");
                };
                // interior facets carry matching homotopy-insertion tags on both sides
                for (const auto& g : c.gluings()) {
                    std::string ta = tag_of(g.a.position, g.a.facet);
                    std::string tb = tag_of(g.b.position, g.b.facet);
                    CHECK(ta == tb);
                    CHECK(ta.rfind("ipH", 0) == 0);
                }
                if (v == LabelVariant::standard) {
                    // exactly one composition facet per simplex
                    for (int p = 0; p < k; ++p) {
                        int fg = 0;
                        for (int f = 0; f <= n; ++f) {
                            std::string t = tag_of(p, f);
                            if (t[0] == 'F' && t.find('G') != std::string::npos &&
                                t.find("egq") == std::string::npos)
                                ++fg;
                        }
                        CHECK(fg == 1);
                    }
                }
            }
}

TEST_CASE("sphere-class domains collapse to spheres") {
    SphereDomainReport r = sphere_class_domain(3, 3, LabelVariant::standard);
    CHECK(r.ok);
    CHECK(r.h_quotient == std::vector<int>({1, 0, 1}));
    CHECK(r.cone_vertices.size() == 2);

    SphereDomainReport r1 = sphere_class_domain(4, 1, LabelVariant::standard);
    CHECK(r1.ok);
    CHECK(r1.cone_vertices.empty());
    CHECK(r1.h_quotient == std::vector<int>({1, 0, 0, 1}));

    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n + 1; ++k)
            for (LabelVariant v :
                 {LabelVariant::standard, LabelVariant::modified, LabelVariant::filtration}) {
                if (v == LabelVariant::filtration && k > n) continue;
                CAPTURE(n);
                CAPTURE(k);
                SphereDomainReport rep = sphere_class_domain(n, k, v);
                CHECK(rep.ok);
                CHECK(rep.chi_quotient == rep.chi_boundary);
                if (!rep.ok)
                    for (const std::string& f : rep.failures) MESSAGE(f);
            }
}

TEST_CASE("glued complexes expose coherent vertex bookkeeping") {
    GluedComplex c = build_folding(3, 3);
    // facet vertex lists have n entries, strictly increasing global ids appear
    for (int p = 0; p < c.simplex_count(); ++p)
        for (int f = 0; f <= c.n(); ++f) {
            auto verts = c.facet_vertices(p, f);
            CHECK(int(verts.size()) == c.n());
            for (int v : verts) {
                CHECK(v >= 0);
                CHECK(v < c.vertex_count());
            }
        }
    // interior flags agree with the gluing list
    int interior = 0;
    for (int p = 0; p < c.simplex_count(); ++p)
        for (int f = 0; f <= c.n(); ++f)
            if (c.is_interior(p, f)) ++interior;
    CHECK(interior == 2 * c.interior_facet_count());
}
