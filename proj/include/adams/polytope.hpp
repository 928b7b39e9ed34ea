#pragma once

// Folding polytopes: chains of n-simplices glued facet-to-facet along
// order-preserving facet bijections, the facet tag schemes recording which
// obstruction map each boundary facet carries, and homology verification
// that the assembled complexes are balls with sphere boundaries.
//
// Simplices are abstract (vertex-labelled); no coordinates are stored.  All
// geometric claims are checked through mod-2 simplicial homology and Euler
// characteristics, with signed integral boundary matrices exposed so tests
// can cross-check through Smith normal form.

#include "adams/gf2.hpp"
#include "adams/smith.hpp"

#include <map>
#include <string>
#include <vector>

namespace adams::polytope {

// ---------------------------------------------------------------------------
// FaceComplex: an abstract simplicial complex, closed under taking faces.
//
// A face is a strictly increasing list of global vertex ids.  Faces are kept
// lexicographically sorted within each dimension, which fixes the chain-group
// bases and makes every derived matrix deterministic.
// ---------------------------------------------------------------------------
class FaceComplex {
public:
    FaceComplex() = default;

    // Builds the closure of the given cells (duplicates are merged).
    static FaceComplex from_cells(const std::vector<std::vector<int>>& cells);

    // Largest dimension carrying a face; -1 for the empty complex.
    int dim() const { return int(faces_.size()) - 1; }
    int count(int d) const {
        return (d >= 0 && d < int(faces_.size())) ? int(faces_[d].size()) : 0;
    }
    int total_faces() const;
    const std::vector<std::vector<int>>& faces(int d) const { return faces_[d]; }

    bool contains(const std::vector<int>& face) const;
    // Index of a face within its dimension; -1 if absent.
    int index_of(const std::vector<int>& face) const;

    // Boundary C_d -> C_{d-1} over GF(2) (columns indexed by d-faces).
    gf2::Matrix boundary_mod2(int d) const;
    // Signed boundary over the integers, alternating-sum convention on the
    // sorted vertex list.
    IntMatrix boundary_int(int d) const;

    // Unreduced mod-2 homology dimensions in degrees 0..top_degree.
    std::vector<int> mod2_homology(int top_degree) const;

    long euler() const;

private:
    // faces_[d]: sorted list of d-faces.
    std::vector<std::vector<std::vector<int>>> faces_;
};

// Unreduced mod-2 homology of the pair (x, a) in degrees 0..top_degree; a
// must be a subcomplex of x.  Degree-d chains are the faces of x not in a.
std::vector<int> relative_mod2_homology(const FaceComplex& x, const FaceComplex& a,
                                        int top_degree);

// ---------------------------------------------------------------------------
// GluedComplex: k top n-simplices with facet identifications.
// ---------------------------------------------------------------------------

struct FacetRef {
    int position = 0;  // index into the simplex list, 0..k-1
    int facet = 0;     // facet index, 0..n (facet i omits local vertex i)
};

struct Gluing {
    FacetRef a;
    FacetRef b;
};

class GluedComplex {
public:
    // subscripts: display subscript per position; gluings are applied via the
    // unique order-preserving bijection between the two facets' vertex lists.
    GluedComplex(int n, std::vector<int> subscripts, std::vector<Gluing> gluings);

    int n() const { return n_; }
    int simplex_count() const { return int(subscripts_.size()); }
    const std::vector<int>& subscripts() const { return subscripts_; }
    const std::vector<Gluing>& gluings() const { return gluings_; }

    int vertex_count() const { return vertex_count_; }
    int global_vertex(int position, int v) const { return vertex_id_[position][v]; }
    // Global ids of the facet's vertices, in increasing local-vertex order.
    std::vector<int> facet_vertices(int position, int facet) const;

    bool is_interior(int position, int facet) const;
    int interior_facet_count() const { return int(gluings_.size()); }
    int boundary_facet_count() const;

    // The whole polytope as a closed simplicial complex.
    FaceComplex closure() const;
    // The union of the unglued facets, closed under faces.
    FaceComplex boundary_complex() const;

    // Incidence scan: every top simplex embeds (n+1 distinct global
    // vertices), every (n-1)-face lies in at most two top simplices, and the
    // shared ones are exactly the declared gluings.  Throws std::logic_error
    // on violation.
    void validate() const;

private:
    int n_ = 0;
    std::vector<int> subscripts_;
    std::vector<Gluing> gluings_;
    std::vector<std::vector<int>> vertex_id_;  // [position][local vertex]
    int vertex_count_ = 0;
};

// Standard family: subscripts n-k+1..n; consecutive subscripts m, m+1 are
// glued along facet n-m-1 of both.  Requires 1 <= k <= n+1, n >= 1.
GluedComplex build_folding(int n, int k);
// Modified family: subscripts n-k..n-1 (for k <= n) or 0..n (for k = n+1);
// consecutive subscripts m, m+1 are glued along facet n-m-1 of the first and
// facet n-m of the second.
GluedComplex build_modified(int n, int k);

std::vector<int> folding_subscripts(int n, int k);
std::vector<int> modified_subscripts(int n, int k);

// ---------------------------------------------------------------------------
// Facet tags.
// ---------------------------------------------------------------------------

enum class LabelVariant { standard, modified, filtration };

// Accepts "standard", "modified", "filtration"; throws std::invalid_argument.
LabelVariant parse_variant(const std::string& s);
std::string variant_name(LabelVariant v);

struct FacetLabel {
    int subscript = 0;  // display subscript of the simplex
    int facet = 0;
    std::string tag;    // "F0G0", "ipH1", "F-1G-1", "F0egq(degenerate)" or "*"
};

// Tag table for the chosen family and variant, sorted by (subscript, facet).
// Interior facets always carry matching "ipH" tags on both sides.  The
// filtration variant is defined for k <= n only (throws otherwise).
std::vector<FacetLabel> facet_labels(int n, int k, LabelVariant variant);

// One row per facet: "<subscript>\t<facet>\t<tag>\n".
std::string facet_label_table(const std::vector<FacetLabel>& labels);

// ---------------------------------------------------------------------------
// Verification reports.
// ---------------------------------------------------------------------------

struct BallReport {
    int n = 0;
    int k = 0;
    int vertices = 0;
    int interior_facets = 0;
    int boundary_facets = 0;
    long chi = 0;
    long chi_boundary = 0;
    std::vector<int> h;           // polytope, degrees 0..n
    std::vector<int> h_boundary;  // boundary, degrees 0..n-1 (degree 0 only if n = 1)
    std::vector<int> h_quotient;  // polytope with boundary collapsed, degrees 0..n
    bool ok = false;
    std::vector<std::string> failures;

    // counts block + homology block + verdict, tab-separated, newline-ended.
    // A nonempty label_table is inserted as a `labels` block between the
    // homology block and the verdict.
    std::string text(const std::string& label_table = std::string()) const;
};

// Checks that the complex has point homology, that its boundary has the mod-2
// homology of S^{n-1}, that collapsing the boundary yields S^n homology, and
// that the Euler characteristics agree.  Mismatches are reported, not thrown.
BallReport verify_ball(const GluedComplex& c);

struct SphereDomainReport {
    int n = 0;
    int k = 0;
    LabelVariant variant = LabelVariant::standard;
    std::vector<int> cone_vertices;  // distinct global ids, sorted
    // cone vertex -> boundary facets whose closure contains it.
    std::map<int, std::vector<FacetRef>> star;
    int collapsed_faces = 0;     // faces of the collapsed subcomplex
    long chi_boundary = 0;
    long chi_quotient = 0;       // recounted from the quotient cell structure
    std::vector<int> h_quotient; // degrees 0..n-1
    bool ok = false;
    std::vector<std::string> failures;

    std::string text() const;
};

// The boundary complex with the cone vertices of every simplex (local
// vertices 0..n-m-1 of the simplex with subscript m) collapsed: records each
// cone vertex's star, collapses the subcomplex they span, and verifies the
// quotient still has the mod-2 homology of S^{n-1} with consistent Euler
// bookkeeping.  The variant selects the family (standard or modified).
SphereDomainReport sphere_class_domain(int n, int k, LabelVariant variant);

}  // namespace adams::polytope
