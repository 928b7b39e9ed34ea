#pragma once

// Cosimplicial duals, Moore cochains, the d1 cochain complex, and a
// spectral-sequence page engine for filtered cochain complexes.
//
// Conventions.  Dualizing a truncated simplicial module transposes every
// structure matrix: cofaces d^i are the transposed faces, codegeneracies
// s^j the transposed degeneracies.  The normalization N^n is the joint
// kernel of the codegeneracies; d1 is the full coface sum (at
// characteristic 2 the alternating signs drop, recorded by a convention
// flag so a signed extension stays possible).
//
// The page engine works on level-pure filtered complexes: a cochain
// complex C^0 -> C^1 -> ... of graded spaces where every level carries one
// filtration step, non-decreasing with the level.  Page r of the induced
// spectral sequence is computed degreewise from the definitional cycle and
// boundary spaces Z_r = F ∩ d^{-1}F(+r), B_r = d(Z_{r-1}); its
// differential raises the level by one and the filtration step by r, so a
// block can only be nonzero where the step jumps by exactly r.

#include "adams/graded.hpp"
#include "adams/simplicial.hpp"
#include "adams/unstable.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace adams::spectral {

struct CosimplicialModule {
    Window window{0, -1};
    std::vector<GradedSpace> levels;
    // cofaces[n][i] : levels[n-1] -> levels[n] for i = 0..n; cofaces[0] empty.
    std::vector<std::vector<GradedMap>> cofaces;
    // codegens[n][j] : levels[n+1] -> levels[n] for j = 0..n; codegens[top] empty.
    std::vector<std::vector<GradedMap>> codegens;

    int top_level() const { return static_cast<int>(levels.size()) - 1; }

    // Verify shapes and the cosimplicial identities inside the truncation;
    // throws std::invalid_argument naming the first failure.
    void check_identities() const;
};

// Degreewise transpose of all structure maps.
CosimplicialModule dualize(const simplicial::SimplicialModule& v);

// N^n = ∩_{j=0}^{n-1} ker s^j; every window degree gets an entry.
std::map<int, gf2::Subspace> normalized_cochains(const CosimplicialModule& w, int n);

// The cochain complex (N^*, d1) with d1 = Σ_{i} d^i restricted to the
// normalization, in N-coordinates.  diff[n] : spaces[n] -> spaces[n+1];
// the top slot maps to the zero space.  Throws std::invalid_argument if
// d1 fails to preserve the normalization or d1∘d1 != 0 (both symptoms of
// broken cosimplicial identities).
struct CochainComplex {
    Window window{0, -1};
    bool mod2_signs = true;  // all-plus convention; false would mean alternating
    std::vector<std::map<int, gf2::Subspace>> normalized;
    std::vector<GradedSpace> spaces;
    std::vector<GradedMap> diff;
};
CochainComplex d1_complex(const CosimplicialModule& w);

// Moore cochains: C^n = W^n / (im d^1 + ... + im d^n) with the
// differential induced by d^0.  Checks the cosimplicial identities first
// (std::invalid_argument) and asserts the induced differential squares to
// zero.
struct QuotientCochains {
    Window window{0, -1};
    std::vector<std::map<int, gf2::Subspace>> degenerate;  // divided-out subspace
    std::vector<std::map<int, gf2::QuotientBasis>> classes;
    std::vector<GradedSpace> spaces;
    std::vector<GradedMap> diff;
};
QuotientCochains moore_cochains(const CosimplicialModule& w);

// One page of a spectral sequence.  Slots are cochain levels (page
// engine) or resolution filtrations (E2 from a resolution); entries are
// graded by internal degree.  diff[n] maps slot n to slot n+1; for the
// filtered-complex engine it raises the filtration step by r.  The E2
// page returned from a resolution carries no differentials (higher
// differentials are not synthesized from space-level data).
struct SpectralPage {
    int r = 0;  // -1 marks the limit page
    std::vector<GradedSpace> table;
    std::vector<GradedMap> diff;
    std::vector<int> steps;  // filtration step per slot (page engine only)
};

// Same dimensions everywhere and the same differential blocks.
bool pages_equal(const SpectralPage& a, const SpectralPage& b, const Window& w);

// Level-pure filtered cochain complex.
struct FilteredComplex {
    Window window{0, -1};
    std::vector<GradedSpace> spaces;
    // diff[n] : spaces[n] -> spaces[n+1], degree-preserving; the top slot
    // maps to the zero space.
    std::vector<GradedMap> diff;
    std::vector<int> steps;

    int top_level() const { return static_cast<int>(spaces.size()) - 1; }
    // steps[n+1] - steps[n]; the top level reports a sentinel larger than
    // any finite jump.
    int jump(int n) const;
    int filtration_length() const;

    // Shapes, step monotonicity, d∘d = 0; throws std::invalid_argument.
    void validate() const;
};

// Line-oriented format:
//   space <level> <degree> <dim>
//   diff <level> <degree> <bit-rows;semicolon-separated>
//   filtration <level> <step>
// A `diff` block at (n, t) maps level n to level n+1 in degree t; bit
// rows are strings over {0,1}, one per target basis vector.  `#` starts a
// comment.  Errors carry 1-based line numbers (unstable::ParseError).
FilteredComplex parse_filtered(std::istream& in);
FilteredComplex parse_filtered_file(const std::string& path);

// Pages E_1..E_r_max of the filtered complex.
std::vector<SpectralPage> pages(const FilteredComplex& f, int r_max);
// The stable page: levelwise homology of the complex (r = -1).
SpectralPage limit_page(const FilteredComplex& f);

// E1/E2 of a CW resolution: slot s holds the duals of the stage-s
// generators (one basis vector per generator, graded by the generator's
// degree, labelled by its name); d1's matrix entry (w, v) is the
// coefficient of the bare generator v in the attaching image of w.  E2 is
// the homology of (E1, d1); its labels join the E1 labels of each class
// representative with '+'.
struct ResolutionPages {
    SpectralPage e1;  // r = 1, carries d1
    SpectralPage e2;  // r = 2, no differentials
};
ResolutionPages resolution_pages(const simplicial::CWResolution& r);
SpectralPage e2_from_resolution(const simplicial::CWResolution& r);

// Chart serialization: header `s<TAB>t-s<TAB>dim<TAB>names`, one row per
// nonzero entry, sorted by (t-s, s); names are comma-joined labels or `-`
// when the entry is unlabelled.
std::string chart_tsv(const SpectralPage& p);

// Page serialization mirroring the filtered-complex input format: a
// `page <r>` header (`limit` for the stable page), then `space`,
// `filtration` and nonzero `diff` lines in ascending (level, degree)
// order.  Differential bit-rows are semicolon-separated strings over
// {0,1}, one row per target basis vector.
std::string page_text(const SpectralPage& p);
// Parse a chart back into a bare page (r = 0, labels restored, no
// differentials).  Errors carry 1-based line numbers.
SpectralPage parse_chart(std::istream& in);

}  // namespace adams::spectral
