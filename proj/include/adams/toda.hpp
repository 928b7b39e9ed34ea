#pragma once

// Chain-level Toda brackets with indeterminacy.
//
// Complexes are bounded complexes of finitely generated free abelian groups
// (integer matrices, arbitrary precision).  Given composable chain maps
// h: A->B, g: B->C, f: C->D with chosen nullhomotopies G of g∘h and F of
// f∘g, the bracket value is the homology class of f∘G - F∘h inside
// H(Hom(A,D)) in map degree +1, and the indeterminacy is the subgroup
// f_*H(Hom(A,C)) + h^*H(Hom(B,D)) in the same degree.  A parallel GF(2)
// lane supports exhaustive nullhomotopy sweeps on small instances.
//
// The worked Moore-space models: with A = B the n-sphere chain model,
// C the integral Moore complex (x2), h multiplication by 2, g the inclusion
// and f the pinch collapse, the bracket is the degree-one generator; after
// replacing the target by the mod-2 Moore model the value becomes the
// mod-2 fundamental class with zero indeterminacy.

#include "adams/gf2.hpp"
#include "adams/simplicial.hpp"
#include "adams/smith.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace adams::toda {

// ---------------------------------------------------------------------------
// Integer chain complexes and graded maps.
// ---------------------------------------------------------------------------

class ChainComplexZ {
public:
    ChainComplexZ() = default;
    ChainComplexZ(int t_min, int t_max);

    int t_min() const { return t_min_; }
    int t_max() const { return t_max_; }
    void set_rank(int t, int r);
    int rank(int t) const;

    // Differential C_t -> C_{t-1}; settable for t_min < t <= t_max.
    void set_diff(int t, IntMatrix d);
    IntMatrix diff(int t) const;  // zero-shaped when absent or out of range

    // Shape checks and d∘d = 0.
    void validate() const;

private:
    int t_min_ = 0;
    int t_max_ = -1;
    std::map<int, int> ranks_;
    std::map<int, IntMatrix> diffs_;
};

// A graded map of pure degree: block(t) maps src degree t to dst degree
// t + degree.  Blocks are keyed by source degree; absent blocks are zero.
struct ChainMapZ {
    int degree = 0;
    std::map<int, IntMatrix> blocks;
};

// Shape-correct block of f at source degree t (zero when absent); throws on
// a stored block with the wrong shape.
IntMatrix map_block(const ChainComplexZ& src, const ChainComplexZ& dst,
                    const ChainMapZ& f, int t);

// outer ∘ inner, where inner: a -> b and outer: b -> c.
ChainMapZ compose(const ChainComplexZ& a, const ChainComplexZ& b, const ChainComplexZ& c,
                  const ChainMapZ& outer, const ChainMapZ& inner);
// d_dst ∘ f - (-1)^deg f ∘ d_src (one degree lower).
ChainMapZ hom_boundary(const ChainComplexZ& src, const ChainComplexZ& dst,
                       const ChainMapZ& f);
ChainMapZ add(const ChainMapZ& a, const ChainMapZ& b);
ChainMapZ subtract(const ChainMapZ& a, const ChainMapZ& b);
ChainMapZ scale(const BigInt& c, const ChainMapZ& f);
bool map_is_zero(const ChainComplexZ& src, const ChainComplexZ& dst, const ChainMapZ& f);

// ---------------------------------------------------------------------------
// Hom-complex vectorization.
// ---------------------------------------------------------------------------

// Deterministic coordinates on the group of degree-s maps src -> dst: blocks
// enumerated by ascending source degree, entries row-major within a block.
struct HomBasis {
    int degree = 0;
    std::vector<std::tuple<int, int, int>> entries;  // (source degree, row, col)
    int dim() const { return int(entries.size()); }
};

HomBasis hom_basis(const ChainComplexZ& src, const ChainComplexZ& dst, int degree);
std::vector<BigInt> vectorize(const ChainComplexZ& src, const ChainComplexZ& dst,
                              const HomBasis& basis, const ChainMapZ& f);
ChainMapZ devectorize(const HomBasis& basis, const std::vector<BigInt>& v);
// Matrix of the Hom differential from degree-s maps to degree-(s-1) maps.
IntMatrix hom_boundary_matrix(const ChainComplexZ& src, const ChainComplexZ& dst, int degree);

// ---------------------------------------------------------------------------
// Homology of the Hom complex in one map degree, with class arithmetic.
// ---------------------------------------------------------------------------

class HomologyClasses {
public:
    HomologyClasses(const ChainComplexZ& src, const ChainComplexZ& dst, int degree);

    int cycle_rank() const { return cycle_rank_; }
    // Invariant factors > 1 of the torsion part.
    std::vector<BigInt> invariant_factors() const;
    int free_rank() const { return free_rank_; }
    bool trivial() const;
    // "0", "Z", "Z/2 + Z", ...
    std::string structure() const;

    // Canonical coordinates of the class of a cycle (throws if not a cycle);
    // length cycle_rank(), torsion coordinates reduced into [0, d_i).
    std::vector<BigInt> class_of(const ChainMapZ& f) const;
    bool is_zero_class(const ChainMapZ& f) const;
    bool same_class(const ChainMapZ& a, const ChainMapZ& b) const;
    // Does the class of f lie in the subgroup generated by the classes of
    // gens (together with boundaries)?
    bool in_subgroup(const ChainMapZ& f, const std::vector<ChainMapZ>& gens) const;

    // Chain maps whose classes generate the cycle lattice (hence the group).
    std::vector<ChainMapZ> cycle_basis() const;

private:
    std::vector<BigInt> kernel_coordinates(const ChainMapZ& f) const;

    HomBasis basis_;
    const ChainComplexZ* src_;
    const ChainComplexZ* dst_;
    IntMatrix kernel_;          // columns: basis of the cycle lattice
    SmithResult kernel_snf_;
    IntMatrix boundary_in_kernel_;  // boundaries in kernel coordinates
    SmithResult relation_snf_;      // Smith form of boundary_in_kernel_
    int cycle_rank_ = 0;
    int free_rank_ = 0;
};

// ---------------------------------------------------------------------------
// Bracket problems.
// ---------------------------------------------------------------------------

// A nullhomotopy-witness equation failed; degree is the first source degree
// where it does.
struct WitnessError : std::runtime_error {
    WitnessError(const std::string& msg, int degree_)
        : std::runtime_error(msg), degree(degree_) {}
    int degree;
};

struct BracketProblem {
    ChainComplexZ a, b, c, d;
    ChainMapZ h;     // a -> b, degree 0
    ChainMapZ g;     // b -> c, degree 0
    ChainMapZ f;     // c -> d, degree 0
    ChainMapZ big_g; // a -> c, degree +1, with hom_boundary(big_g) = g∘h
    ChainMapZ big_f; // b -> d, degree +1, with hom_boundary(big_f) = f∘g

    // Chain-map and witness equations; throws WitnessError naming the first
    // failing source degree.
    void validate() const;
};

struct BracketValue {
    ChainMapZ theta;                     // f∘G - F∘h
    std::vector<BigInt> class_coords;    // canonical class of theta
    std::vector<BigInt> invariant_factors;
    int free_rank = 0;
    std::string group;                   // structure of H(Hom(A,D)) in degree +1
    bool zero = false;                   // [theta] = 0
    bool contains_zero = false;          // [theta] lies in the indeterminacy
    std::string text() const;
};

BracketValue toda_value(const BracketProblem& p);

struct Indeterminacy {
    std::vector<ChainMapZ> generators;   // f∘(cycle) and (cycle)∘h, degree +1
    std::vector<std::vector<BigInt>> generator_classes;
    bool zero = false;                   // the subgroup is trivial
};

Indeterminacy indeterminacy(const BracketProblem& p);

// ---------------------------------------------------------------------------
// GF(2) lane (exhaustive sweeps on small instances).
// ---------------------------------------------------------------------------

class ChainComplexF2 {
public:
    ChainComplexF2() = default;
    ChainComplexF2(int t_min, int t_max);
    int t_min() const { return t_min_; }
    int t_max() const { return t_max_; }
    void set_rank(int t, int r);
    int rank(int t) const;
    void set_diff(int t, gf2::Matrix d);
    gf2::Matrix diff(int t) const;
    void validate() const;

private:
    int t_min_ = 0;
    int t_max_ = -1;
    std::map<int, int> ranks_;
    std::map<int, gf2::Matrix> diffs_;
};

struct ChainMapF2 {
    int degree = 0;
    std::map<int, gf2::Matrix> blocks;
};

gf2::Matrix map_block(const ChainComplexF2& src, const ChainComplexF2& dst,
                      const ChainMapF2& f, int t);
ChainMapF2 compose(const ChainComplexF2& a, const ChainComplexF2& b, const ChainComplexF2& c,
                   const ChainMapF2& outer, const ChainMapF2& inner);
ChainMapF2 hom_boundary(const ChainComplexF2& src, const ChainComplexF2& dst,
                        const ChainMapF2& f);
ChainMapF2 add(const ChainMapF2& a, const ChainMapF2& b);
bool map_is_zero(const ChainComplexF2& src, const ChainComplexF2& dst, const ChainMapF2& f);

HomBasis hom_basis(const ChainComplexF2& src, const ChainComplexF2& dst, int degree);
gf2::Vec vectorize(const ChainComplexF2& src, const ChainComplexF2& dst,
                   const HomBasis& basis, const ChainMapF2& f);
ChainMapF2 devectorize_f2(const HomBasis& basis, const gf2::Vec& v);
gf2::Matrix hom_boundary_matrix(const ChainComplexF2& src, const ChainComplexF2& dst,
                                int degree);

class HomologyClassesF2 {
public:
    HomologyClassesF2(const ChainComplexF2& src, const ChainComplexF2& dst, int degree);
    int dim() const { return quotient_.reps.rows(); }
    gf2::Vec class_of(const ChainMapF2& f) const;
    bool is_zero_class(const ChainMapF2& f) const;
    bool in_subspace(const ChainMapF2& f, const std::vector<ChainMapF2>& gens) const;

private:
    HomBasis basis_;
    const ChainComplexF2* src_;
    const ChainComplexF2* dst_;
    gf2::Subspace cycles_;
    gf2::Subspace boundaries_;
    gf2::QuotientBasis quotient_;
};

// All solutions of hom_boundary(X) = rhs in the given map degree: a
// particular solution plus the kernel (rows of `kernel` span the solution
// space's difference lattice).  exists = false when rhs is not a boundary.
struct NullhomotopiesF2 {
    bool exists = false;
    HomBasis basis;
    gf2::Vec particular;
    gf2::Matrix kernel;
};

NullhomotopiesF2 nullhomotopies_f2(const ChainComplexF2& src, const ChainComplexF2& dst,
                                   int degree, const ChainMapF2& rhs);

struct BracketProblemF2 {
    ChainComplexF2 a, b, c, d;
    ChainMapF2 h, g, f, big_g, big_f;
    void validate() const;
};

// Entrywise mod-2 reduction.
ChainComplexF2 reduce_mod2(const ChainComplexZ& c);
ChainMapF2 reduce_mod2(const ChainMapZ& f);
BracketProblemF2 reduce_mod2(const BracketProblem& p);

ChainMapF2 theta_f2(const BracketProblemF2& p);
gf2::Vec toda_class_f2(const BracketProblemF2& p);

// ---------------------------------------------------------------------------
// Worked models and the filtration obstruction report.
// ---------------------------------------------------------------------------

// Integral model of <Sq1, iota_n, 2>: target the (n+1)-sphere chain model.
// Value: the degree-one generator of H(Hom)_{+1} = Z; indeterminacy 2Z.
BracketProblem moore_problem(int n);
// Same with the target replaced by the integral chain model of the mod-2
// Moore space: value the mod-2 fundamental class, indeterminacy zero.
BracketProblem moore_problem_reduced(int n);

struct ObstructionReport {
    int coefficient = 0;   // the class is coefficient * (fundamental class)
    int degree = 0;        // degree of the fundamental class
    int filtration = -1;   // 0, 1, or -1 when undetermined at this level
    std::string value;     // "iota", "h0", "0", or "requires homotopy input"
    bool bracket_nonzero = false;
    std::string labels;    // facet tags attached to the undetermined case
    std::string text() const;
};

// Filtration placement of the class m * iota in the sphere model carried by
// the resolution: odd multiples are visible at filtration 0; twice-odd
// multiples are detected in filtration 1 by the Toda bracket assembled from
// the resolution's degree-(n+1) attaching map; higher powers of two defer to
// homotopy input, reported with the facet tags of the next folding stage.
ObstructionReport filtration_obstruction(const simplicial::CWResolution& r, int m);

// ---------------------------------------------------------------------------
// Problem-file parsing (line-oriented, '#' comments).
//
//   space <complex> <degree> <rank>      complex in {A,B,C,D}
//   diff <complex> <degree> <matrix>     d: degree -> degree-1
//   map <name> <degree> <matrix>         degree-0 map block at source degree
//   homotopy <name> <degree> <matrix>    degree+1 map block at source degree
//   problem <h> <g> <f> <G> <F>          assigns stanza names to the roles
//
// Matrices: rows separated by ';', integer entries separated by ','.
// ---------------------------------------------------------------------------

BracketProblem parse_problem(const std::string& text);
BracketProblem parse_problem_file(const std::string& path);

}  // namespace adams::toda
