#pragma once

// Unstable modules over the mod-2 Steenrod algebra, in two flavours:
//
//  * FreeModule — a finite direct sum of free unstable modules F(d_i), one
//    summand per named generator.  In each internal degree the basis is
//    the set of pairs (admissible monomial, generator) with
//    excess(monomial) <= degree(generator); Sq^k acts by concatenation,
//    Adem reduction, and deletion of terms whose excess exceeds the
//    generator degree.
//
//  * Module — a finitely presented module: a FreeModule quotiented by the
//    sub-A-module generated by a list of relation elements.  Expansion is
//    windowed: the relation span is closed under the Sq^k actions degree by
//    degree from the bottom up, and each degree gets canonical quotient
//    representatives plus induced action matrices.
//
// A complete action table ("Sq^k g = ..." for every generator g and every
// 1 <= k <= |g|, unlisted entries meaning zero) is just a presentation
// whose relations are Sq^k g + rhs; the text-format parser below produces
// exactly that.

#include "adams/gf2.hpp"
#include "adams/graded.hpp"
#include "adams/steenrod.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace adams::unstable {

struct Generator {
    std::string name;
    int degree = 0;
};

// One term of an element of a free module: an operation applied to a
// generator, identified by index into the generator list.
struct FreeTerm {
    steenrod::Monomial op;
    int gen = 0;

    bool operator==(const FreeTerm& o) const { return gen == o.gen && op == o.op; }
    bool operator<(const FreeTerm& o) const {
        if (gen != o.gen)
            return gen < o.gen;
        return op < o.op;
    }
};

// Formal GF(2) sum of FreeTerms.  Terms are kept sorted; adding an existing
// term cancels it.
class FreeElement {
public:
    FreeElement() = default;
    explicit FreeElement(FreeTerm t) { add(t); }

    void add(const FreeTerm& t);
    void operator+=(const FreeElement& e);
    bool is_zero() const { return terms_.empty(); }
    const std::vector<FreeTerm>& terms() const { return terms_; }

    // Degree with respect to a generator list; throws std::invalid_argument
    // if the terms are not homogeneous.  Zero element reports -1.
    int degree(const std::vector<Generator>& gens) const;

    std::string str(const std::vector<Generator>& gens) const;

private:
    std::vector<FreeTerm> terms_;
};

class FreeModule {
public:
    FreeModule() = default;
    FreeModule(std::vector<Generator> gens, Window w);

    const std::vector<Generator>& generators() const { return gens_; }
    const Window& window() const { return window_; }

    int dim(int t) const;
    // Basis of degree t, grouped by generator in declaration order and by
    // monomial lexicographic order within a generator.
    const std::vector<FreeTerm>& basis(int t) const;
    // Contiguous index range occupied by one generator's monomials inside
    // basis(t).
    int basis_offset(int gen, int t) const;
    int basis_count(int gen, int t) const;
    // Index of an admissible term in basis(t); -1 when the term is zero in
    // the module (excess too large) or out of window.
    int index_of(const FreeTerm& term) const;

    // Dims plus human-readable labels ("Sq2Sq1 x").
    const GradedSpace& space() const { return space_; }

    // Coordinates of a symbolic element in degree t; words are Adem-reduced
    // and excess-filtered on the way in, so arbitrary (non-admissible)
    // operations are accepted.
    gf2::Vec coordinates(int t, const FreeElement& e) const;
    FreeElement element_of(int t, const gf2::Vec& coords) const;

    // Action of Sq^k as a degree-shift-k graded map; built on demand and
    // cached (idempotent, guarded for concurrent readers).
    const GradedMap& action(int k) const;

private:
    std::vector<Generator> gens_;
    Window window_{0, -1};
    std::map<int, std::vector<FreeTerm>> basis_;
    std::map<int, std::vector<int>> offsets_;  // per degree, size gens+1
    GradedSpace space_;
    mutable std::map<int, GradedMap> actions_;
    mutable std::mutex action_mutex_;
};

class Module {
public:
    Module() = default;
    Module(std::vector<Generator> gens, std::vector<FreeElement> relations, Window w);

    const FreeModule& ambient() const { return *ambient_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<FreeElement>& relations() const { return relations_; }
    const Window& window() const { return window_; }

    int dim(int t) const;
    const GradedSpace& space() const { return space_; }

    // Relation span and canonical quotient representatives in ambient
    // coordinates for degree t.
    const gf2::Subspace& relation_span(int t) const;
    const gf2::Matrix& reps(int t) const;

    // Class of an ambient coordinate vector in the quotient basis.
    gf2::Vec project(int t, const gf2::Vec& ambient_coords) const;
    // Ambient representative of a quotient coordinate vector.
    gf2::Vec lift(int t, const gf2::Vec& class_coords) const;

    // Induced Sq^k on the quotient (cached like FreeModule::action).
    const GradedMap& action(int k) const;

private:
    std::vector<Generator> gens_;
    std::vector<FreeElement> relations_;
    Window window_{0, -1};
    std::shared_ptr<FreeModule> ambient_;
    std::map<int, gf2::Subspace> relation_span_;
    std::map<int, gf2::QuotientBasis> quotients_;
    GradedSpace space_;
    mutable std::map<int, GradedMap> actions_;
    mutable std::mutex action_mutex_;
};

// A presentation that has not been expanded yet (no window chosen).
struct Presentation {
    std::string name;
    std::vector<Generator> generators;
    std::vector<FreeElement> relations;

    Module expand(Window w) const { return Module(generators, relations, w); }

    // Heap-allocating expand; Module holds a mutex and cannot be moved, so
    // this is the way to keep one in a long-lived structure.
    std::shared_ptr<Module> expand_shared(Window w) const {
        return std::make_shared<Module>(generators, relations, w);
    }
};

// One generator in degree n; every positive-degree operation acts by zero.
Presentation sphere_presentation(int n);
Module sphere_module(int n, Window w);

// Generators x (degree n) and y (degree n+1) with Sq^1 x = y and all other
// operations on the generators zero.
Presentation moore_presentation(int n);
Module moore_module(int n, Window w);

// Parse the line-oriented module description format:
//   module <name>
//   generator <name> <degree>
//   action Sq<k> <gen> = <term> { + <term> }
// with <term> either `Sq<i1>...Sq<ij> <gen>` or `0`.  Left-hand words must
// be admissible; right-hand words are reduced on load.  Unlisted actions
// default to zero.  Errors carry 1-based line numbers.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_) : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};
Presentation parse_presentation(std::istream& in);
Presentation parse_presentation_file(const std::string& path);

// A-linear extension: a map out of a free module is determined by the
// images of its generators.  gen_images[i] holds ambient (resp. quotient)
// coordinates of the image of generator i, in the target's degree
// gens[i].degree component.  The result is a degree-0 graded map.
GradedMap extend_map(const FreeModule& src, const FreeModule& dst, const std::vector<gf2::Vec>& gen_images);
GradedMap extend_map(const FreeModule& src, const Module& dst, const std::vector<gf2::Vec>& gen_images);

}  // namespace adams::unstable
