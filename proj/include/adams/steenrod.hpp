#pragma once

// The mod-2 Steenrod algebra in the admissible basis.
//
// A monomial Sq^{i_1}...Sq^{i_k} (all i_j >= 1) is admissible when
// i_j >= 2*i_{j+1} for every adjacent pair.  Arbitrary words are rewritten
// into sums of admissibles with the Adem relation
//
//   Sq^a Sq^b = sum_c binom(b-c-1, a-2c) Sq^{a+b-c} Sq^c   (a < 2b),
//
// coefficients taken mod 2 via the binary digit-domination rule.  The
// rewriting strategy replaces the leftmost inadmissible pair first and
// memoizes single-pair expansions.

#include <string>
#include <vector>

namespace adams::steenrod {

// A word in the Sq generators; empty word = unit.  Degree is the exponent
// sum; excess of Sq^{i_1}...Sq^{i_k} is i_1 - (i_2 + ... + i_k), zero for
// the unit.  Ordering is lexicographic on the exponent sequence.
struct Monomial {
    std::vector<int> sq;

    int degree() const;
    int excess() const;
    bool admissible() const;
    bool is_unit() const { return sq.empty(); }

    Monomial concat(const Monomial& rhs) const;

    bool operator==(const Monomial& o) const { return sq == o.sq; }
    bool operator<(const Monomial& o) const { return sq < o.sq; }

    std::string str() const;                       // "Sq3Sq1", unit prints "1"
    static Monomial parse(const std::string& s);   // throws std::invalid_argument
};

// A mod-2 sum of admissible monomials of a common degree (or zero).  Terms
// are kept sorted; adding toggles membership.
class Element {
public:
    Element() = default;
    explicit Element(Monomial m) : terms_{std::move(m)} {}

    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for the zero element

    void add(const Monomial& m);          // toggle one term
    void operator+=(const Element& e);

    bool operator==(const Element& o) const { return terms_ == o.terms_; }

    std::string str() const;  // "Sq5Sq2 + Sq6Sq1", zero prints "0"

private:
    std::vector<Monomial> terms_;
};

// binom(m, n) mod 2 == 1 iff the binary digits of n dominate into m
// (Lucas).  Defined as 0 when n < 0 or n > m.
bool binom_mod2(long long m, long long n);

// Rewrite an arbitrary word into admissible form.
Element adem_reduce(const Monomial& word);

// Product in the algebra (concatenate all pairs of terms, then reduce).
Element multiply(const Element& a, const Element& b);

// All admissible monomials of the given degree, sorted lexicographically
// by exponent sequence.  Degree 0 yields the unit alone.
std::vector<Monomial> basis(int degree);

// Admissibles of the given degree with excess <= max_excess (the degree-
// (n + degree) basis of the free unstable module on a degree-n class when
// max_excess = n).
std::vector<Monomial> basis_excess_at_most(int degree, int max_excess);

}  // namespace adams::steenrod
