#pragma once

#include "k3fib/arith.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace k3fib {

struct IntLattice {
    IMat gram;
    std::vector<std::string> labels;

    IntLattice() = default;
    // validates symmetry and evenness
    explicit IntLattice(IMat g, std::vector<std::string> names = {});

    std::size_t rank() const { return gram.size(); }
    Int det() const { return k3fib::det(gram); }
};

struct SmithForm {
    IMat D, U, V, Vinv;  // U*M*V = D, Vinv = V^-1
    std::vector<Int> diag;  // min(rows, cols) entries, zeros trailing
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IMat& m);
// invariant factors of Z^n / rowspace(m) restricted to the nontrivial ones
std::vector<Int> nontrivial_factors(const std::vector<Int>& diag);

// Row-style Hermite basis of the Z-span of the rows
IMat row_basis(const IMat& gens);
// Z-span of rational rows, returned as a rational basis
QMat row_basis(const QMat& gens);

// Integer x with x*a = 0, saturated
IMat left_kernel(const IMat& a);

struct QModTwo {
    Rat value;
    QModTwo() = default;
    explicit QModTwo(const Rat& r) : value(mod_rat(r, Rat(2))) {}
    bool operator==(const QModTwo& o) const { return value == o.value; }
    bool operator<(const QModTwo& o) const { return value < o.value; }
};

using GroupElem = std::vector<std::int64_t>;

struct DiscriminantLattice {
    std::vector<Int> invariant_factors;
    QMat generator_lifts;  // in coordinates of the source lattice basis
    IMat gram;             // source gram, for evaluating lifts

    std::size_t order() const;
    QVec lift(const GroupElem& x) const;
    QModTwo q(const GroupElem& x) const;
    Rat b(const GroupElem& x, const GroupElem& y) const;  // mod 1, in [0,1)
    GroupElem add(const GroupElem& x, const GroupElem& y) const;
    GroupElem scale(const GroupElem& x, std::int64_t k) const;
    std::int64_t element_order(const GroupElem& x) const;
    std::vector<GroupElem> elements() const;  // throws past 1e6 elements
    GroupElem zero() const { return GroupElem(invariant_factors.size(), 0); }

    // generator values q(g_i) and pairings b(g_i,g_j)
    std::vector<QModTwo> gen_q() const;
    std::vector<std::vector<Rat>> gen_b() const;
};

DiscriminantLattice discriminant_lattice(const IntLattice& l);

// Generators chosen for display: orthogonal to earlier picks where possible,
// anisotropic before isotropic, then by q and coordinates.
struct DisplayGenerators {
    std::vector<Int> orders;
    std::vector<QModTwo> q;
    std::vector<GroupElem> elems;
};
DisplayGenerators display_generators(const DiscriminantLattice& d);

bool isomorphic(const DiscriminantLattice& a, const DiscriminantLattice& b);

struct Sublattice {
    IntLattice ambient;
    IMat basis;  // rows in ambient coordinates
};

struct Complement {
    IntLattice lattice;
    IMat basis;  // rows in ambient coordinates
};

// {x in L : <x,s> = 0 for all s in S}; LLL-reduced when definite
Complement orthogonal_complement(const IntLattice& l, const IMat& sub_basis);

struct Closure {
    IMat basis;                 // rows in ambient coordinates
    std::vector<Int> quotient;  // invariant factors > 1 of closure / S
};
Closure primitive_closure(const IMat& sub_basis);
bool is_primitive(const IMat& sub_basis);

IntLattice compose(const std::vector<std::pair<IntLattice, Int>>& parts);
IntLattice rescale(const IntLattice& l, const Int& k);

// definiteness of a symmetric matrix
bool is_positive_definite(const IMat& g);
bool is_negative_definite(const IMat& g);
IMat negate(const IMat& g);

struct Reduced {
    IMat gram;
    IMat transform;  // rows: new basis in old coordinates
};
// LLL (delta 3/4) for a positive definite gram
Reduced lll(const IMat& gram);

// Enumerate integer x with (x-c) Q (x-c)^T <= bound for positive definite Q.
// The callback may return false to stop; it may also tighten the bound.
void enumerate_short(const IMat& q, const QVec& center, Rat& bound,
                     const std::function<bool(const IVec&, const Rat&)>& visit);

// min over x in Z^n of (x+shift) Q (x+shift)^T with a minimizer
std::pair<Rat, IVec> coset_minimum(const IMat& q, const QVec& shift);
// same, but values at or above the cap are reported as the cap (minimizer then unspecified)
std::pair<Rat, IVec> coset_minimum(const IMat& q, const QVec& shift, const std::optional<Rat>& cap);

// all nonzero x with x G x^T = -2 for negative definite G
std::vector<IVec> norm_vectors(const IMat& g, const Int& norm);

// isometry test for definite grams of equal signature; returns rows of a basis of
// the first lattice whose gram is the second, if one exists
std::optional<IMat> find_isometry(const IMat& from, const IMat& to);

// parse "U+U(3)+A2^3", "A2(-1)", "E6+A2^4"
IntLattice parse_lattice_spec(const std::string& text);

}  // namespace k3fib
