#pragma once

#include "k3fib/arith.hpp"

#include <string>
#include <vector>

namespace k3fib {

using SVec = std::vector<std::int64_t>;

// Negative definite Dynkin grams: norm -2, adjacent simple roots pair to +1.
// A_n is a chain; D_n is a chain d1..d(n-1) with dn attached to d(n-2);
// E_n is a chain e2..en with e1 attached to e4.
IMat ade_gram(char family, int rank);
std::vector<std::string> ade_labels(char family, int rank);

struct AdeComponent {
    char family = 'A';
    int rank = 0;
    auto operator<=>(const AdeComponent&) const = default;
    std::string str() const { return std::string(1, family) + std::to_string(rank); }
};

// A multiset of ADE components plus rank one summands <-k>.
struct AdeType {
    std::vector<AdeComponent> comps;  // sorted A < D < E, then by rank
    std::vector<Int> rank_one;        // gram entries of rank one summands, sorted

    void normalize();
    int rank() const;
    std::string str() const;  // "(-6)+E7+D10", "A2^5", "0"
    bool operator==(const AdeType& o) const { return comps == o.comps && rank_one == o.rank_one; }
    bool operator<(const AdeType& o) const;
};

AdeType parse_ade(const std::string& text);

// all x with x G x^T = -2, G negative definite
std::vector<SVec> roots_of(const IMat& gram);

struct RootSystem {
    AdeType type;
    std::vector<SVec> roots;     // all roots, both signs
    std::vector<SVec> simple;    // simple roots for the lexicographic order
    // per component: indices into simple, ordered in the Dynkin labelling above
    std::vector<std::vector<std::size_t>> components;
    std::vector<AdeComponent> component_types;
};

// Root system of the given vectors inside a lattice with gram G
RootSystem root_system(const IMat& gram, const std::vector<SVec>& roots);
RootSystem root_system(const IMat& gram);

std::int64_t pair64(const SVec& a, const std::vector<std::vector<std::int64_t>>& g, const SVec& b);
std::vector<std::vector<std::int64_t>> to_small(const IMat& m);
IVec to_big(const SVec& v);
SVec to_small(const IVec& v);

}  // namespace k3fib
