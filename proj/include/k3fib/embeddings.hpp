#pragma once

#include "k3fib/lattice.hpp"
#include "k3fib/niemeier.hpp"
#include "k3fib/roots.hpp"

#include <string>
#include <vector>

namespace k3fib {

// Source lattices here are sums of E8, E6 and A2.
struct SummandCounts {
    int e8 = 0, e6 = 0, a2 = 0;
    bool empty() const { return e8 == 0 && e6 == 0 && a2 == 0; }
    int rank() const { return 8 * e8 + 6 * e6 + 2 * a2; }
    auto operator<=>(const SummandCounts&) const = default;
    AdeType type() const;
    std::string str() const;  // "E6+A2^2"
};

SummandCounts counts_of(const AdeType& t);

// Basis of the image (rows in component coordinates), summands in order E8, E6, A2.
// Throws "no primitive embedding" on capacity violations and "non-primitive" when
// the image has a nontrivial saturation quotient.
IMat canonical_embedding(const SummandCounts& c, const AdeComponent& target);

// Leaf-first D labels (two leaves d1, d2 on the fork d3, chain d3..dn) to ours.
std::size_t leaf_first_d_index(int label, int n);

struct ComplementInfo {
    IntLattice lattice;
    IMat basis;        // rows in ambient coordinates
    AdeType root_type;
    IMat root_basis;   // simple roots, rows in ambient coordinates
    int minus6 = 0;    // rank one summands of norm -6 split off by the roots
};

// complement of an image inside one ADE component
ComplementInfo component_complement(const AdeComponent& target, const IMat& image);

struct Embedding {
    std::string niemeier;
    SummandCounts source;
    std::vector<SummandCounts> placement;  // per Niemeier component
    std::vector<std::string> distribution; // "E6<E7", "A2^3<D10"
    IMat image;                             // rows in root coordinates of the Niemeier lattice
    std::vector<ComplementInfo> parts;      // per component complements
    int minus6 = 0;
    ComplementInfo m;  // complement in the full lattice: basis in its coordinates, roots in root coordinates
};

// complement of an image (rows in root coordinates) inside the full Niemeier lattice
ComplementInfo niemeier_complement(const NiemeierLattice& n, const IMat& image);
// image rows in the lattice basis of n; throws if some row is not in n
IMat to_niemeier_coords(const NiemeierLattice& n, const IMat& rows);

// All placements of the source over the components, up to permutations of
// equal components, realised canonically and deduplicated by complement invariants.
std::vector<Embedding> enumerate_embeddings(const SummandCounts& source, const NiemeierLattice& n);

struct IteratedResult {
    IntLattice joint;
    IntLattice stepwise;
    AdeType joint_type;
    AdeType stepwise_type;
};
// parts: row bases in L coordinates, pairwise orthogonal
IteratedResult orthogonal_iterated(const IntLattice& l, const std::vector<IMat>& parts);

struct ComplementClass {
    std::size_t rank = 0;
    Int det;
    AdeType root_type;
    DiscriminantLattice disc;
    std::size_t count = 0;  // number of root-set tuples landing here
};

struct CatalogResult {
    std::size_t tuples = 0;          // orthogonal tuples examined
    std::size_t primitive = 0;       // of which primitive
    std::vector<ComplementClass> classes;
};

// Exhaustive search over tuples of mutually orthogonal A2 root subsystems.
CatalogResult brute_force_catalog(const SummandCounts& source, const AdeComponent& target,
                                  std::size_t budget = 5000000);

}  // namespace k3fib
