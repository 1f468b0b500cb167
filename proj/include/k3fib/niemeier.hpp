#pragma once

#include "k3fib/lattice.hpp"
#include "k3fib/roots.hpp"

#include <string>
#include <vector>

namespace k3fib {

// Glue class of one component. A_n: k in Z/(n+1); D_n: 0, s, v, c encoded 0..3;
// E6: 0..2; E7: 0..1.
QVec glue_class_vector(const AdeComponent& c, int klass);
std::string glue_class_name(const AdeComponent& c, int klass);

struct NiemeierLattice {
    std::string name;                      // display order, e.g. "E6+D7+A11"
    AdeType root_type;
    std::vector<AdeComponent> components;  // in the order of name
    std::vector<std::size_t> offsets;      // first coordinate of each component
    IntLattice root_part;
    std::vector<std::vector<int>> glue_codes;  // per generator, per component class
    QMat glue_generators;                  // in root coordinates
    std::vector<QVec> glue_group;          // coset representatives, fractional parts in [0,1)
    QMat basis;                            // Z-basis of the lattice, root coordinates
    QMat basis_inverse;
    IMat gram_n;                           // gram in the lattice basis, unimodular

    std::size_t order() const { return glue_group.size(); }
    bool contains(const QVec& v) const;
    // coordinates of v in the lattice basis
    QVec coordinates(const QVec& v) const;
    std::size_t component_of(std::size_t coord) const;
};

std::vector<std::string> supported_niemeier();
// the six with an E-component, which are the ones that can receive E6 or E8
std::vector<std::string> e_type_niemeier();
NiemeierLattice niemeier_by_root_type(const AdeType& t);
NiemeierLattice niemeier_by_root_type(const std::string& t);
// build from explicit glue data, without validation
NiemeierLattice niemeier_from_glue(const std::vector<AdeComponent>& comps,
                                   const std::vector<std::vector<int>>& glue);

struct NiemeierReport {
    bool even = false;
    bool unimodular = false;
    bool rootless = false;
    bool ok() const { return even && unimodular && rootless; }
    Rat min_glue_norm;  // least |norm| over nonzero glue cosets, capped at 4
    std::vector<std::string> notes;
};

NiemeierReport verify(const NiemeierLattice& n);

// fractional part in [0,1) of every coordinate
QVec frac(const QVec& v);

}  // namespace k3fib
