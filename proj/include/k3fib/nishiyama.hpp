#pragma once

#include "k3fib/embeddings.hpp"
#include "k3fib/lattice.hpp"
#include "k3fib/niemeier.hpp"
#include "k3fib/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3fib {

struct SurfaceData {
    int index = 0;
    std::string ns, tx;  // lattice specs
    int n_fixed_points = 0, k_fixed_curves = 0, g_max = 0;
    std::string t0;  // tabulated choice of T0
    IntLattice ns_lattice() const { return parse_lattice_spec(ns); }
    IntLattice tx_lattice() const { return parse_lattice_spec(tx); }
};

const std::vector<SurfaceData>& surfaces();
const SurfaceData& surface(int k);

struct T0Choice {
    SummandCounts t0;
    std::vector<SummandCounts> candidates;  // every sum of E8, E6, A2 with matching rank and form
};
// All sums of E8, E6, A2 of rank rank(tx)+4 whose discriminant form is that of tx.
std::vector<SummandCounts> t0_candidates(const IntLattice& tx);
// For a tabulated surface, its T0 after checking it is a candidate (throws otherwise).
// For any other tx: fewest summands, then more E8, then more E6.
T0Choice select_T0(const IntLattice& tx);

// One fibration class, i.e. one frame lattice W up to the invariants used for deduplication.
struct FibrationClass {
    int surface = 0;
    std::string row_id;
    std::string niemeier;
    std::vector<std::string> distribution;  // sorted, e.g. "A2^3<D10"
    // complement in the root part of the Niemeier lattice
    std::size_t m_rank = 0;
    Int m_det;
    int minus6 = 0;
    AdeType ade;  // root type of the frame lattice
    int mw_rank = 0;
    std::vector<Int> mw_torsion;  // invariant factors
    Embedding embedding;
    IMat w_root;  // simple roots of the frame lattice, root coordinates
    bool admissible = true;  // the saturation of W_root in N has no roots beyond those of W_root

    std::string m_shape() const;  // "(-6)^2+D10+A2"
    std::string torsion_str() const;  // "0", "Z/2", "Z/2+Z/2"
    std::string mw_str() const;       // "Z^2+Z/3"
};

std::vector<FibrationClass> run_surface(int k);
// same sweep with another T0 of the genus; the frame lattices do not depend on the choice
std::vector<FibrationClass> run_surface(int k, const SummandCounts& t0);

// |W/M| for a rank zero fibration from |det W| and |det M|; throws on a non-square ratio
Int mw_torsion_rank0(const Int& w_det, const Int& m_det);

// x is in the integer span of the rows
bool in_span(const IMat& rows, const QVec& x);

// an element of the closure of W_root in the Niemeier lattice that is not in W_root, root coordinates
std::optional<QVec> torsion_witness(const FibrationClass& f);

// Published rows of the fibration table, one per class.
struct ExpectedRow {
    std::string row_id;
    std::string niemeier;
    std::vector<std::string> distribution;
    int minus6 = 0;
    std::string ade;
    int mw_rank = 0;
    std::vector<int> torsion;
};
const std::vector<ExpectedRow>& expected_rows();
std::vector<ExpectedRow> expected_block(int k);

}  // namespace k3fib
