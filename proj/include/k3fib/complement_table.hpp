#pragma once

#include "k3fib/embeddings.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3fib {

// Published complement of a canonical embedding into one ADE component.
struct TabulatedComplement {
    AdeComponent target;
    SummandCounts source;
    std::size_t rank = 0;
    std::string roots;         // root type of the complement
    int minus6 = 0;            // (-6) summands in the printed shape
    std::optional<IMat> gram;  // printed Gram, where fully explicit
    std::string id() const;    // "D7:A2^2"
};
const std::vector<TabulatedComplement>& tabulated_complements();

struct ComplementAudit {
    TabulatedComplement row;
    ComplementInfo computed;
    Int det;    // |det| of the computed complement
    Int index;  // [L : N + N^perp]
    bool identity = false;  // |det N| |det N^perp| = |det L| index^2
    bool rank_ok = false, roots_ok = false, minus6_ok = false;
    // printed Gram, when there is one
    std::optional<Int> printed_det;
    bool printed_identity = false;   // some integer index satisfies the identity
    bool printed_isometric = false;  // isometric to the computed complement
    bool match() const { return rank_ok && roots_ok && minus6_ok && identity; }
    bool finding() const { return printed_det && !printed_isometric; }
};
ComplementAudit audit_complement(const TabulatedComplement& row);

}  // namespace k3fib
