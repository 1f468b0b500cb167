#pragma once

#include "k3fib/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3fib {

enum class Kind { I, Istar, II, III, IV, IIstar, IIIstar, IVstar };

struct KodairaFibre {
    Kind kind = Kind::I;
    int n = 0;  // for I and Istar
    auto operator<=>(const KodairaFibre&) const = default;
    std::string str() const;  // "I0", "I3*", "IV*"
};

KodairaFibre parse_fibre(const std::string& text);
int euler(const KodairaFibre& f);
std::optional<AdeComponent> ade_of(const KodairaFibre& f);
int component_count(const KodairaFibre& f);  // irreducible components

// Valuations (v(c4), v(c6), v(disc)) of a minimal model; v = -1 stands for infinity (c = 0).
struct Valuations {
    int c4 = -1, c6 = -1, disc = 0;
};
// Kodaira type from the valuations of a minimal model (characteristic zero)
KodairaFibre kodaira_from_valuations(const Valuations& v);
// a valuation triple realising the kind
Valuations representative_valuations(const KodairaFibre& f);
// multiply by e and subtract (4, 6, 12) until minimal
Valuations scale_and_minimalize(const Valuations& v, int e);

// fibre after a degree three base change; unchanged unless totally ramified
KodairaFibre base_change_fibre(const KodairaFibre& f, bool totally_ramified);

using FibreConfiguration = std::vector<KodairaFibre>;  // sorted, reducible fibres only

// every multiset of reducible fibres whose ADE types give t (A1 -> I2|III, A2 -> I3|IV)
std::vector<FibreConfiguration> kodaira_assignments(const AdeType& t);

// Euler audit: base change of a rational elliptic surface ramified over fibres fa, fb has e = 24
int base_change_euler(const KodairaFibre& fa, const KodairaFibre& fb);
bool is_k3_base_change(const KodairaFibre& fa, const KodairaFibre& fb);

enum class Verdict { Type1Only, Type2Only, Both, Neither };
std::string verdict_str(Verdict v);

// Upstairs fibres over the two ramification points and the orbits of three, with the
// rational elliptic surface they descend from.
struct Type2Split {
    KodairaFibre fa, fb;               // upstairs, fixed by the automorphism
    KodairaFibre fa_down, fb_down;     // downstairs fibres over the branch points
    std::vector<KodairaFibre> orbits;  // one representative per orbit of three
    int rational_rank = 0;             // MW rank of the rational surface by Shioda-Tate
};

struct Classification {
    Verdict verdict = Verdict::Neither;
    std::optional<FibreConfiguration> type1;  // assignment with J = 0 fibres only
    std::optional<Type2Split> type2;
    std::vector<std::string> reasons;  // why a type is excluded
};

Classification classify(const AdeType& t, int mw_rank, const std::vector<Int>& mw_torsion);

}  // namespace k3fib
