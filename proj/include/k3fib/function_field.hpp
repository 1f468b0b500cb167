#pragma once

#include "k3fib/classifier.hpp"
#include "k3fib/poly.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace k3fib {

// Element of Q(t): reduced fraction with monic denominator.
class RatFunc {
public:
    RatFunc() : den_(Rat(1)) {}
    RatFunc(long c) : RatFunc(Rat(c)) {}
    RatFunc(Rat c) : num_(std::move(c)), den_(Rat(1)) {}
    RatFunc(QPoly p) : num_(std::move(p)), den_(Rat(1)) {}
    RatFunc(QPoly num, QPoly den);

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);

    // t -> t^k
    RatFunc inflate(std::size_t k) const { return {num_.inflate(k), den_.inflate(k)}; }
    // valuation at a monic squarefree factor p of some coefficient basis; 0 for p not dividing
    int valuation(const QPoly& p) const;
    // order of vanishing at infinity: deg den - deg num
    int valuation_at_infinity() const;
    std::string str(char var = 't') const;

private:
    QPoly num_, den_;
};

RatFunc parse_ratfunc(const std::string& num, const std::string& den = "1");

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassModel {
    RatFunc a1, a2, a3, a4, a6;
    char var = 't';
};

struct Invariants {
    RatFunc b2, b4, b6, b8, c4, c6, disc;
};
// throws "not an elliptic surface" for disc = 0; asserts c4^3 - c6^2 = 1728 disc
Invariants invariants(const WeierstrassModel& m);

struct PlaceValuation {
    std::optional<QPoly> place;  // monic squarefree factor; empty for infinity
    int degree = 1;              // number of geometric points
    Valuations raw;              // of the model as given
    Valuations minimal;          // after (4, 6, 12) reduction
    KodairaFibre fibre;
    std::string place_str(char var) const;
};

// bad places only (minimal v(disc) > 0), affine places first, then infinity
std::vector<PlaceValuation> places_and_valuations(const WeierstrassModel& m);

// Kodaira type read from (v4, v6) and v(disc), reducing to a minimal triple first; -1 is infinity
KodairaFibre kodaira_at(int v4, int v6, int vd);

struct ModelAnalysis {
    std::vector<PlaceValuation> places;
    AdeType ade;
    int euler = 0;
};
ModelAnalysis ade_of_model(const WeierstrassModel& m);

// t -> t^3
WeierstrassModel base_change_cubed(const WeierstrassModel& m);
// chart at infinity: t = 1/s, a_i -> s^(w i) a_i(1/s)
WeierstrassModel infinity_chart(const WeierstrassModel& m, int weight);

// JSON {a1..a6: {num, den}}; missing coefficients are zero
WeierstrassModel model_from_json_text(const std::string& text);
WeierstrassModel load_model(const std::string& path);

// Sparse polynomial in N variables over K.
template <class K, std::size_t N>
struct MPoly {
    std::map<std::array<int, N>, K> terms;

    MPoly() = default;
    MPoly(K c) {
        if (!(c == K(0))) terms[{}] = c;
    }
    static MPoly var(std::size_t i) {
        MPoly p;
        std::array<int, N> e{};
        e[i] = 1;
        p.terms[e] = K(1);
        return p;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) {
        for (const auto& [e, c] : b.terms) {
            K s = a.terms.count(e) ? a.terms[e] + c : c;
            if (s == K(0)) a.terms.erase(e);
            else a.terms[e] = s;
        }
        return a;
    }
    friend MPoly operator-(const MPoly& a) {
        MPoly r;
        for (const auto& [e, c] : a.terms) r.terms[e] = K(0) - c;
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (const auto& [e1, c1] : a.terms)
            for (const auto& [e2, c2] : b.terms) {
                std::array<int, N> e;
                for (std::size_t i = 0; i < N; ++i) e[i] = e1[i] + e2[i];
                r = r + MPoly::term(e, c1 * c2);
            }
        return r;
    }
    static MPoly term(const std::array<int, N>& e, K c) {
        MPoly p;
        if (!(c == K(0))) p.terms[e] = c;
        return p;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms == b.terms; }
    bool is_zero() const { return terms.empty(); }
    // total degree if homogeneous, else -1
    int homogeneous_degree() const;
};

template <class K, std::size_t N>
int MPoly<K, N>::homogeneous_degree() const {
    int d = -2;
    for (const auto& [e, c] : terms) {
        int s = 0;
        for (int x : e) s += x;
        if (d == -2) d = s;
        else if (d != s) return -1;
    }
    return d == -2 ? 0 : d;
}

using TernaryForm = MPoly<Rat, 3>;       // in x, y, z
using BinaryFormQv = MPoly<RatFunc, 2>;  // in u1, u2 over Q(v)

TernaryForm parse_ternary(const std::string& text);
BinaryFormQv parse_binary_qv(const std::string& text);  // variables u1, u2, v

struct PencilRestriction {
    BinaryFormQv p, q;           // reduced map [p : q]
    BinaryFormQv common_factor;  // removed from both coordinates
    BinaryFormQv ramification;   // Wronskian, zeros are the ramification points in the source
    int degree = 0;
};
// [F : G] composed with rho, common factors removed
PencilRestriction restrict_pencil(const TernaryForm& f, const TernaryForm& g, const std::array<BinaryFormQv, 3>& rho);
// [a : b] is a branch value: b p - a q has a repeated root
bool is_branch_value(const PencilRestriction& r, const Rat& a, const Rat& b);
// the two maps agree projectively
bool same_map(const BinaryFormQv& p1, const BinaryFormQv& q1, const BinaryFormQv& p2, const BinaryFormQv& q2);
std::string binary_str(const BinaryFormQv& f);

}  // namespace k3fib
