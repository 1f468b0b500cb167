#pragma once

#include "k3fib/arith.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace k3fib {

// Integer combination of named curves.
using DivisorExpr = std::map<std::string, long>;

// "2Theta16 + 3(S1 - R2) + Sigma0"; names start with a letter and may contain digits, '_' and '~'
DivisorExpr parse_divisor(const std::string& text);
std::string divisor_str(const DivisorExpr& d);
DivisorExpr operator+(DivisorExpr a, const DivisorExpr& b);
DivisorExpr scaled(DivisorExpr d, long k);
// rename curves; names without an entry are kept
DivisorExpr relabel(const DivisorExpr& d, const std::map<std::string, std::string>& to);

struct BlowupPoint {
    std::string name;                 // also the name of the exceptional curve
    std::vector<std::string> curves;  // curves through the point, each smooth there
};

struct CurveConfig {
    std::map<std::string, long> self;                              // declared curves with self-intersection
    std::map<std::pair<std::string, std::string>, long> meets;      // distinct pairs, stored sorted
    std::set<std::string> fixed;                                   // pointwise fixed curves
    std::vector<BlowupPoint> blowups;
    std::vector<DivisorExpr> fibre_classes;

    void declare(const std::string& c, long self_intersection);
    void set_meet(const std::string& a, const std::string& b, long value);
    long pair(const std::string& a, const std::string& b) const;  // throws on unknown names
    // symmetric, declared fibre classes square to 0, blowup curves declared
    void validate() const;
};

long intersect(const CurveConfig& cfg, const DivisorExpr& a, const DivisorExpr& b);

// Curve data on the K3 surface with the order 3 automorphism: the I18 cycle, six sections, the fibre Fa.
CurveConfig x3_config();
CurveConfig load_curve_config(const std::string& path);

struct X3Fibration {
    int index = 0;
    DivisorExpr L, M;
    std::string root;  // root type of the reducible fibre L
};
const std::vector<X3Fibration>& x3_fibrations();

// Dictionary for the quotient by the lifted automorphism after blowing up the isolated fixed points.
struct QuotientData {
    std::map<std::string, std::pair<std::string, long>> image;  // curve upstairs -> (curve downstairs, coefficient)
    DivisorExpr canonical;                                      // canonical class downstairs
    std::map<int, DivisorExpr> expected_pushforward;
    std::map<int, long> expected_k;
    std::map<std::string, long> expected_self;  // by name prefix, "E~" -> -6
};
const QuotientData& x3_quotient();

// eta^* D on the blowup: strict transforms keep their names, exceptional curves carry point multiplicities
DivisorExpr pullback(const CurveConfig& cfg, const DivisorExpr& d);
// intersection on the blowup
long intersect_blowup(const CurveConfig& cfg, const DivisorExpr& a, const DivisorExpr& b);
// curves of the blowup fixed pointwise: fixed strict transforms and every exceptional curve
std::set<std::string> blowup_fixed(const CurveConfig& cfg);

// pi_* eta^* L in the quotient
DivisorExpr pushforward_table(const CurveConfig& cfg, const QuotientData& q, const DivisorExpr& l);
// intersection in the quotient, derived from the blowup through the dictionary
long intersect_quotient(const CurveConfig& cfg, const QuotientData& q, const DivisorExpr& a, const DivisorExpr& b);

struct KIntersection {
    long projection = 0;  // eta^* L . (K_blowup - 2 Fix) on the blowup
    long dictionary = 0;  // pushforward . canonical class
    DivisorExpr pushforward;
};
// both routes; throws if L^2 != 0 or the routes disagree
KIntersection k_intersection(const CurveConfig& cfg, const QuotientData& q, const DivisorExpr& l);

enum class X3Type { Type1, Type2 };
std::string x3_type_str(X3Type t);
X3Type classify_x3(int i);

struct Sigma5Check {
    long l_sq = 0, m_sq = 0, l_m = 0, l_sigma_l = 0;
    bool type3 = false;  // L is a fibre class moved by sigma5: L^2 = 0 and L.sigma5(L) != 0
};
// three IV* fibres a1, a2, a3 with zero section sigma0 and a 3-torsion section Sigma1
CurveConfig three_iv_star_config(long sigma0_dot_sigma1 = 0);
// L and sigma5(L) as built from the first and second IV* fibres
Sigma5Check sigma5_type3_check(const CurveConfig& cfg5);

}  // namespace k3fib
