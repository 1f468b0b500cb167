#include "k3fib/function_field.hpp"

#include "expr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <json.hpp>
#include <sstream>

namespace k3fib {

RatFunc::RatFunc(QPoly num, QPoly den) {
    if (den.is_zero()) throw Error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = QPoly(Rat(1));
        return;
    }
    QPoly g = gcd(num, den);
    num = num / g;
    den = den / g;
    Rat l = den.lead();
    num_ = num.scaled(Rat(1) / l);
    den_ = den.scaled(Rat(1) / l);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error("division by the zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
}

int RatFunc::valuation(const QPoly& p) const {
    if (is_zero()) throw Error("valuation of zero");
    return multiplicity(num_, p) - multiplicity(den_, p);
}

int RatFunc::valuation_at_infinity() const {
    if (is_zero()) throw Error("valuation of zero");
    return den_.degree() - num_.degree();
}

std::string RatFunc::str(char var) const {
    if (den_ == QPoly(Rat(1))) return poly_str(num_, var);
    return "(" + poly_str(num_, var) + ")/(" + poly_str(den_, var) + ")";
}

RatFunc parse_ratfunc(const std::string& num, const std::string& den) {
    return {parse_poly(num), parse_poly(den)};
}

Invariants invariants(const WeierstrassModel& m) {
    Invariants r;
    const RatFunc &a1 = m.a1, &a2 = m.a2, &a3 = m.a3, &a4 = m.a4, &a6 = m.a6;
    r.b2 = a1 * a1 + RatFunc(4) * a2;
    r.b4 = a1 * a3 + RatFunc(2) * a4;
    r.b6 = a3 * a3 + RatFunc(4) * a6;
    r.b8 = a1 * a1 * a6 + RatFunc(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    r.c4 = r.b2 * r.b2 - RatFunc(24) * r.b4;
    r.c6 = RatFunc(0) - r.b2 * r.b2 * r.b2 + RatFunc(36) * r.b2 * r.b4 - RatFunc(216) * r.b6;
    r.disc = RatFunc(0) - r.b2 * r.b2 * r.b8 - RatFunc(8) * r.b4 * r.b4 * r.b4 - RatFunc(27) * r.b6 * r.b6 +
             RatFunc(9) * r.b2 * r.b4 * r.b6;
    if (r.disc.is_zero()) throw Error("not an elliptic surface: discriminant vanishes");
    if (r.c4 * r.c4 * r.c4 - r.c6 * r.c6 != RatFunc(1728) * r.disc)
        throw Error("c4^3 - c6^2 != 1728 disc");
    return r;
}

namespace {

// marks an identically zero invariant inside this file; never bounds k
constexpr int kZero = std::numeric_limits<int>::min();

// largest k with (v4, v6, vd) - k (4, 6, 12) still integral at the place
Valuations minimalize(const Valuations& raw) {
    auto fl = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    int k = fl(raw.disc, 12);
    bool c4_zero = raw.c4 == kZero;
    bool c6_zero = raw.c6 == kZero;
    if (!c4_zero) k = std::min(k, fl(raw.c4, 4));
    if (!c6_zero) k = std::min(k, fl(raw.c6, 6));
    Valuations m;
    m.c4 = c4_zero ? -1 : raw.c4 - 4 * k;
    m.c6 = c6_zero ? -1 : raw.c6 - 6 * k;
    m.disc = raw.disc - 12 * k;
    return m;
}

Valuations raw_at(const Invariants& inv, const std::optional<QPoly>& p) {
    auto v = [&](const RatFunc& f) {
        if (f.is_zero()) return kZero;
        return p ? f.valuation(*p) : f.valuation_at_infinity();
    };
    return {v(inv.c4), v(inv.c6), v(inv.disc)};
}

Valuations printable(const Valuations& v) {
    return {v.c4 == kZero ? -1 : v.c4, v.c6 == kZero ? -1 : v.c6, v.disc};
}

}  // namespace

std::string PlaceValuation::place_str(char var) const { return place ? poly_str(*place, var) : "inf"; }

KodairaFibre kodaira_at(int v4, int v6, int vd) {
    Valuations raw{v4 < 0 ? kZero : v4, v6 < 0 ? kZero : v6, vd};
    Valuations m = minimalize(raw);
    constexpr int inf = 1 << 20;
    int a = m.c4 < 0 ? inf : m.c4, b = m.c6 < 0 ? inf : m.c6, d = m.disc;
    auto bad = [&] {
        return Error("unclassifiable valuations (" + std::to_string(v4) + "," + std::to_string(v6) + "," +
                     std::to_string(vd) + ")");
    };
    // in characteristic 0 an additive type fixes v(disc)
    auto additive = [&](Kind k, int expected) -> KodairaFibre {
        if (d != expected) throw bad();
        return {k, 0};
    };
    if (d == 0) return {Kind::I, 0};
    if (a == 0) return {Kind::I, d};
    if (b == 1) return additive(Kind::II, 2);
    if (a == 1) return additive(Kind::III, 3);
    if (b == 2) return additive(Kind::IV, 4);
    if (a >= 2 && b >= 3 && d == 6) return {Kind::Istar, 0};
    if (a == 2 && b == 3 && d > 6) return {Kind::Istar, d - 6};
    if (b == 4) return additive(Kind::IVstar, 8);
    if (a == 3) return additive(Kind::IIIstar, 9);
    if (b == 5) return additive(Kind::IIstar, 10);
    throw bad();
}

std::vector<PlaceValuation> places_and_valuations(const WeierstrassModel& m) {
    Invariants inv = invariants(m);
    std::vector<QPoly> polys;
    for (const RatFunc* f : {&inv.c4, &inv.c6, &inv.disc}) {
        if (f->is_zero()) continue;
        polys.push_back(f->num());
        polys.push_back(f->den());
    }
    std::vector<PlaceValuation> out;
    auto add = [&](const std::optional<QPoly>& p) {
        PlaceValuation pv;
        pv.place = p;
        pv.degree = p ? p->degree() : 1;
        Valuations raw = raw_at(inv, p);
        pv.raw = printable(raw);
        pv.minimal = minimalize(raw);
        if (pv.minimal.disc == 0) return;
        pv.fibre = kodaira_at(pv.minimal.c4, pv.minimal.c6, pv.minimal.disc);
        out.push_back(pv);
    };
    for (const auto& b : gcd_free_basis(polys)) add(b);
    add(std::nullopt);
    return out;
}

ModelAnalysis ade_of_model(const WeierstrassModel& m) {
    ModelAnalysis a;
    a.places = places_and_valuations(m);
    for (const auto& p : a.places) {
        a.euler += p.degree * euler(p.fibre);
        if (auto c = ade_of(p.fibre))
            for (int i = 0; i < p.degree; ++i) a.ade.comps.push_back(*c);
    }
    a.ade.normalize();
    return a;
}

WeierstrassModel base_change_cubed(const WeierstrassModel& m) {
    WeierstrassModel r = m;
    for (RatFunc* f : {&r.a1, &r.a2, &r.a3, &r.a4, &r.a6}) *f = f->inflate(3);
    return r;
}

WeierstrassModel infinity_chart(const WeierstrassModel& m, int weight) {
    auto flip = [&](const RatFunc& f, int i) {
        if (f.is_zero()) return f;
        std::size_t dn = static_cast<std::size_t>(f.num().degree()), dd = static_cast<std::size_t>(f.den().degree());
        QPoly num = f.num().reversed(dn), den = f.den().reversed(dd);
        int shift = static_cast<int>(dd) - static_cast<int>(dn) + weight * i;
        if (shift >= 0) num = num * QPoly::monomial(Rat(1), static_cast<std::size_t>(shift));
        else den = den * QPoly::monomial(Rat(1), static_cast<std::size_t>(-shift));
        return RatFunc(num, den);
    };
    WeierstrassModel r = m;
    r.a1 = flip(m.a1, 1);
    r.a2 = flip(m.a2, 2);
    r.a3 = flip(m.a3, 3);
    r.a4 = flip(m.a4, 4);
    r.a6 = flip(m.a6, 6);
    return r;
}

WeierstrassModel model_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    WeierstrassModel m;
    char var = 0;
    auto get = [&](const char* key) {
        if (!j.contains(key)) return RatFunc();
        const auto& e = j.at(key);
        std::string num = e.at("num").get<std::string>();
        std::string den = e.contains("den") ? e.at("den").get<std::string>() : "1";
        for (char c : num + den)
            if (std::isalpha(static_cast<unsigned char>(c))) var = c;
        return parse_ratfunc(num, den);
    };
    m.a1 = get("a1");
    m.a2 = get("a2");
    m.a3 = get("a3");
    m.a4 = get("a4");
    m.a6 = get("a6");
    if (j.contains("variable")) var = j.at("variable").get<std::string>().at(0);
    m.var = var ? var : 't';
    return m;
}

WeierstrassModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json_text(ss.str());
}

namespace {

template <class K, std::size_t N>
MPoly<K, N> parse_mpoly(const std::string& text, const std::vector<std::string>& names,
                        std::function<MPoly<K, N>(const std::string&)> extra) {
    detail::ExprParser<MPoly<K, N>> p(text, [&](const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return MPoly<K, N>::var(i);
        if (extra) return extra(name);
        throw Error("unknown variable '" + name + "'");
    });
    return p.parse();
}

using QvPoly = Poly<RatFunc>;

// F(u1, 1) as a polynomial in u1 over Q(v)
QvPoly dehomogenize(const BinaryFormQv& f) {
    QvPoly r;
    for (const auto& [e, c] : f.terms) r += QvPoly::monomial(c, static_cast<std::size_t>(e[0]));
    return r;
}

BinaryFormQv homogenize(const QvPoly& p, int degree) {
    BinaryFormQv r;
    for (int i = 0; i <= p.degree(); ++i) {
        const RatFunc& c = p.coeffs()[static_cast<std::size_t>(i)];
        if (!c.is_zero()) r.terms[{i, degree - i}] = c;
    }
    return r;
}

// exponent of u2 dividing f
int u2_order(const BinaryFormQv& f) {
    int m = 1 << 20;
    for (const auto& [e, c] : f.terms) m = std::min(m, e[1]);
    return m;
}

BinaryFormQv compose(const TernaryForm& f, const std::array<BinaryFormQv, 3>& rho) {
    BinaryFormQv r;
    for (const auto& [e, c] : f.terms) {
        BinaryFormQv t{RatFunc(c)};
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < e[static_cast<std::size_t>(k)]; ++i) t = t * rho[static_cast<std::size_t>(k)];
        r = r + t;
    }
    return r;
}

}  // namespace

TernaryForm parse_ternary(const std::string& text) {
    return parse_mpoly<Rat, 3>(text, {"x", "y", "z"}, nullptr);
}

BinaryFormQv parse_binary_qv(const std::string& text) {
    return parse_mpoly<RatFunc, 2>(text, {"u1", "u2"}, [](const std::string& name) -> BinaryFormQv {
        if (name == "v") return BinaryFormQv(RatFunc(QPoly::x()));
        throw Error("unknown variable '" + name + "'");
    });
}

PencilRestriction restrict_pencil(const TernaryForm& f, const TernaryForm& g, const std::array<BinaryFormQv, 3>& rho) {
    if (f.homogeneous_degree() < 0 || g.homogeneous_degree() != f.homogeneous_degree())
        throw Error("pencil generators must be homogeneous of the same degree");
    int dr = rho[0].homogeneous_degree();
    for (const auto& r : rho)
        if (!r.is_zero() && r.homogeneous_degree() != dr) throw Error("parametrization must be homogeneous");
    BinaryFormQv p = compose(f, rho), q = compose(g, rho);
    if (p.is_zero() && q.is_zero()) throw Error("pencil member contained in base locus");
    int d = f.homogeneous_degree() * dr;
    PencilRestriction out;
    // common factor: gcd of the dehomogenized parts times the common power of u2
    int k2 = std::min(p.is_zero() ? 1 << 20 : u2_order(p), q.is_zero() ? 1 << 20 : u2_order(q));
    QvPoly pp = dehomogenize(p), qq = dehomogenize(q);
    QvPoly g1 = pp.is_zero() ? qq.monic() : qq.is_zero() ? pp.monic() : gcd(pp, qq);
    int dg = g1.degree() + k2;
    out.degree = d - dg;
    out.common_factor = homogenize(g1, g1.degree()) * homogenize(QvPoly(RatFunc(1)), 0);
    for (int i = 0; i < k2; ++i) out.common_factor = out.common_factor * BinaryFormQv::var(1);
    QvPoly rp = pp.is_zero() ? pp : pp / g1, rq = qq.is_zero() ? qq : qq / g1;
    out.p = homogenize(rp, out.degree);
    out.q = homogenize(rq, out.degree);
    // Wronskian of a degree n map: n (p' q - p q') in the affine chart, degree 2n - 2
    QvPoly w = (rp.derivative() * rq - rp * rq.derivative()).scaled(RatFunc(out.degree));
    out.ramification = homogenize(w, 2 * out.degree - 2);
    return out;
}

bool is_branch_value(const PencilRestriction& r, const Rat& a, const Rat& b) {
    QvPoly f = dehomogenize(r.p).scaled(RatFunc(b)) - dehomogenize(r.q).scaled(RatFunc(a));
    if (f.is_zero()) return true;
    // a double root at u2 = 0 shows up as a degree drop of at least two
    if (r.degree - f.degree() >= 2) return true;
    return gcd(f, f.derivative()).degree() > 0;
}

bool same_map(const BinaryFormQv& p1, const BinaryFormQv& q1, const BinaryFormQv& p2, const BinaryFormQv& q2) {
    return p1 * q2 == p2 * q1;
}

std::string binary_str(const BinaryFormQv& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!out.empty()) out += " + ";
        out += "(" + c.str('v') + ")";
        if (e[0]) out += "*u1^" + std::to_string(e[0]);
        if (e[1]) out += "*u2^" + std::to_string(e[1]);
    }
    return out;
}

}  // namespace k3fib
