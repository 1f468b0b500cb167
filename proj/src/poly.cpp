#include "k3fib/poly.hpp"

#include "expr.hpp"

#include <algorithm>

namespace k3fib {

QPoly parse_poly(const std::string& text) {
    char seen = 0;
    detail::ExprParser<QPoly> p(text, [&](const std::string& name) {
        if (name.size() != 1) throw Error("polynomial variable must be one letter: '" + name + "'");
        if (seen && seen != name[0]) throw Error("more than one variable in '" + text + "'");
        seen = name[0];
        return QPoly::x();
    });
    return p.parse();
}

std::string poly_str(const QPoly& p, char var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        Rat c = p.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string mono = i == 0 ? "" : i == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(i);
        if (a != 1 || i == 0) out += to_string(a);
        out += mono;
    }
    return out;
}

QPoly squarefree_part(const QPoly& p) {
    if (p.degree() <= 0) return QPoly(Rat(1));
    return (p / gcd(p, p.derivative())).monic();
}

namespace {

// Yun: p = c * prod s_i^i with s_i squarefree and pairwise coprime
std::vector<QPoly> squarefree_factors(const QPoly& p) {
    std::vector<QPoly> out;
    if (p.degree() <= 0) return out;
    QPoly a = p.monic(), d = a.derivative();
    QPoly g = gcd(a, d);
    QPoly b = a / g, c = d / g - b.derivative();
    while (b.degree() > 0) {
        QPoly s = gcd(b, c);
        if (s.degree() > 0) out.push_back(s);
        b = b / s;
        c = c / s - b.derivative();
    }
    return out;
}

}  // namespace

std::vector<QPoly> gcd_free_basis(const std::vector<QPoly>& polys) {
    std::vector<QPoly> basis;
    for (const auto& p : polys)
        for (auto& s : squarefree_factors(p)) basis.push_back(s.monic());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < basis.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
                QPoly g = gcd(basis[i], basis[j]);
                if (g.degree() <= 0) continue;
                QPoly a = basis[i] / g, b = basis[j] / g;
                basis.erase(basis.begin() + static_cast<long>(j));
                basis.erase(basis.begin() + static_cast<long>(i));
                for (auto* x : {&a, &b, &g})
                    if (x->degree() > 0) basis.push_back(x->monic());
                changed = true;
            }
    }
    std::sort(basis.begin(), basis.end(), [](const QPoly& a, const QPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return basis;
}

}  // namespace k3fib
