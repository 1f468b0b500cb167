#pragma once

#include "k3fib/arith.hpp"

#include <string>
#include <utility>
#include <vector>

namespace k3fib {

// Dense univariate polynomial over a field K, coefficients from degree 0 upward, no trailing zeros.
template <class K>
class Poly {
public:
    Poly() = default;
    Poly(K c) {
        if (!is_zero_k(c)) c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly monomial(K c, std::size_t deg) {
        std::vector<K> v(deg + 1, K(0));
        v[deg] = std::move(c);
        return Poly(std::move(v));
    }
    static Poly x() { return monomial(K(1), 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
    K lead() const { return c_.empty() ? K(0) : c_.back(); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<K> r = a.c_;
        for (auto& x : r) x = K(0) - x;
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const K& k) const {
        std::vector<K> r = c_;
        for (auto& x : r) x = x * k;
        return Poly(std::move(r));
    }

    // quotient and remainder
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw Error("polynomial division by zero");
        std::vector<K> r = c_;
        int dd = d.degree();
        if (degree() < dd) return {Poly(), *this};
        std::vector<K> q(static_cast<std::size_t>(degree() - dd + 1), K(0));
        K inv = K(1) / d.lead();
        for (int i = degree(); i >= dd; --i) {
            K f = r[static_cast<std::size_t>(i)] * inv;
            q[static_cast<std::size_t>(i - dd)] = f;
            if (is_zero_k(f)) continue;
            for (int j = 0; j <= dd; ++j)
                r[static_cast<std::size_t>(i - dd + j)] =
                    r[static_cast<std::size_t>(i - dd + j)] - f * d.c_[static_cast<std::size_t>(j)];
        }
        r.resize(static_cast<std::size_t>(dd));
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) {
        auto [q, r] = a.divmod(b);
        if (!r.is_zero()) throw Error("inexact polynomial division");
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

    Poly monic() const { return is_zero() ? *this : scaled(K(1) / lead()); }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<K> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * K(static_cast<long>(i)));
        return Poly(std::move(r));
    }

    K eval(const K& x) const {
        K r(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    // substitute x -> x^k
    Poly inflate(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<K> r((c_.size() - 1) * k + 1, K(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
        return Poly(std::move(r));
    }

    // x^deg * p(1/x) for deg >= degree
    Poly reversed(std::size_t deg) const {
        std::vector<K> r(deg + 1, K(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[deg - i] = c_[i];
        return Poly(std::move(r));
    }

    Poly pow(unsigned e) const {
        Poly r(K(1)), b = *this;
        while (e) {
            if (e & 1u) r *= b;
            b *= b;
            e >>= 1u;
        }
        return r;
    }

private:
    std::vector<K> c_;
    static bool is_zero_k(const K& k) { return k == K(0); }
    void trim() {
        while (!c_.empty() && is_zero_k(c_.back())) c_.pop_back();
    }
};

template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// multiplicity of p in f (p non-constant, f nonzero)
template <class K>
int multiplicity(Poly<K> f, const Poly<K>& p) {
    if (f.is_zero()) throw Error("multiplicity in the zero polynomial");
    int m = 0;
    for (;;) {
        auto [q, r] = f.divmod(p);
        if (!r.is_zero()) return m;
        f = std::move(q);
        ++m;
    }
}

using QPoly = Poly<Rat>;

// "3t^2 - t + 1/2"; variable is any single letter
QPoly parse_poly(const std::string& text);
std::string poly_str(const QPoly& p, char var = 't');

// squarefree part and a coprime refinement: every input is a constant times a product of
// powers of basis elements, basis elements monic, squarefree, pairwise coprime
QPoly squarefree_part(const QPoly& p);
std::vector<QPoly> gcd_free_basis(const std::vector<QPoly>& polys);

}  // namespace k3fib
