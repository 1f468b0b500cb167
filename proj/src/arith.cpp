#include "k3fib/arith.hpp"

#include <limits>

namespace k3fib {

std::string to_string(const Int& z) { return z.str(); }

std::string to_string(const Rat& r) {
    Int n = numer(r), d = denom(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Int floor_div(const Rat& r) { return floor_div(numer(r), denom(r)); }

Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd(a, b);
    Int r = a / g * b;
    return r < 0 ? Int(-r) : r;
}

Rat mod_rat(const Rat& r, const Rat& m) {
    Rat q = r / m;
    return r - m * Rat(floor_div(q));
}

bool fits_int64(const Int& z) {
    return z >= std::numeric_limits<std::int64_t>::min() &&
           z <= std::numeric_limits<std::int64_t>::max();
}

IMat identity(std::size_t n) {
    IMat m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IMat zeros(std::size_t r, std::size_t c) { return IMat(r, IVec(c, Int(0))); }

IMat transpose(const IMat& a) {
    if (a.empty()) return {};
    IMat t = zeros(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

IMat mul(const IMat& a, const IMat& b) {
    if (a.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IMat c = zeros(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

QMat mul(const QMat& a, const QMat& b) {
    if (a.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMat c(n, QVec(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

IVec row_times(const IVec& x, const IMat& a) {
    std::size_t m = a.empty() ? 0 : a[0].size();
    IVec r(m, Int(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) r[j] += x[i] * a[i][j];
    }
    return r;
}

QVec row_times(const QVec& x, const IMat& a) {
    std::size_t m = a.empty() ? 0 : a[0].size();
    QVec r(m, Rat(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) r[j] += x[i] * Rat(a[i][j]);
    }
    return r;
}

QVec row_times(const QVec& x, const QMat& a) {
    std::size_t m = a.empty() ? 0 : a[0].size();
    QVec r(m, Rat(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) r[j] += x[i] * a[i][j];
    }
    return r;
}

Int dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int form(const IVec& x, const IMat& g, const IVec& y) { return dot(row_times(x, g), y); }

Rat form(const QVec& x, const IMat& g, const QVec& y) { return dot(row_times(x, g), y); }

QVec to_q(const IVec& v) {
    QVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

QMat to_q(const IMat& m) {
    QMat r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_q(row));
    return r;
}

bool is_integral(const QVec& v) {
    for (const auto& x : v)
        if (denom(x) != 1) return false;
    return true;
}

IVec to_int(const QVec& v) {
    IVec r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if (denom(x) != 1) throw Error("non-integral entry " + to_string(x));
        r.push_back(numer(x));
    }
    return r;
}

IMat to_int(const QMat& m) {
    IMat r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_int(row));
    return r;
}

IMat block_diag(const std::vector<IMat>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size();
    IMat m = zeros(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) m[off + i][off + j] = b[i][j];
        off += b.size();
    }
    return m;
}

IMat gram_of(const IMat& b, const IMat& g) {
    IMat bg = mul(b, g);
    IMat r = zeros(b.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i; j < b.size(); ++j) r[i][j] = r[j][i] = dot(bg[i], b[j]);
    return r;
}

Int det(const IMat& a0) {
    std::size_t n = a0.size();
    if (n == 0) return 1;
    IMat a = a0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

QMat inverse(const QMat& a0) {
    std::size_t n = a0.size();
    QMat a = a0;
    QMat inv(n, QVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw Error("singular matrix");
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        Rat piv = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

std::size_t rank(const QMat& a0) {
    QMat a = a0;
    std::size_t r = 0, rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

std::size_t rank(const IMat& a) { return rank(to_q(a)); }

bool is_symmetric(const IMat& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != a.size()) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (a[i][j] != a[j][i]) return false;
    }
    return true;
}

}  // namespace k3fib
