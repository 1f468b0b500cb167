#include "k3fib/lattice.hpp"

#include "k3fib/roots.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace k3fib {

IntLattice::IntLattice(IMat g, std::vector<std::string> names) : gram(std::move(g)), labels(std::move(names)) {
    if (!is_symmetric(gram)) throw Error("gram matrix is not symmetric");
    for (std::size_t i = 0; i < gram.size(); ++i)
        if (mod_floor(gram[i][i], 2) != 0) throw Error("lattice is not even");
    if (!labels.empty() && labels.size() != gram.size()) throw Error("label count does not match rank");
}

namespace {

void add_row(IMat& m, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += f * m[src][j];
}

void add_col(IMat& m, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (auto& row : m) row[dst] += f * row[src];
}

void swap_cols(IMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : m) std::swap(row[a], row[b]);
}

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithForm smith_normal_form(const IMat& m) {
    SmithForm s;
    std::size_t r = m.size(), c = r ? m[0].size() : 0;
    s.D = m;
    s.U = identity(r);
    s.V = identity(c);
    s.Vinv = identity(c);
    auto& D = s.D;
    // column op col_j += f col_t on D,V means row_t -= f row_j on Vinv
    auto col_op = [&](std::size_t j, std::size_t t, const Int& f) {
        add_col(D, j, t, f);
        add_col(s.V, j, t, f);
        add_row(s.Vinv, t, j, -f);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        swap_cols(D, a, b);
        swap_cols(s.V, a, b);
        std::swap(s.Vinv[a], s.Vinv[b]);
    };
    std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            std::size_t pi = r, pj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (D[i][j] != 0 && (pi == r || iabs(D[i][j]) < iabs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == r) break;
            if (pi != t) {
                std::swap(D[pi], D[t]);
                std::swap(s.U[pi], s.U[t]);
            }
            col_swap(pj, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (D[i][t] == 0) continue;
                Int q = floor_div(D[i][t], D[t][t]);
                add_row(D, i, t, -q);
                add_row(s.U, i, t, -q);
                if (D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (D[t][j] == 0) continue;
                Int q = floor_div(D[t][j], D[t][t]);
                col_op(j, t, -q);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(D, t, i, 1);
                        add_row(s.U, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t]) x = -x;
            for (auto& x : s.U[t]) x = -x;
        }
    }
    for (std::size_t t = 0; t < n; ++t) {
        s.diag.push_back(D[t][t]);
        if (D[t][t] != 0) ++s.rank;
    }
    return s;
}

std::vector<Int> nontrivial_factors(const std::vector<Int>& diag) {
    std::vector<Int> out;
    for (const auto& d : diag)
        if (d != 1 && d != 0) out.push_back(d);
    return out;
}

IMat row_basis(const IMat& gens) {
    if (gens.empty()) return {};
    IMat a = gens;
    std::size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            std::size_t p = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a[i][c] != 0 && (p == rows || iabs(a[i][c]) < iabs(a[p][c]))) p = i;
            if (p == rows) break;
            std::swap(a[p], a[r]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                add_row(a, i, r, -floor_div(a[i][c], a[r][c]));
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (auto& x : a[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) add_row(a, i, r, -floor_div(a[i][c], a[r][c]));
        ++r;
    }
    a.resize(r);
    return a;
}

QMat row_basis(const QMat& gens) {
    if (gens.empty()) return {};
    Int den = 1;
    for (const auto& row : gens)
        for (const auto& x : row) den = lcm(den, denom(x));
    IMat scaled;
    for (const auto& row : gens) {
        IVec v;
        for (const auto& x : row) v.push_back(numer(x * Rat(den)));
        scaled.push_back(v);
    }
    QMat out;
    for (const auto& row : row_basis(scaled)) {
        QVec v;
        for (const auto& x : row) v.push_back(Rat(x) / Rat(den));
        out.push_back(v);
    }
    return out;
}

IMat left_kernel(const IMat& a) {
    if (a.empty()) return {};
    if (a[0].empty()) return identity(a.size());
    SmithForm s = smith_normal_form(a);
    IMat k;
    for (std::size_t i = s.rank; i < a.size(); ++i) k.push_back(s.U[i]);
    return row_basis(k);
}

// discriminant group

std::size_t DiscriminantLattice::order() const {
    Int o = 1;
    for (const auto& d : invariant_factors) o *= d;
    if (!fits_int64(o)) throw Error("discriminant group too large");
    return static_cast<std::size_t>(o);
}

QVec DiscriminantLattice::lift(const GroupElem& x) const {
    QVec v(gram.size(), Rat(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0)
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += Rat(x[i]) * generator_lifts[i][j];
    return v;
}

QModTwo DiscriminantLattice::q(const GroupElem& x) const {
    QVec v = lift(x);
    return QModTwo(form(v, gram, v));
}

Rat DiscriminantLattice::b(const GroupElem& x, const GroupElem& y) const {
    return mod_rat(form(lift(x), gram, lift(y)), Rat(1));
}

GroupElem DiscriminantLattice::add(const GroupElem& x, const GroupElem& y) const {
    GroupElem z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto d = static_cast<std::int64_t>(invariant_factors[i]);
        z[i] = ((x[i] + y[i]) % d + d) % d;
    }
    return z;
}

GroupElem DiscriminantLattice::scale(const GroupElem& x, std::int64_t k) const {
    GroupElem z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto d = static_cast<std::int64_t>(invariant_factors[i]);
        z[i] = (((x[i] * (k % d)) % d) + d) % d;
    }
    return z;
}

std::int64_t DiscriminantLattice::element_order(const GroupElem& x) const {
    Int o = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Int d = invariant_factors[i];
        o = lcm(o, d / gcd(Int(x[i]), d));
    }
    return static_cast<std::int64_t>(o);
}

std::vector<GroupElem> DiscriminantLattice::elements() const {
    std::size_t n = order();
    if (n > 1000000) throw Error("discriminant group too large to enumerate");
    std::vector<GroupElem> out;
    out.reserve(n);
    GroupElem x = zero();
    for (std::size_t c = 0; c < n; ++c) {
        out.push_back(x);
        for (std::size_t i = x.size(); i-- > 0;) {
            if (++x[i] < static_cast<std::int64_t>(invariant_factors[i])) break;
            x[i] = 0;
        }
    }
    return out;
}

std::vector<QModTwo> DiscriminantLattice::gen_q() const {
    std::vector<QModTwo> out;
    for (const auto& l : generator_lifts) out.emplace_back(form(l, gram, l));
    return out;
}

std::vector<std::vector<Rat>> DiscriminantLattice::gen_b() const {
    std::size_t k = generator_lifts.size();
    std::vector<std::vector<Rat>> out(k, std::vector<Rat>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            out[i][j] = mod_rat(form(generator_lifts[i], gram, generator_lifts[j]), Rat(1));
    return out;
}

DiscriminantLattice discriminant_lattice(const IntLattice& l) {
    DiscriminantLattice d;
    d.gram = l.gram;
    if (l.rank() == 0) return d;
    SmithForm s = smith_normal_form(l.gram);
    if (s.rank < l.rank()) throw Error("degenerate lattice has no finite discriminant group");
    for (std::size_t i = 0; i < s.diag.size(); ++i) {
        if (s.diag[i] == 1) continue;
        d.invariant_factors.push_back(s.diag[i]);
        QVec v;
        for (const auto& x : s.U[i]) v.push_back(Rat(x) / Rat(s.diag[i]));
        d.generator_lifts.push_back(v);
    }
    return d;
}

namespace {

// fast evaluation of q and b on coefficient vectors
struct FormTable {
    std::vector<std::int64_t> ord;
    std::vector<QModTwo> q;
    std::vector<std::vector<Rat>> b;

    explicit FormTable(const DiscriminantLattice& d) : q(d.gen_q()), b(d.gen_b()) {
        for (const auto& f : d.invariant_factors) ord.push_back(static_cast<std::int64_t>(f));
    }
    QModTwo qv(const GroupElem& x) const {
        Rat s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            s += Rat(x[i] * x[i]) * q[i].value;
            for (std::size_t j = i + 1; j < x.size(); ++j)
                if (x[j] != 0) s += Rat(2 * x[i] * x[j]) * b[i][j];
        }
        return QModTwo(s);
    }
    Rat bv(const GroupElem& x, const GroupElem& y) const {
        Rat s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < y.size(); ++j)
                if (y[j] != 0) s += Rat(x[i] * y[j]) * b[i][j];
        }
        return mod_rat(s, Rat(1));
    }
};

std::set<GroupElem> generated(const DiscriminantLattice& d, const std::vector<GroupElem>& gens) {
    std::set<GroupElem> h{d.zero()};
    for (const auto& g : gens) {
        std::vector<GroupElem> cur(h.begin(), h.end());
        GroupElem m = g;
        while (!h.count(m)) {
            for (const auto& x : cur) h.insert(d.add(x, m));
            m = d.add(m, g);
        }
    }
    return h;
}

}  // namespace

DisplayGenerators display_generators(const DiscriminantLattice& d) {
    DisplayGenerators out;
    std::size_t n = d.order();
    FormTable ft(d);
    auto fallback = [&] {
        DisplayGenerators f;
        for (std::size_t i = 0; i < d.invariant_factors.size(); ++i) {
            GroupElem e = d.zero();
            e[i] = 1;
            f.orders.push_back(d.invariant_factors[i]);
            f.q.push_back(ft.q[i]);
            f.elems.push_back(e);
        }
        return f;
    };
    if (n > 4096) return fallback();
    auto elems = d.elements();
    std::vector<Int> wanted(d.invariant_factors.rbegin(), d.invariant_factors.rend());
    std::set<GroupElem> h{d.zero()};
    for (const auto& ord : wanted) {
        const GroupElem* best = nullptr;
        std::tuple<bool, bool, Rat> best_key;
        for (const auto& x : elems) {
            if (d.element_order(x) != ord) continue;
            bool meets = false;
            GroupElem m = x;
            for (std::int64_t k = 1; k < static_cast<std::int64_t>(ord); ++k, m = d.add(m, x))
                if (h.count(m)) {
                    meets = true;
                    break;
                }
            if (meets) continue;
            bool nonorth = false;
            for (const auto& e : out.elems)
                if (ft.bv(x, e) != 0) nonorth = true;
            QModTwo qx = ft.qv(x);
            std::tuple<bool, bool, Rat> key{nonorth, qx.value == 0, qx.value};
            if (!best || key < best_key) {
                best = &x;
                best_key = key;
            }
        }
        if (!best) return fallback();
        out.orders.push_back(ord);
        out.q.push_back(ft.qv(*best));
        out.elems.push_back(*best);
        h = generated(d, out.elems);
    }
    if (h.size() != n) return fallback();
    return out;
}

bool isomorphic(const DiscriminantLattice& a, const DiscriminantLattice& b) {
    if (a.invariant_factors != b.invariant_factors) return false;
    std::size_t k = a.invariant_factors.size();
    if (k == 0) return true;
    FormTable fa(a), fb(b);
    auto elems = b.elements();
    std::vector<QModTwo> qb;
    std::vector<std::int64_t> ob;
    for (const auto& e : elems) {
        qb.push_back(fb.qv(e));
        ob.push_back(b.element_order(e));
    }
    std::vector<std::vector<std::size_t>> cand(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t e = 0; e < elems.size(); ++e)
            if (ob[e] == fa.ord[i] && qb[e] == fa.q[i]) cand[i].push_back(e);
    std::vector<std::size_t> img(k);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == k) {
            std::vector<GroupElem> gens;
            for (auto e : img) gens.push_back(elems[e]);
            return generated(b, gens).size() == elems.size();
        }
        for (auto e : cand[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                if (fb.bv(elems[e], elems[img[j]]) != fa.b[i][j]) ok = false;
            if (!ok) continue;
            img[i] = e;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

// complements and closures

bool is_positive_definite(const IMat& g) {
    std::size_t n = g.size();
    QMat a = to_q(g);
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            Rat f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return true;
}

IMat negate(const IMat& g) {
    IMat r = g;
    for (auto& row : r)
        for (auto& x : row) x = -x;
    return r;
}

bool is_negative_definite(const IMat& g) { return is_positive_definite(negate(g)); }

Reduced lll(const IMat& gram) {
    std::size_t n = gram.size();
    Reduced r{gram, identity(n)};
    if (n < 2) return r;
    IMat& b = r.gram;
    IMat& h = r.transform;
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n);
    B[0] = b[0][0];
    if (B[0] <= 0) throw Error("LLL needs a positive definite form");
    auto red = [&](std::size_t k, std::size_t l) {
        Rat two = mu[k][l] * 2;
        if (two <= 1 && two >= -1) return;
        Int q = floor_div(mu[k][l] + Rat(1, 2));
        add_row(h, k, l, -q);
        // gram update for b_k -= q b_l
        Int kk = b[k][k] - 2 * q * b[k][l] + q * q * b[l][l];
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) b[k][j] -= q * b[l][j];
        b[k][k] = kk;
        for (std::size_t j = 0; j < n; ++j) b[j][k] = b[k][j];
        mu[k][l] -= Rat(q);
        for (std::size_t i = 0; i < l; ++i) mu[k][i] -= Rat(q) * mu[l][i];
    };
    std::size_t k = 1, kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 0; j <= k; ++j) {
                Rat u = b[k][j];
                for (std::size_t i = 0; i < j; ++i) u -= mu[j][i] * mu[k][i] * B[i];
                if (j < k)
                    mu[k][j] = u / B[j];
                else
                    B[k] = u;
            }
            if (B[k] <= 0) throw Error("LLL needs a positive definite form");
        }
        red(k, k - 1);
        if (B[k] < (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            std::swap(h[k], h[k - 1]);
            std::swap(b[k], b[k - 1]);
            for (auto& row : b) std::swap(row[k], row[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            Rat m = mu[k][k - 1];
            Rat bn = B[k] + m * m * B[k - 1];
            mu[k][k - 1] = m * B[k - 1] / bn;
            B[k] = B[k - 1] * B[k] / bn;
            B[k - 1] = bn;
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                Rat t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            if (k > 1) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
    return r;
}

Complement orthogonal_complement(const IntLattice& l, const IMat& sub_basis) {
    std::size_t n = l.rank();
    IMat a = mul(l.gram, transpose(sub_basis));
    IMat k = sub_basis.empty() ? identity(n) : left_kernel(a);
    IMat g = gram_of(k, l.gram);
    if (!k.empty()) {
        bool neg = is_negative_definite(g);
        if (neg || is_positive_definite(g)) {
            Reduced red = lll(neg ? negate(g) : g);
            k = mul(red.transform, k);
            g = gram_of(k, l.gram);
        }
    }
    return {IntLattice(g), k};
}

Closure primitive_closure(const IMat& sub_basis) {
    Closure c;
    if (sub_basis.empty()) return c;
    SmithForm s = smith_normal_form(sub_basis);
    for (std::size_t i = 0; i < s.rank; ++i) c.basis.push_back(s.Vinv[i]);
    c.quotient = nontrivial_factors(s.diag);
    return c;
}

bool is_primitive(const IMat& sub_basis) { return primitive_closure(sub_basis).quotient.empty(); }

IntLattice rescale(const IntLattice& l, const Int& k) {
    IMat g = l.gram;
    for (auto& row : g)
        for (auto& x : row) x *= k;
    return IntLattice(g, l.labels);
}

IntLattice compose(const std::vector<std::pair<IntLattice, Int>>& parts) {
    std::vector<IMat> blocks;
    std::vector<std::string> labels;
    bool all_labels = true;
    for (const auto& [lat, k] : parts) {
        blocks.push_back(rescale(lat, k).gram);
        if (lat.labels.empty() && lat.rank() > 0) all_labels = false;
        labels.insert(labels.end(), lat.labels.begin(), lat.labels.end());
    }
    return IntLattice(block_diag(blocks), all_labels ? labels : std::vector<std::string>{});
}

// short vector enumeration

void enumerate_short(const IMat& q, const QVec& center, Rat& bound,
                     const std::function<bool(const IVec&, const Rat&)>& visit) {
    std::size_t n = q.size();
    if (n == 0) {
        if (bound >= 0) visit({}, Rat(0));
        return;
    }
    QMat a = to_q(q);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] <= 0) throw Error("enumeration needs a positive definite form");
        for (std::size_t j = i + 1; j < n; ++j) {
            a[j][i] = a[i][j];
            a[i][j] /= a[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) a[k][l] -= a[k][i] * a[i][l];
    }
    IVec x(n, Int(0));
    bool stop = false;
    std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t i, const Rat& acc) {
        Rat s = 0;
        for (std::size_t j = i + 1; j < n; ++j) s += a[i][j] * (Rat(x[j]) - center[j]);
        Rat ctr = center[i] - s;
        Int x0 = floor_div(ctr + Rat(1, 2));
        for (int dir = 0; dir < 2 && !stop; ++dir) {
            for (Int xi = dir == 0 ? x0 : Int(x0 - 1);; xi += dir == 0 ? 1 : -1) {
                Rat d = Rat(xi) - ctr;
                Rat t = acc + a[i][i] * d * d;
                if (t > bound) break;
                x[i] = xi;
                if (i == 0) {
                    if (!visit(x, t)) stop = true;
                } else {
                    rec(i - 1, t);
                }
                if (stop) return;
            }
        }
    };
    rec(n - 1, Rat(0));
}

std::pair<Rat, IVec> coset_minimum(const IMat& q, const QVec& shift) { return coset_minimum(q, shift, std::nullopt); }

std::pair<Rat, IVec> coset_minimum(const IMat& q, const QVec& shift, const std::optional<Rat>& cap) {
    std::size_t n = q.size();
    if (n == 0) return {Rat(0), {}};
    Reduced red = lll(q);
    // x = y T, so (x + s) = (y + s T^-1) T
    QMat tinv = inverse(to_q(red.transform));
    QVec s2 = row_times(shift, tinv);
    QVec c(n);
    IVec y0(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = -s2[i];
        y0[i] = floor_div(c[i] + Rat(1, 2));
    }
    auto value = [&](const IVec& y) {
        QVec d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = Rat(y[i]) + s2[i];
        return form(d, red.gram, d);
    };
    // values lie in (1/d^2)Z, so after each hit only strictly smaller ones are sought
    Int d = 1;
    for (const auto& x : s2) d = lcm(d, denom(x));
    Rat step(Int(1), d * d);
    Rat best_value = value(y0);
    IVec best = y0;
    Rat bound = best_value - step;
    if (cap && *cap < best_value) {
        best_value = *cap;
        bound = *cap - step;
    }
    enumerate_short(red.gram, c, bound, [&](const IVec& y, const Rat& v) {
        if (v < best_value) {
            best_value = v;
            best = y;
            bound = v - step;
        }
        return true;
    });
    return {best_value, row_times(best, red.transform)};
}

std::vector<IVec> norm_vectors(const IMat& g, const Int& norm) {
    std::size_t n = g.size();
    std::vector<IVec> out;
    if (n == 0) return out;
    Reduced red = lll(negate(g));
    Rat bound = Rat(-norm);
    QVec c(n, Rat(0));
    enumerate_short(red.gram, c, bound, [&](const IVec& y, const Rat& v) {
        if (v == bound) out.push_back(row_times(y, red.transform));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<IMat> find_isometry(const IMat& from, const IMat& to) {
    std::size_t n = to.size();
    if (from.size() != n) return std::nullopt;
    if (n == 0) return IMat{};
    if (det(from) != det(to)) return std::nullopt;
    bool neg = is_negative_definite(to);
    if (neg != is_negative_definite(from)) return std::nullopt;
    IMat f = neg ? negate(from) : from, t0 = neg ? negate(to) : to;
    if (!is_positive_definite(f) || !is_positive_definite(t0)) throw Error("isometry test needs definite grams");
    // match against a reduced basis of the target, then map back
    Reduced rt = lll(t0);
    const IMat& t = rt.gram;
    std::set<Int> wanted;
    Int top = 0;
    for (std::size_t i = 0; i < n; ++i) {
        wanted.insert(t[i][i]);
        top = std::max(top, t[i][i]);
    }
    Reduced red = lll(f);
    std::map<Int, std::vector<IVec>> by_norm;
    Rat bound = Rat(top);
    enumerate_short(red.gram, QVec(n, Rat(0)), bound, [&](const IVec& y, const Rat& v) {
        if (v > 0 && wanted.count(numer(v))) by_norm[numer(v)].push_back(row_times(y, red.transform));
        return true;
    });
    // equal determinants make any matching tuple a basis
    IMat pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) return true;
        for (const auto& v : by_norm[t[i][i]]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = form(v, f, pick[j]) == t[i][j];
            if (!ok) continue;
            pick.push_back(v);
            if (rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    // pick has gram T t0 T^T with T = rt.transform, so T^-1 pick has gram t0
    return to_int(mul(inverse(to_q(rt.transform)), to_q(pick)));
}

IntLattice parse_lattice_spec(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    for (std::string from : {"⊕", "−"}) {
        std::string to = from == "⊕" ? "+" : "-";
        for (std::size_t p; (p = s.find(from)) != std::string::npos;) s.replace(p, from.size(), to);
    }
    if (s.empty() || s == "0") return IntLattice(IMat{});
    static const std::regex atom(R"(^(U|[ADE]\d+|\((-?\d+)\))(?:\((-?\d+)\))?(?:\^(\d+))?$)");
    std::vector<std::pair<IntLattice, Int>> parts;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(') ++depth;
        if (i < s.size() && s[i] == ')') --depth;
        if (i < s.size() && !(s[i] == '+' && depth == 0)) continue;
        std::string tok = s.substr(start, i - start);
        start = i + 1;
        std::smatch m;
        if (!std::regex_match(tok, m, atom)) throw Error("cannot parse lattice term '" + tok + "'");
        IntLattice base;
        std::string head = m[1];
        if (head == "U") {
            base = IntLattice(IMat{{Int(0), Int(1)}, {Int(1), Int(0)}}, {"u1", "u2"});
        } else if (head[0] == '(') {
            base = IntLattice(IMat{{Int(std::stoll(m[2].str()))}});
        } else {
            int r = std::stoi(head.substr(1));
            base = IntLattice(ade_gram(head[0], r), ade_labels(head[0], r));
        }
        Int k = m[3].matched ? Int(std::stoll(m[3].str())) : Int(1);
        int times = m[4].matched ? std::stoi(m[4].str()) : 1;
        if (k == 0 || times <= 0) throw Error("bad scale or multiplicity in '" + tok + "'");
        for (int t = 0; t < times; ++t) parts.emplace_back(base, k);
    }
    return compose(parts);
}

}  // namespace k3fib
