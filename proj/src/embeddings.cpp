#include "k3fib/embeddings.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace k3fib {

AdeType SummandCounts::type() const {
    AdeType t;
    for (int i = 0; i < e8; ++i) t.comps.push_back({'E', 8});
    for (int i = 0; i < e6; ++i) t.comps.push_back({'E', 6});
    for (int i = 0; i < a2; ++i) t.comps.push_back({'A', 2});
    t.normalize();
    return t;
}

std::string SummandCounts::str() const { return type().str(); }

SummandCounts counts_of(const AdeType& t) {
    if (!t.rank_one.empty()) throw Error("source must be a sum of E8, E6 and A2: " + t.str());
    SummandCounts c;
    for (const auto& comp : t.comps) {
        if (comp == AdeComponent{'E', 8})
            ++c.e8;
        else if (comp == AdeComponent{'E', 6})
            ++c.e6;
        else if (comp == AdeComponent{'A', 2})
            ++c.a2;
        else
            throw Error("source must be a sum of E8, E6 and A2: " + t.str());
    }
    return c;
}

std::size_t leaf_first_d_index(int label, int n) {
    if (label < 1 || label > n) throw Error("D label out of range");
    if (label == 1) return static_cast<std::size_t>(n - 2);
    if (label == 2) return static_cast<std::size_t>(n - 1);
    return static_cast<std::size_t>(n - label);
}

namespace {

const std::vector<SVec>& component_roots(const AdeComponent& c) {
    static std::map<AdeComponent, std::vector<SVec>> cache;
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, roots_of(ade_gram(c.family, c.rank))).first;
    return it->second;
}

IVec unit(std::size_t n, std::size_t i) {
    IVec v(n, Int(0));
    v[i] = 1;
    return v;
}

std::string no_embedding(const SummandCounts& c, const AdeComponent& t) {
    return "no primitive embedding of " + c.str() + " into " + t.str();
}

// roots among `roots` orthogonal to every row of `image`
std::vector<SVec> orthogonal_roots(const std::vector<SVec>& roots, const IMat& gram, const IMat& image) {
    auto g = to_small(gram);
    std::vector<SVec> rows;
    for (const auto& r : image) rows.push_back(to_small(r));
    std::vector<SVec> out;
    for (const auto& r : roots) {
        bool orth = true;
        for (const auto& s : rows)
            if (pair64(r, g, s) != 0) {
                orth = false;
                break;
            }
        if (orth) out.push_back(r);
    }
    return out;
}

}  // namespace

IMat canonical_embedding(const SummandCounts& c, const AdeComponent& t) {
    if (c.e8 < 0 || c.e6 < 0 || c.a2 < 0) throw Error("negative summand count");
    std::size_t n = static_cast<std::size_t>(t.rank);
    IMat rows;
    if (c.empty()) return rows;
    if (c.rank() > t.rank) throw Error(no_embedding(c, t));
    if (c.e8 > 0) {
        if (t != AdeComponent{'E', 8} || c.e8 > 1) throw Error(no_embedding(c, t));
        for (std::size_t i = 0; i < 8; ++i) rows.push_back(unit(8, i));
        return rows;
    }
    if (c.e6 > 0) {
        if (t.family != 'E' || c.e6 > 1) throw Error(no_embedding(c, t));
        for (std::size_t i = 0; i < 6; ++i) rows.push_back(unit(n, i));
        if (c.a2 == 0) return rows;
        if (c.a2 > 1 || t.rank != 8) throw Error(no_embedding(c, t));
        // the A2 orthogonal to E6 in E8; together they have index 3
        IntLattice l(ade_gram('E', 8));
        RootSystem rs = root_system(l.gram, orthogonal_roots(component_roots(t), l.gram, rows));
        for (const auto& s : rs.simple) rows.push_back(to_big(s));
    } else {
        int k = c.a2;
        switch (t.family) {
            case 'A':
                if (t.rank < 3 * k - 1) throw Error(no_embedding(c, t));
                for (int i = 0; i < k; ++i) {
                    rows.push_back(unit(n, static_cast<std::size_t>(3 * i)));
                    rows.push_back(unit(n, static_cast<std::size_t>(3 * i + 1)));
                }
                break;
            case 'D':
                if (t.rank < 3 * k) throw Error(no_embedding(c, t));
                for (int i = 1; i <= k; ++i) {
                    rows.push_back(unit(n, leaf_first_d_index(3 * i - 1, t.rank)));
                    rows.push_back(unit(n, leaf_first_d_index(3 * i, t.rank)));
                }
                break;
            case 'E':
                if (k > 2) throw Error(no_embedding(c, t));
                rows.push_back(unit(n, 1));
                rows.push_back(unit(n, 2));
                if (k == 2) {
                    rows.push_back(unit(n, 4));
                    rows.push_back(unit(n, 5));
                }
                break;
            default:
                throw Error(no_embedding(c, t));
        }
    }
    Closure cl = primitive_closure(rows);
    if (!cl.quotient.empty()) {
        std::string q;
        for (const auto& d : cl.quotient) q += (q.empty() ? "Z/" : " x Z/") + to_string(d);
        throw Error("non-primitive: " + c.str() + " in " + t.str() + " has saturation quotient " + q);
    }
    return rows;
}

ComplementInfo component_complement(const AdeComponent& target, const IMat& image) {
    IntLattice l(ade_gram(target.family, target.rank));
    Complement comp = orthogonal_complement(l, image);
    ComplementInfo info;
    info.lattice = comp.lattice;
    info.basis = comp.basis;
    RootSystem rs = root_system(l.gram, orthogonal_roots(component_roots(target), l.gram, image));
    info.root_type = rs.type;
    for (const auto& r : rs.simple) info.root_basis.push_back(to_big(r));
    if (static_cast<int>(comp.lattice.rank()) == rs.type.rank() + 1) {
        IMat both = image;
        for (const auto& s : rs.simple) both.push_back(to_big(s));
        Complement rest = orthogonal_complement(l, both);
        if (rest.lattice.rank() == 1 && rest.lattice.gram[0][0] == -6) info.minus6 = 1;
    }
    return info;
}

IMat to_niemeier_coords(const NiemeierLattice& n, const IMat& rows) {
    IMat out;
    for (const auto& r : rows) {
        QVec x = n.coordinates(to_q(r));
        if (!is_integral(x)) throw Error("vector is not in " + n.name);
        out.push_back(to_int(x));
    }
    return out;
}

ComplementInfo niemeier_complement(const NiemeierLattice& n, const IMat& image) {
    if (n.gram_n.empty()) throw Error(n.name + " glue is not integral");
    IMat rows = to_niemeier_coords(n, image);
    if (!is_primitive(rows)) throw Error("image is not primitive in " + n.name);
    Complement comp = orthogonal_complement(IntLattice(n.gram_n), rows);
    ComplementInfo info;
    info.lattice = comp.lattice;
    info.basis = comp.basis;
    // every root of a Niemeier lattice lies in its root part
    std::vector<SVec> roots;
    for (std::size_t c = 0; c < n.components.size(); ++c)
        for (const auto& r : component_roots(n.components[c])) {
            SVec v(n.root_part.rank(), 0);
            std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(n.offsets[c]));
            roots.push_back(v);
        }
    RootSystem rs = root_system(n.root_part.gram, orthogonal_roots(roots, n.root_part.gram, image));
    info.root_type = rs.type;
    for (const auto& r : rs.simple) info.root_basis.push_back(to_big(r));
    return info;
}

std::vector<Embedding> enumerate_embeddings(const SummandCounts& source, const NiemeierLattice& n) {
    std::size_t k = n.components.size();
    // feasible per-component loads with their canonical images
    std::vector<std::vector<std::pair<SummandCounts, IMat>>> options(k);
    for (std::size_t c = 0; c < k; ++c)
        for (int a = 0; a <= source.e8; ++a)
            for (int b = 0; b <= source.e6; ++b)
                for (int d = 0; d <= source.a2; ++d) {
                    SummandCounts s{a, b, d};
                    try {
                        options[c].emplace_back(s, canonical_embedding(s, n.components[c]));
                    } catch (const Error&) {
                    }
                }

    std::vector<Embedding> out;
    std::vector<std::size_t> pick(k, 0);
    std::function<void(std::size_t, SummandCounts)> rec = [&](std::size_t c, SummandCounts left) {
        if (c == k) {
            if (!left.empty()) return;
            Embedding e;
            e.niemeier = n.name;
            e.source = source;
            for (std::size_t i = 0; i < k; ++i) {
                const auto& [s, img] = options[i][pick[i]];
                e.placement.push_back(s);
                if (s.empty()) continue;
                e.distribution.push_back(s.str() + "<" + n.components[i].str());
                for (const auto& r : img) {
                    IVec v(n.root_part.rank(), Int(0));
                    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(n.offsets[i]));
                    e.image.push_back(v);
                }
                ComplementInfo part = component_complement(n.components[i], img);
                e.minus6 += part.minus6;
                e.parts.push_back(part);
            }
            try {
                e.m = niemeier_complement(n, e.image);
            } catch (const Error&) {
                return;  // not primitive once the glue is added
            }
            for (const auto& prev : out) {
                if (prev.minus6 == e.minus6 && prev.m.lattice.rank() == e.m.lattice.rank() &&
                    prev.m.lattice.det() == e.m.lattice.det() && prev.m.root_type == e.m.root_type &&
                    isomorphic(discriminant_lattice(prev.m.lattice), discriminant_lattice(e.m.lattice)))
                    return;
            }
            out.push_back(std::move(e));
            return;
        }
        for (std::size_t o = 0; o < options[c].size(); ++o) {
            const SummandCounts& s = options[c][o].first;
            if (s.e8 > left.e8 || s.e6 > left.e6 || s.a2 > left.a2) continue;
            // equal components: loads non-increasing, so each multiset appears once
            bool ok = true;
            for (std::size_t j = 0; j < c; ++j)
                if (n.components[j] == n.components[c] && options[j][pick[j]].first < s) ok = false;
            if (!ok) continue;
            pick[c] = o;
            rec(c + 1, {left.e8 - s.e8, left.e6 - s.e6, left.a2 - s.a2});
        }
    };
    rec(0, source);
    return out;
}

IteratedResult orthogonal_iterated(const IntLattice& l, const std::vector<IMat>& parts) {
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            for (const auto& x : parts[i])
                for (const auto& y : parts[j])
                    if (form(x, l.gram, y) != 0) throw Error("parts are not mutually orthogonal");
    IMat all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    IteratedResult r;
    r.joint = orthogonal_complement(l, all).lattice;

    IMat cb = identity(l.rank());
    IMat gc = l.gram;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        // coordinates of p in the current basis
        QMat solve = mul(mul(to_q(p), to_q(mul(l.gram, transpose(cb)))), inverse(to_q(gc)));
        IMat x;
        for (std::size_t i = 0; i < solve.size(); ++i) {
            if (!is_integral(solve[i])) throw Error("part does not lie in the running complement");
            IVec xi = to_int(solve[i]);
            if (row_times(xi, cb) != p[i]) throw Error("part does not lie in the running complement");
            x.push_back(xi);
        }
        Complement step = orthogonal_complement(IntLattice(gc), x);
        cb = mul(step.basis, cb);
        gc = step.lattice.gram;
    }
    r.stepwise = IntLattice(gc);
    auto type_of = [](const IntLattice& m) {
        if (m.rank() == 0 || !is_negative_definite(m.gram)) return AdeType{};
        return root_system(m.gram).type;
    };
    r.joint_type = type_of(r.joint);
    r.stepwise_type = type_of(r.stepwise);
    return r;
}

CatalogResult brute_force_catalog(const SummandCounts& source, const AdeComponent& target, std::size_t budget) {
    if (source.e8 != 0 || source.e6 != 0)
        throw Error("exhaustive search supports sums of A2 only, got " + source.str());
    IntLattice l(ade_gram(target.family, target.rank));
    auto g = to_small(l.gram);
    const std::vector<SVec>& roots = component_roots(target);

    // A2 subsystems: root pairs pairing to +1, keyed by their six roots
    std::vector<std::pair<SVec, SVec>> a2s;
    std::set<std::vector<SVec>> seen;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (pair64(roots[i], g, roots[j]) != 1) continue;
            SVec s(roots[i].size());
            for (std::size_t t = 0; t < s.size(); ++t) s[t] = roots[i][t] + roots[j][t];
            std::vector<SVec> key{roots[i], roots[j], s};
            for (std::size_t t = 0; t < 3; ++t) {
                SVec m = key[t];
                for (auto& v : m) v = -v;
                key.push_back(m);
            }
            std::sort(key.begin(), key.end());
            if (seen.insert(key).second) a2s.emplace_back(roots[i], roots[j]);
        }
    std::size_t m = a2s.size();
    auto orth = [&](std::size_t a, std::size_t b) {
        return pair64(a2s[a].first, g, a2s[b].first) == 0 && pair64(a2s[a].first, g, a2s[b].second) == 0 &&
               pair64(a2s[a].second, g, a2s[b].first) == 0 && pair64(a2s[a].second, g, a2s[b].second) == 0;
    };
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) adj[a][b] = adj[b][a] = orth(a, b);

    CatalogResult res;
    std::vector<DiscriminantLattice> discs;
    auto record = [&](const std::vector<std::size_t>& tuple) {
        if (++res.tuples > budget)
            throw Error("exhaustive search exceeded its budget of " + std::to_string(budget) + " tuples");
        IMat rows;
        for (auto t : tuple) {
            rows.push_back(to_big(a2s[t].first));
            rows.push_back(to_big(a2s[t].second));
        }
        if (!rows.empty() && !is_primitive(rows)) return;
        ++res.primitive;
        Complement c = orthogonal_complement(l, rows);
        AdeType rt = rows.empty() ? root_system(l.gram, roots).type
                                  : root_system(l.gram, orthogonal_roots(roots, l.gram, rows)).type;
        Int d = c.lattice.det();
        DiscriminantLattice disc = discriminant_lattice(c.lattice);
        for (auto& cls : res.classes)
            if (cls.rank == c.lattice.rank() && cls.det == d && cls.root_type == rt && isomorphic(cls.disc, disc)) {
                ++cls.count;
                return;
            }
        res.classes.push_back({c.lattice.rank(), d, rt, disc, 1});
    };
    std::vector<std::size_t> tuple;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (tuple.size() == static_cast<std::size_t>(source.a2)) {
            record(tuple);
            return;
        }
        for (std::size_t a = from; a < m; ++a) {
            bool ok = true;
            for (auto t : tuple)
                if (!adj[t][a]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            tuple.push_back(a);
            rec(a + 1);
            tuple.pop_back();
        }
    };
    rec(0);
    return res;
}

}  // namespace k3fib
