#include "k3fib/niemeier.hpp"

#include <map>
#include <set>

namespace k3fib {

namespace {

QVec weight(const AdeComponent& c, std::size_t index) {
    QMat inv = inverse(to_q(ade_gram(c.family, c.rank)));
    return inv[index];
}

struct GlueEntry {
    std::string name;
    std::vector<AdeComponent> comps;
    std::vector<std::vector<int>> glue;
};

constexpr int S = 1, V = 2, C = 3;

const std::vector<GlueEntry>& table() {
    static const std::vector<GlueEntry> t = {
        {"E8^3", {{'E', 8}, {'E', 8}, {'E', 8}}, {}},
        {"E8+D16", {{'E', 8}, {'D', 16}}, {{0, S}}},
        {"E7^2+D10", {{'E', 7}, {'E', 7}, {'D', 10}}, {{1, 0, S}, {0, 1, C}}},
        {"E7+A17", {{'E', 7}, {'A', 17}}, {{1, 3}}},
        {"E6^4", {{'E', 6}, {'E', 6}, {'E', 6}, {'E', 6}}, {{0, 1, 1, 1}, {1, 0, 1, 2}}},
        {"E6+D7+A11", {{'E', 6}, {'D', 7}, {'A', 11}}, {{1, S, 1}}},
        {"D24", {{'D', 24}}, {{S}}},
        {"D12^2", {{'D', 12}, {'D', 12}}, {{S, V}, {V, S}}},
        {"A24", {{'A', 24}}, {{5}}},
    };
    return t;
}

}  // namespace

QVec frac(const QVec& v) {
    QVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(x - Rat(floor_div(x)));
    return r;
}

QVec glue_class_vector(const AdeComponent& c, int k) {
    std::size_t n = static_cast<std::size_t>(c.rank);
    if (k == 0) return QVec(n, Rat(0));
    switch (c.family) {
        case 'A': {
            int m = ((k % (c.rank + 1)) + c.rank + 1) % (c.rank + 1);
            if (m == 0) return QVec(n, Rat(0));
            return weight(c, static_cast<std::size_t>(m - 1));
        }
        case 'D':
            if (k == S) return weight(c, n - 1);
            if (k == V) return weight(c, 0);
            if (k == C) return weight(c, n - 2);
            break;
        case 'E':
            if (c.rank == 6 && k == 1) return weight(c, 5);
            if (c.rank == 6 && k == 2) return weight(c, 1);
            if (c.rank == 7 && k == 1) return weight(c, 6);
            break;
    }
    throw Error("no glue class " + std::to_string(k) + " on " + c.str());
}

std::string glue_class_name(const AdeComponent& c, int k) {
    if (c.family == 'D') return k == 0 ? "0" : k == S ? "s" : k == V ? "v" : "c";
    return std::to_string(k);
}

std::size_t NiemeierLattice::component_of(std::size_t coord) const {
    for (std::size_t i = components.size(); i-- > 0;)
        if (coord >= offsets[i]) return i;
    throw Error("coordinate out of range");
}

bool NiemeierLattice::contains(const QVec& v) const {
    if (v.size() != root_part.rank()) throw Error("dimension mismatch");
    QVec f = frac(v);
    for (const auto& g : glue_group)
        if (g == f) return true;
    return false;
}

QVec NiemeierLattice::coordinates(const QVec& v) const {
    if (v.size() != root_part.rank()) throw Error("dimension mismatch");
    return row_times(v, basis_inverse);
}

NiemeierLattice niemeier_from_glue(const std::vector<AdeComponent>& comps,
                                   const std::vector<std::vector<int>>& glue) {
    NiemeierLattice n;
    AdeType t;
    t.comps = comps;
    t.normalize();
    n.root_type = t;
    n.name = t.str();
    n.components = comps;
    std::vector<IMat> blocks;
    std::vector<std::string> labels;
    std::size_t off = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        n.offsets.push_back(off);
        blocks.push_back(ade_gram(comps[i].family, comps[i].rank));
        for (const auto& l : ade_labels(comps[i].family, comps[i].rank))
            labels.push_back(l + "_" + std::to_string(i + 1));
        off += static_cast<std::size_t>(comps[i].rank);
    }
    n.root_part = IntLattice(block_diag(blocks), labels);
    n.glue_codes = glue;
    for (const auto& code : glue) {
        if (code.size() != comps.size()) throw Error("glue code length mismatch");
        QVec v;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            QVec part = glue_class_vector(comps[i], code[i]);
            v.insert(v.end(), part.begin(), part.end());
        }
        n.glue_generators.push_back(v);
    }
    std::set<QVec> seen{QVec(off, Rat(0))};
    std::vector<QVec> queue{QVec(off, Rat(0))};
    for (std::size_t k = 0; k < queue.size(); ++k)
        for (const auto& g : n.glue_generators) {
            QVec s(off);
            for (std::size_t j = 0; j < off; ++j) s[j] = queue[k][j] + g[j];
            s = frac(s);
            if (seen.insert(s).second) queue.push_back(s);
            if (queue.size() > 100000) throw Error("glue group is not finite");
        }
    n.glue_group = queue;
    QMat gens = to_q(identity(off));
    gens.insert(gens.end(), n.glue_generators.begin(), n.glue_generators.end());
    n.basis = row_basis(gens);
    n.basis_inverse = inverse(n.basis);
    QMat g = mul(mul(n.basis, to_q(n.root_part.gram)), [&] {
        QMat t(off, QVec(off));
        for (std::size_t i = 0; i < off; ++i)
            for (std::size_t j = 0; j < off; ++j) t[i][j] = n.basis[j][i];
        return t;
    }());
    bool integral = true;
    for (const auto& row : g) integral = integral && is_integral(row);
    if (integral) n.gram_n = to_int(g);
    return n;
}

std::vector<std::string> supported_niemeier() {
    std::vector<std::string> out;
    for (const auto& e : table()) out.push_back(e.name);
    return out;
}

std::vector<std::string> e_type_niemeier() {
    return {"E8^3", "E8+D16", "E7^2+D10", "E7+A17", "E6^4", "E6+D7+A11"};
}

NiemeierLattice niemeier_by_root_type(const AdeType& t) {
    for (const auto& e : table()) {
        if (parse_ade(e.name) == t) return niemeier_from_glue(e.comps, e.glue);
    }
    std::string list;
    for (const auto& s : supported_niemeier()) list += (list.empty() ? "" : ", ") + s;
    throw Error("unsupported Niemeier root type " + t.str() + "; supported: " + list);
}

NiemeierLattice niemeier_by_root_type(const std::string& t) { return niemeier_by_root_type(parse_ade(t)); }

NiemeierReport verify(const NiemeierLattice& n) {
    NiemeierReport r;
    const IMat& g = n.root_part.gram;
    r.even = true;
    for (std::size_t i = 0; i < n.glue_generators.size(); ++i)
        for (std::size_t j = i; j < n.glue_generators.size(); ++j) {
            Rat p = form(n.glue_generators[i], g, n.glue_generators[j]);
            if (denom(p) != 1 || (i == j && numer(p) % 2 != 0)) {
                r.even = false;
                r.notes.push_back("glue pairing " + std::to_string(i) + "," + std::to_string(j) + " = " +
                                  to_string(p));
            }
        }
    Int d = n.root_part.det();
    if (d < 0) d = -d;
    Int ord(n.order());
    r.unimodular = d == ord * ord;
    if (!r.unimodular) r.notes.push_back("|det| " + to_string(d) + " vs order^2 " + to_string(Int(ord * ord)));
    // per-component coset minima, cached by fractional shift
    std::map<std::pair<std::size_t, QVec>, Rat> cache;
    r.rootless = true;
    bool first = true;
    for (const auto& el : n.glue_group) {
        bool zero = true;
        for (const auto& x : el)
            if (x != 0) zero = false;
        if (zero) continue;
        Rat total = 0;
        for (std::size_t c = 0; c < n.components.size(); ++c) {
            std::size_t a = n.offsets[c], len = static_cast<std::size_t>(n.components[c].rank);
            QVec part(el.begin() + a, el.begin() + a + len);
            auto key = std::make_pair(c, part);
            auto it = cache.find(key);
            if (it == cache.end()) {
                IMat q = negate(ade_gram(n.components[c].family, n.components[c].rank));
                it = cache.emplace(key, coset_minimum(q, part, Rat(4)).first).first;
            }
            total += it->second;
        }
        if (first || total < r.min_glue_norm) r.min_glue_norm = total;
        first = false;
        if (total < 4) r.rootless = false;
    }
    if (!r.rootless) r.notes.push_back("a glue coset has a vector of norm " + to_string(r.min_glue_norm));
    return r;
}

}  // namespace k3fib
