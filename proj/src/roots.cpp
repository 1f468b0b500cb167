#include "k3fib/roots.hpp"

#include "k3fib/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace k3fib {

IMat ade_gram(char family, int r) {
    bool ok = (family == 'A' && r >= 1) || (family == 'D' && r >= 4) ||
              (family == 'E' && r >= 6 && r <= 8);
    if (!ok) throw Error(std::string("no root lattice ") + family + std::to_string(r));
    IMat g = zeros(r, r);
    for (int i = 0; i < r; ++i) g[i][i] = -2;
    auto link = [&](int a, int b) { g[a][b] = g[b][a] = 1; };
    if (family == 'A') {
        for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
    } else if (family == 'D') {
        for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
        link(r - 1, r - 3);
    } else {
        for (int i = 1; i + 1 < r; ++i) link(i, i + 1);
        link(0, 3);
    }
    return g;
}

std::vector<std::string> ade_labels(char family, int r) {
    std::vector<std::string> out;
    char c = static_cast<char>(family - 'A' + 'a');
    for (int i = 1; i <= r; ++i) out.push_back(std::string(1, c) + std::to_string(i));
    return out;
}

void AdeType::normalize() {
    std::sort(comps.begin(), comps.end());
    std::sort(rank_one.begin(), rank_one.end());
}

int AdeType::rank() const {
    int r = static_cast<int>(rank_one.size());
    for (const auto& c : comps) r += c.rank;
    return r;
}

bool AdeType::operator<(const AdeType& o) const {
    if (rank_one != o.rank_one) return rank_one < o.rank_one;
    return comps < o.comps;
}

std::string AdeType::str() const {
    std::vector<std::string> atoms;
    for (const auto& k : rank_one) atoms.push_back("(" + to_string(k) + ")");
    std::vector<AdeComponent> disp = comps;
    auto fam_rank = [](char f) { return f == 'E' ? 0 : f == 'D' ? 1 : 2; };
    std::sort(disp.begin(), disp.end(), [&](const AdeComponent& a, const AdeComponent& b) {
        if (a.family != b.family) return fam_rank(a.family) < fam_rank(b.family);
        return a.rank > b.rank;
    });
    for (const auto& c : disp) atoms.push_back(c.str());
    if (atoms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < atoms.size();) {
        std::size_t j = i;
        while (j < atoms.size() && atoms[j] == atoms[i]) ++j;
        if (!out.empty()) out += "+";
        out += atoms[i];
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

AdeType parse_ade(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    for (std::string from : {"⊕", "−"}) {
        std::string to = from == "⊕" ? "+" : "-";
        for (std::size_t p; (p = s.find(from)) != std::string::npos;) s.replace(p, from.size(), to);
    }
    AdeType t;
    if (s.empty() || s == "0") return t;
    std::size_t i = 0;
    auto read_int = [&](std::size_t& p) {
        std::size_t st = p;
        if (p < s.size() && s[p] == '-') ++p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == st || (p == st + 1 && s[st] == '-')) throw Error("cannot parse root type '" + text + "'");
        return std::stoll(s.substr(st, p - st));
    };
    while (i < s.size()) {
        if (s[i] == '+') {
            ++i;
            continue;
        }
        long long mult = 1;
        if (s[i] == '(') {
            ++i;
            long long k = read_int(i);
            if (i >= s.size() || s[i] != ')') throw Error("cannot parse root type '" + text + "'");
            ++i;
            if (i < s.size() && s[i] == '^') mult = read_int(++i);
            for (long long m = 0; m < mult; ++m) t.rank_one.push_back(Int(k));
            continue;
        }
        char f = s[i];
        if (f != 'A' && f != 'D' && f != 'E') throw Error("cannot parse root type '" + text + "'");
        ++i;
        int r = static_cast<int>(read_int(i));
        ade_gram(f, r);
        if (i < s.size() && s[i] == '^') mult = read_int(++i);
        for (long long m = 0; m < mult; ++m) t.comps.push_back({f, r});
    }
    t.normalize();
    return t;
}

std::vector<std::vector<std::int64_t>> to_small(const IMat& m) {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& row : m) out.push_back(to_small(row));
    return out;
}

SVec to_small(const IVec& v) {
    SVec out;
    for (const auto& x : v) {
        if (!fits_int64(x)) throw Error("entry too large for machine arithmetic");
        out.push_back(static_cast<std::int64_t>(x));
    }
    return out;
}

IVec to_big(const SVec& v) {
    IVec out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

std::int64_t pair64(const SVec& a, const std::vector<std::vector<std::int64_t>>& g, const SVec& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        std::int64_t t = 0;
        for (std::size_t j = 0; j < b.size(); ++j) t += g[i][j] * b[j];
        s += a[i] * t;
    }
    return s;
}

std::vector<SVec> roots_of(const IMat& gram) {
    std::vector<SVec> out;
    for (const auto& v : norm_vectors(gram, Int(-2))) out.push_back(to_small(v));
    return out;
}

namespace {

bool lex_positive(const SVec& v) {
    for (auto x : v)
        if (x != 0) return x > 0;
    return false;
}

}  // namespace

RootSystem root_system(const IMat& gram) { return root_system(gram, roots_of(gram)); }

RootSystem root_system(const IMat& gram, const std::vector<SVec>& roots) {
    RootSystem rs;
    rs.roots = roots;
    auto g = to_small(gram);
    std::vector<SVec> pos;
    for (const auto& r : roots)
        if (lex_positive(r)) pos.push_back(r);
    std::sort(pos.begin(), pos.end());
    std::set<SVec> pos_set(pos.begin(), pos.end());
    for (const auto& a : pos) {
        bool decomposable = false;
        SVec d(a.size());
        for (const auto& b : pos) {
            if (b == a) continue;
            for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
            if (lex_positive(d) && pos_set.count(d)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) rs.simple.push_back(a);
    }
    std::size_t n = rs.simple.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto p = pair64(rs.simple[i], g, rs.simple[j]);
            if (p == 0) continue;
            if (p != 1) throw Error("simple roots pair to " + std::to_string(p));
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    std::vector<bool> seen(n, false);
    for (std::size_t s0 = 0; s0 < n; ++s0) {
        if (seen[s0]) continue;
        std::vector<std::size_t> comp{s0};
        seen[s0] = true;
        for (std::size_t k = 0; k < comp.size(); ++k)
            for (auto w : adj[comp[k]])
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        int r = static_cast<int>(comp.size());
        auto walk = [&](std::size_t from, std::size_t start) {
            std::vector<std::size_t> path{start};
            std::size_t prev = from, cur = start;
            while (true) {
                std::size_t next = n;
                for (auto w : adj[cur])
                    if (w != prev) next = w;
                if (next == n) break;
                path.push_back(next);
                prev = cur;
                cur = next;
            }
            return path;
        };
        std::size_t branch = n;
        for (auto v : comp) {
            if (adj[v].size() > 3) throw Error("root system graph has a vertex of degree > 3");
            if (adj[v].size() == 3) {
                if (branch != n) throw Error("root system graph has two branch points");
                branch = v;
            }
        }
        std::vector<std::size_t> order;
        AdeComponent type;
        if (branch == n) {
            std::size_t end = comp[0];
            for (auto v : comp)
                if (adj[v].size() <= 1) {
                    end = v;
                    break;
                }
            order = walk(n, end);
            if (r == 1) order = {end};
            type = {'A', r};
        } else {
            std::vector<std::vector<std::size_t>> arms;
            for (auto w : adj[branch]) arms.push_back(walk(branch, w));
            std::stable_sort(arms.begin(), arms.end(),
                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
            std::size_t a0 = arms[0].size(), a1 = arms[1].size(), a2 = arms[2].size();
            if (a0 == 1 && a1 == 1) {
                type = {'D', r};
                order.assign(arms[2].rbegin(), arms[2].rend());
                order.push_back(branch);
                order.push_back(arms[0][0]);
                order.push_back(arms[1][0]);
            } else if (a0 == 1 && a1 == 2 && a2 >= 2 && a2 <= 4) {
                type = {'E', r};
                order = {arms[0][0], arms[1][1], arms[1][0], branch};
                order.insert(order.end(), arms[2].begin(), arms[2].end());
            } else {
                throw Error("root system graph is not of ADE type");
            }
        }
        rs.components.push_back(order);
        rs.component_types.push_back(type);
        rs.type.comps.push_back(type);
    }
    rs.type.normalize();
    return rs;
}

}  // namespace k3fib
