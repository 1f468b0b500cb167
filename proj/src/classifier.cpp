#include "k3fib/classifier.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

namespace k3fib {

std::string KodairaFibre::str() const {
    switch (kind) {
        case Kind::I: return "I" + std::to_string(n);
        case Kind::Istar: return "I" + std::to_string(n) + "*";
        case Kind::II: return "II";
        case Kind::III: return "III";
        case Kind::IV: return "IV";
        case Kind::IIstar: return "II*";
        case Kind::IIIstar: return "III*";
        case Kind::IVstar: return "IV*";
    }
    return "?";
}

KodairaFibre parse_fibre(const std::string& text) {
    static const std::map<std::string, Kind> named = {{"II", Kind::II},      {"III", Kind::III},
                                                      {"IV", Kind::IV},      {"II*", Kind::IIstar},
                                                      {"III*", Kind::IIIstar}, {"IV*", Kind::IVstar}};
    if (auto it = named.find(text); it != named.end()) return {it->second, 0};
    std::smatch m;
    static const std::regex re(R"(I_?(\d+)(\*?))");
    if (std::regex_match(text, m, re)) return {m[2].length() ? Kind::Istar : Kind::I, std::stoi(m[1].str())};
    throw Error("unknown Kodaira fibre '" + text + "'");
}

int euler(const KodairaFibre& f) {
    switch (f.kind) {
        case Kind::I: return f.n;
        case Kind::Istar: return f.n + 6;
        case Kind::II: return 2;
        case Kind::III: return 3;
        case Kind::IV: return 4;
        case Kind::IVstar: return 8;
        case Kind::IIIstar: return 9;
        case Kind::IIstar: return 10;
    }
    return 0;
}

std::optional<AdeComponent> ade_of(const KodairaFibre& f) {
    switch (f.kind) {
        case Kind::I:
            if (f.n >= 2) return AdeComponent{'A', f.n - 1};
            return std::nullopt;
        case Kind::Istar: return AdeComponent{'D', f.n + 4};
        case Kind::II: return std::nullopt;
        case Kind::III: return AdeComponent{'A', 1};
        case Kind::IV: return AdeComponent{'A', 2};
        case Kind::IVstar: return AdeComponent{'E', 6};
        case Kind::IIIstar: return AdeComponent{'E', 7};
        case Kind::IIstar: return AdeComponent{'E', 8};
    }
    return std::nullopt;
}

int component_count(const KodairaFibre& f) {
    if (f.kind == Kind::I && f.n <= 1) return 1;
    auto a = ade_of(f);
    return a ? a->rank + 1 : 1;
}

namespace {

constexpr int kInf = 1 << 20;
int fin(int v) { return v < 0 ? kInf : v; }
int unfin(int v) { return v >= kInf / 2 ? -1 : v; }

}  // namespace

KodairaFibre kodaira_from_valuations(const Valuations& v) {
    int a = fin(v.c4), b = fin(v.c6), d = v.disc;
    if (d < 0) throw Error("discriminant vanishes identically");
    if (a >= 4 && b >= 6 && d >= 12) throw Error("valuations are not minimal");
    if (d == 0) return {Kind::I, 0};
    if (a == 0) return {Kind::I, d};
    if (d > 6 && a == 2 && b == 3) return {Kind::Istar, d - 6};
    switch (d) {
        case 2: return {Kind::II, 0};
        case 3: return {Kind::III, 0};
        case 4: return {Kind::IV, 0};
        case 8: return {Kind::IVstar, 0};
        case 9: return {Kind::IIIstar, 0};
        case 10: return {Kind::IIstar, 0};
        default: break;
    }
    if (d == 6 && a >= 2 && b >= 3) return {Kind::Istar, 0};
    throw Error("inconsistent valuations (" + std::to_string(v.c4) + "," + std::to_string(v.c6) + "," +
                std::to_string(d) + ")");
}

Valuations representative_valuations(const KodairaFibre& f) {
    switch (f.kind) {
        case Kind::I: return {0, 0, f.n};
        case Kind::Istar: return {2, 3, f.n + 6};
        case Kind::II: return {1, 1, 2};
        case Kind::III: return {1, 2, 3};
        case Kind::IV: return {2, 2, 4};
        case Kind::IVstar: return {3, 4, 8};
        case Kind::IIIstar: return {3, 5, 9};
        case Kind::IIstar: return {4, 5, 10};
    }
    return {};
}

Valuations scale_and_minimalize(const Valuations& v, int e) {
    int a = fin(v.c4), b = fin(v.c6), d = v.disc * e;
    a = a >= kInf ? kInf : a * e;
    b = b >= kInf ? kInf : b * e;
    while (a >= 4 && b >= 6 && d >= 12) {
        a -= 4;
        b -= 6;
        d -= 12;
    }
    return {unfin(a), unfin(b), d};
}

KodairaFibre base_change_fibre(const KodairaFibre& f, bool totally_ramified) {
    if (!totally_ramified) return f;
    return kodaira_from_valuations(scale_and_minimalize(representative_valuations(f), 3));
}

std::vector<FibreConfiguration> kodaira_assignments(const AdeType& t) {
    std::vector<std::vector<KodairaFibre>> options;
    for (const auto& c : t.comps) {
        std::vector<KodairaFibre> o;
        switch (c.family) {
            case 'A':
                o.push_back({Kind::I, c.rank + 1});
                if (c.rank == 1) o.push_back({Kind::III, 0});
                if (c.rank == 2) o.push_back({Kind::IV, 0});
                break;
            case 'D':
                if (c.rank < 4) throw Error("no Kodaira fibre of type " + c.str());
                o.push_back({Kind::Istar, c.rank - 4});
                break;
            case 'E':
                if (c.rank == 6) o.push_back({Kind::IVstar, 0});
                if (c.rank == 7) o.push_back({Kind::IIIstar, 0});
                if (c.rank == 8) o.push_back({Kind::IIstar, 0});
                if (o.empty()) throw Error("no Kodaira fibre of type " + c.str());
                break;
        }
        options.push_back(o);
    }
    std::set<FibreConfiguration> out;
    FibreConfiguration cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == options.size()) {
            FibreConfiguration s = cur;
            std::sort(s.begin(), s.end());
            out.insert(s);
            return;
        }
        for (const auto& f : options[i]) {
            cur.push_back(f);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return {out.begin(), out.end()};
}

int base_change_euler(const KodairaFibre& fa, const KodairaFibre& fb) {
    return euler(base_change_fibre(fa, true)) + euler(base_change_fibre(fb, true)) +
           3 * (12 - euler(fa) - euler(fb));
}

bool is_k3_base_change(const KodairaFibre& fa, const KodairaFibre& fb) {
    if (euler(fa) + euler(fb) > 12) return false;
    return base_change_euler(fa, fb) == 24;
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Type1Only: return "Type1Only";
        case Verdict::Type2Only: return "Type2Only";
        case Verdict::Both: return "Both";
        case Verdict::Neither: return "Neither";
    }
    return "?";
}

namespace {

bool j_zero(const KodairaFibre& f) {
    return f.kind == Kind::Istar ? f.n == 0
                                 : f.kind == Kind::II || f.kind == Kind::IV || f.kind == Kind::IIstar ||
                                       f.kind == Kind::IVstar;
}

// fibres a rational elliptic surface can have away from the branch points
bool orbit_allowed(const KodairaFibre& f) {
    switch (f.kind) {
        case Kind::I: return f.n <= 6;
        case Kind::Istar: return f.n <= 1;
        case Kind::II:
        case Kind::III:
        case Kind::IV:
        case Kind::IVstar: return true;
        default: return false;
    }
}

// downstairs fibres over a branch point: rational surfaces have at most nine components per fibre
std::vector<KodairaFibre> branch_candidates() {
    std::vector<KodairaFibre> out = {{Kind::II, 0}, {Kind::III, 0}, {Kind::IV, 0}};
    for (int n = 0; n <= 9; ++n) out.push_back({Kind::I, n});
    for (int n = 0; n <= 4; ++n) out.push_back({Kind::Istar, n});
    return out;
}

int reducible_rank(const KodairaFibre& f) { return component_count(f) - 1; }

std::optional<Type2Split> find_type2(const FibreConfiguration& conf, int mw_rank) {
    for (const auto& f : conf)
        if (f.kind == Kind::IIstar) return std::nullopt;
    // choices for the two fixed fibres: a reducible fibre of the configuration or an irreducible I0
    std::set<KodairaFibre> pool(conf.begin(), conf.end());
    pool.insert({Kind::I, 0});
    for (const auto& fa : pool)
        for (const auto& fb : pool) {
            FibreConfiguration rest = conf;
            bool ok = true;
            for (const auto& x : {fa, fb}) {
                if (x == KodairaFibre{Kind::I, 0}) continue;
                auto it = std::find(rest.begin(), rest.end(), x);
                if (it == rest.end()) {
                    ok = false;
                    break;
                }
                rest.erase(it);
            }
            if (!ok) continue;
            std::map<KodairaFibre, int> counts;
            for (const auto& x : rest) counts[x]++;
            std::vector<KodairaFibre> reps;
            for (const auto& [x, c] : counts) {
                if (c % 3 != 0 || !orbit_allowed(x)) ok = false;
                for (int i = 0; i < c / 3; ++i) reps.push_back(x);
            }
            if (!ok) continue;
            for (const auto& da : branch_candidates())
                for (const auto& db : branch_candidates()) {
                    bool a_star = da.kind == Kind::IV || da.kind == Kind::Istar;
                    bool b_plain = db.kind == Kind::I || db.kind == Kind::II || db.kind == Kind::III;
                    if (!a_star || !b_plain) continue;
                    if (base_change_fibre(da, true) != fa || base_change_fibre(db, true) != fb) continue;
                    if (!is_k3_base_change(da, db)) continue;
                    int e = euler(da) + euler(db), trivial = reducible_rank(da) + reducible_rank(db);
                    for (const auto& r : reps) {
                        e += euler(r);
                        trivial += reducible_rank(r);
                    }
                    if (e > 12 || trivial > 8) continue;
                    int rational_rank = 8 - trivial;
                    // sections of the rational surface pull back injectively
                    if (rational_rank > mw_rank) continue;
                    return Type2Split{fa, fb, da, db, reps, rational_rank};
                }
        }
    return std::nullopt;
}

}  // namespace

Classification classify(const AdeType& t, int mw_rank, const std::vector<Int>& mw_torsion) {
    (void)mw_torsion;
    Classification c;
    auto confs = kodaira_assignments(t);
    if (mw_rank > 0) c.reasons.push_back("type 1 needs Mordell-Weil rank 0");
    for (const auto& conf : confs) {
        if (mw_rank > 0) break;
        int e = 0;
        bool ok = true;
        for (const auto& f : conf) {
            ok = ok && j_zero(f);
            e += euler(f);
        }
        // the remaining singular fibres are of type II
        if (ok && e <= 24 && (24 - e) % 2 == 0) {
            c.type1 = conf;
            break;
        }
    }
    if (mw_rank == 0 && !c.type1) c.reasons.push_back("every assignment has a fibre with J != 0");
    bool has_ii_star = false;
    for (const auto& comp : t.comps) has_ii_star = has_ii_star || (comp.family == 'E' && comp.rank == 8);
    if (has_ii_star) c.reasons.push_back("a fibre of type II* excludes type 2");
    for (const auto& conf : confs) {
        if (auto s = find_type2(conf, mw_rank)) {
            c.type2 = s;
            break;
        }
    }
    if (!c.type2 && !has_ii_star)
        c.reasons.push_back("no split into two fixed fibres and orbits of three over a rational surface");
    c.verdict = c.type1 ? (c.type2 ? Verdict::Both : Verdict::Type1Only)
                        : (c.type2 ? Verdict::Type2Only : Verdict::Neither);
    return c;
}

}  // namespace k3fib
