#include "k3fib/x3.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace k3fib {

namespace {

std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

class DivisorParser {
public:
    explicit DivisorParser(std::string s) : s_(std::move(s)) {}
    DivisorExpr parse() {
        DivisorExpr d = sum();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return d;
    }

private:
    std::string s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw Error("cannot parse divisor '" + s_ + "' at " + std::to_string(i_) + ": " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    DivisorExpr sum() {
        DivisorExpr d;
        bool first = true;
        for (;;) {
            skip();
            long sign = 1;
            if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
                sign = s_[i_] == '-' ? -1 : 1;
                ++i_;
            } else if (!first) {
                return d;
            }
            d = d + scaled(term(), sign);
            first = false;
        }
    }
    DivisorExpr term() {
        skip();
        long coeff = 1;
        std::size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ > st) coeff = std::stol(s_.substr(st, i_ - st));
        skip();
        if (i_ < s_.size() && s_[i_] == '*') {
            ++i_;
            skip();
        }
        if (i_ < s_.size() && s_[i_] == '(') {
            ++i_;
            DivisorExpr inner = sum();
            skip();
            if (i_ >= s_.size() || s_[i_] != ')') fail("')' expected");
            ++i_;
            return scaled(inner, coeff);
        }
        if (i_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[i_]))) fail("curve name expected");
        st = i_;
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '~'))
            ++i_;
        return {{s_.substr(st, i_ - st), coeff}};
    }
};

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return nlohmann::json::parse(in);
}

std::string data_path(const std::string& rel) { return std::string(K3FIB_DATA_DIR) + "/data/x3/" + rel; }

bool is_exceptional(const CurveConfig& cfg, const std::string& n, const BlowupPoint** out = nullptr) {
    for (const auto& p : cfg.blowups)
        if (p.name == n) {
            if (out) *out = &p;
            return true;
        }
    return false;
}

bool on(const BlowupPoint& p, const std::string& c) {
    return std::find(p.curves.begin(), p.curves.end(), c) != p.curves.end();
}

void require_curve(const CurveConfig& cfg, const std::string& c) {
    if (!cfg.self.count(c) && !is_exceptional(cfg, c)) throw Error("unknown curve '" + c + "'");
}

long pair_blowup(const CurveConfig& cfg, const std::string& a, const std::string& b) {
    const BlowupPoint *pa = nullptr, *pb = nullptr;
    bool ea = is_exceptional(cfg, a, &pa), eb = is_exceptional(cfg, b, &pb);
    if (ea && eb) return a == b ? -1 : 0;
    if (ea || eb) {
        const std::string& curve = ea ? b : a;
        require_curve(cfg, curve);
        return on(ea ? *pa : *pb, curve) ? 1 : 0;
    }
    long v = cfg.pair(a, b);
    for (const auto& p : cfg.blowups)
        if (on(p, a) && on(p, b)) --v;
    return v;
}

}  // namespace

DivisorExpr parse_divisor(const std::string& text) { return DivisorParser(text).parse(); }

std::string divisor_str(const DivisorExpr& d) {
    std::string out;
    for (const auto& [n, c] : d) {
        if (c == 0) continue;
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        long a = c < 0 ? -c : c;
        if (a != 1) out += std::to_string(a);
        out += n;
    }
    return out.empty() ? "0" : out;
}

DivisorExpr operator+(DivisorExpr a, const DivisorExpr& b) {
    for (const auto& [n, c] : b) {
        long s = (a.count(n) ? a[n] : 0) + c;
        if (s == 0) a.erase(n);
        else a[n] = s;
    }
    return a;
}

DivisorExpr scaled(DivisorExpr d, long k) {
    if (k == 0) return {};
    for (auto& [n, c] : d) c *= k;
    return d;
}

DivisorExpr relabel(const DivisorExpr& d, const std::map<std::string, std::string>& to) {
    DivisorExpr out;
    for (const auto& [n, c] : d) {
        auto it = to.find(n);
        out = out + DivisorExpr{{it == to.end() ? n : it->second, c}};
    }
    return out;
}

void CurveConfig::declare(const std::string& c, long self_intersection) { self[c] = self_intersection; }

void CurveConfig::set_meet(const std::string& a, const std::string& b, long value) {
    if (a == b) throw Error("use declare for self-intersections");
    if (!self.count(a) || !self.count(b)) throw Error("undeclared curve in " + a + "." + b);
    meets[key(a, b)] = value;
}

long CurveConfig::pair(const std::string& a, const std::string& b) const {
    auto ia = self.find(a), ib = self.find(b);
    if (ia == self.end()) throw Error("unknown curve '" + a + "'");
    if (ib == self.end()) throw Error("unknown curve '" + b + "'");
    if (a == b) return ia->second;
    auto it = meets.find(key(a, b));
    return it == meets.end() ? 0 : it->second;
}

void CurveConfig::validate() const {
    for (const auto& c : fixed)
        if (!self.count(c)) throw Error("fixed curve '" + c + "' not declared");
    for (const auto& p : blowups) {
        if (self.count(p.name)) throw Error("exceptional curve name clashes with '" + p.name + "'");
        for (const auto& c : p.curves)
            if (!self.count(c)) throw Error("blowup point on undeclared curve '" + c + "'");
    }
    for (const auto& f : fibre_classes)
        if (intersect(*this, f, f) != 0) throw Error("declared fibre class does not square to 0");
}

long intersect(const CurveConfig& cfg, const DivisorExpr& a, const DivisorExpr& b) {
    long s = 0;
    for (const auto& [na, ca] : a)
        for (const auto& [nb, cb] : b) s += ca * cb * cfg.pair(na, nb);
    return s;
}

CurveConfig load_curve_config(const std::string& path) {
    nlohmann::json j = read_json(path);
    CurveConfig cfg;
    for (const auto& [n, v] : j.at("curves").items()) cfg.declare(n, v.get<long>());
    for (const auto& e : j.at("intersections"))
        cfg.set_meet(e.at(0).get<std::string>(), e.at(1).get<std::string>(), e.at(2).get<long>());
    for (const auto& c : j.at("fixed")) cfg.fixed.insert(c.get<std::string>());
    for (const auto& p : j.at("blowup_points"))
        cfg.blowups.push_back({p.at("name").get<std::string>(), p.at("on").get<std::vector<std::string>>()});
    for (const auto& f : j.at("fibre_classes")) cfg.fibre_classes.push_back(parse_divisor(f.get<std::string>()));
    cfg.validate();
    return cfg;
}

CurveConfig x3_config() { return load_curve_config(data_path("config.json")); }

const std::vector<X3Fibration>& x3_fibrations() {
    static const std::vector<X3Fibration> rows = [] {
        nlohmann::json j = read_json(data_path("fibrations.json"));
        std::vector<X3Fibration> out;
        for (const auto& [k, v] : j.items())
            out.push_back({std::stoi(k), parse_divisor(v.at("L").get<std::string>()),
                           parse_divisor(v.at("M").get<std::string>()), v.at("root").get<std::string>()});
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
        return out;
    }();
    return rows;
}

const QuotientData& x3_quotient() {
    static const QuotientData q = [] {
        nlohmann::json j = read_json(data_path("quotient.json"));
        QuotientData d;
        for (const auto& [n, v] : j.at("images").items())
            d.image[n] = {v.at(0).get<std::string>(), v.at(1).get<long>()};
        d.canonical = parse_divisor(j.at("canonical").get<std::string>());
        for (const auto& [k, v] : j.at("expected").items()) {
            d.expected_pushforward[std::stoi(k)] = parse_divisor(v.at("pushforward").get<std::string>());
            d.expected_k[std::stoi(k)] = v.at("k").get<long>();
        }
        for (const auto& [n, v] : j.at("self_intersections").items()) d.expected_self[n] = v.get<long>();
        return d;
    }();
    return q;
}

DivisorExpr pullback(const CurveConfig& cfg, const DivisorExpr& d) {
    DivisorExpr out = d;
    for (const auto& p : cfg.blowups) {
        long m = 0;
        for (const auto& c : p.curves) {
            auto it = d.find(c);
            if (it != d.end()) m += it->second;
        }
        if (m != 0) out = out + DivisorExpr{{p.name, m}};
    }
    for (const auto& [n, c] : d)
        if (!cfg.self.count(n)) throw Error("unknown curve '" + n + "'");
    return out;
}

long intersect_blowup(const CurveConfig& cfg, const DivisorExpr& a, const DivisorExpr& b) {
    long s = 0;
    for (const auto& [na, ca] : a)
        for (const auto& [nb, cb] : b) s += ca * cb * pair_blowup(cfg, na, nb);
    return s;
}

std::set<std::string> blowup_fixed(const CurveConfig& cfg) {
    std::set<std::string> f = cfg.fixed;
    for (const auto& p : cfg.blowups) f.insert(p.name);
    return f;
}

DivisorExpr pushforward_table(const CurveConfig& cfg, const QuotientData& q, const DivisorExpr& l) {
    DivisorExpr out;
    for (const auto& [n, c] : pullback(cfg, l)) {
        auto it = q.image.find(n);
        if (it == q.image.end()) throw Error("no image recorded for '" + n + "'");
        out = out + DivisorExpr{{it->second.first, c * it->second.second}};
    }
    return out;
}

long intersect_quotient(const CurveConfig& cfg, const QuotientData& q, const DivisorExpr& a, const DivisorExpr& b) {
    std::map<std::string, std::string> pre;
    for (const auto& [up, img] : q.image) pre[img.first] = up;
    std::set<std::string> fixed = blowup_fixed(cfg);
    auto upstairs = [&](const std::string& n) {
        auto it = pre.find(n);
        if (it == pre.end()) throw Error("unknown curve '" + n + "' in the quotient");
        return it->second;
    };
    long s = 0;
    for (const auto& [na, ca] : a)
        for (const auto& [nb, cb] : b) {
            std::string ua = upstairs(na), ub = upstairs(nb);
            // pullback of the image of a fixed curve is 3 times the curve, of a preserved curve the curve itself;
            // pullbacks multiply intersections by the degree 3
            long v = pair_blowup(cfg, ua, ub) * (fixed.count(ua) ? 3 : 1) * (fixed.count(ub) ? 3 : 1);
            if (v % 3 != 0) throw Error("non-integral intersection " + na + "." + nb + " in the quotient");
            s += ca * cb * (v / 3);
        }
    return s;
}

KIntersection k_intersection(const CurveConfig& cfg, const QuotientData& q, const DivisorExpr& l) {
    if (intersect(cfg, l, l) != 0) throw Error("not a fibre class: L^2 = " + std::to_string(intersect(cfg, l, l)));
    KIntersection r;
    // projection formula: pi^* K = K_blowup - 2 Fix, K_blowup = sum of exceptional curves
    DivisorExpr pulled_k;
    for (const auto& p : cfg.blowups) pulled_k = pulled_k + DivisorExpr{{p.name, 1}};
    for (const auto& c : blowup_fixed(cfg)) pulled_k = pulled_k + DivisorExpr{{c, -2}};
    r.projection = intersect_blowup(cfg, pullback(cfg, l), pulled_k);
    r.pushforward = pushforward_table(cfg, q, l);
    r.dictionary = intersect_quotient(cfg, q, r.pushforward, q.canonical);
    if (r.projection != r.dictionary)
        throw Error("K-intersection routes disagree: " + std::to_string(r.projection) + " vs " +
                    std::to_string(r.dictionary));
    return r;
}

std::string x3_type_str(X3Type t) { return t == X3Type::Type1 ? "Type1" : "Type2"; }

X3Type classify_x3(int i) {
    const auto& rows = x3_fibrations();
    if (i < 1 || i > static_cast<int>(rows.size())) throw Error("fibration index out of range");
    long k = k_intersection(x3_config(), x3_quotient(), rows[static_cast<std::size_t>(i - 1)].L).dictionary;
    // conic bundle class: 3 L~ with L~.K = -2; splitting genus 1 pencil: L~.K = 0
    if (k == -6) return X3Type::Type1;
    if (k == 0) return X3Type::Type2;
    throw Error("K-intersection " + std::to_string(k) + " is neither -6 nor 0");
}

CurveConfig three_iv_star_config(long sigma0_dot_sigma1) {
    CurveConfig cfg;
    cfg.declare("sigma0", -2);
    cfg.declare("Sigma1", -2);
    for (int f = 1; f <= 3; ++f) {
        auto th = [&](int i) { return "Theta" + std::to_string(i) + "_a" + std::to_string(f); };
        for (int i = 0; i <= 6; ++i) cfg.declare(th(i), -2);
        for (int arm = 0; arm < 3; ++arm) {
            cfg.set_meet(th(6), th(arm + 3), 1);
            cfg.set_meet(th(arm + 3), th(arm), 1);
        }
        cfg.set_meet("sigma0", th(0), 1);
        cfg.set_meet("Sigma1", th(1), 1);
        DivisorExpr fibre = parse_divisor(th(0) + " + " + th(1) + " + " + th(2) + " + 2" + th(3) + " + 2" + th(4) +
                                          " + 2" + th(5) + " + 3" + th(6));
        cfg.fibre_classes.push_back(fibre);
    }
    if (sigma0_dot_sigma1 != 0) cfg.set_meet("sigma0", "Sigma1", sigma0_dot_sigma1);
    cfg.validate();
    return cfg;
}

Sigma5Check sigma5_type3_check(const CurveConfig& cfg5) {
    auto l_at = [](int f) {
        std::string a = "_a" + std::to_string(f);
        return parse_divisor("sigma0 + 2Theta0" + a + " + 3Theta3" + a + " + 4Theta6" + a + " + 2Theta5" + a +
                             " + 3Theta4" + a + " + 2Theta1" + a + " + Sigma1");
    };
    // sigma5 permutes the three IV* fibres and fixes both sections
    std::map<std::string, std::string> move;
    for (int i = 0; i <= 6; ++i)
        for (int f = 1; f <= 3; ++f)
            move["Theta" + std::to_string(i) + "_a" + std::to_string(f)] =
                "Theta" + std::to_string(i) + "_a" + std::to_string(f % 3 + 1);
    DivisorExpr l = l_at(1), sl = relabel(l, move), m = parse_divisor("Theta0_a2");
    if (sl != l_at(2)) throw Error("sigma5 image of L is not the expected divisor");
    Sigma5Check r;
    r.l_sq = intersect(cfg5, l, l);
    r.m_sq = intersect(cfg5, m, m);
    r.l_m = intersect(cfg5, l, m);
    r.l_sigma_l = intersect(cfg5, l, sl);
    r.type3 = r.l_sq == 0 && r.l_sigma_l != 0;
    return r;
}

}  // namespace k3fib
