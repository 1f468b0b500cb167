#include "k3fib/nishiyama.hpp"

#include <algorithm>
#include <boost/multiprecision/integer.hpp>
#include <map>

namespace k3fib {

const std::vector<SurfaceData>& surfaces() {
    static const std::vector<SurfaceData> s = {
        {1, "U+A2^5", "U+U(3)+A2^3", 5, 2, 0, "E6+A2^4"},
        {2, "U+E6+A2^2", "U+U(3)+E6", 5, 3, 1, "E6^2+A2"},
        {3, "U+E8+A2", "U^2+E6", 5, 4, 2, "E8+E6"},
        {4, "U+E6+A2^3", "U+U(3)+A2^2", 6, 3, 0, "E6+A2^3"},
        {5, "U+E6^2", "U^2+A2^2", 6, 4, 1, "E8+A2^2"},
        {6, "U+E6^2+A2", "U+U(3)+A2", 7, 4, 0, "E6+A2^2"},
        {7, "U+E6+E8", "U^2+A2", 7, 5, 1, "E8+A2"},
        {8, "U+E6+E8+A2", "U+U(3)", 8, 5, 0, "E6+A2"},
        {9, "U+E8^2", "U^2", 8, 6, 1, "E8"},
        {10, "U+E8^2+A2", "A2(-1)", 9, 6, 0, "E6"},
    };
    return s;
}

const SurfaceData& surface(int k) {
    if (k < 1 || k > static_cast<int>(surfaces().size())) throw Error("surface index must be 1..10");
    return surfaces()[static_cast<std::size_t>(k - 1)];
}

std::vector<SummandCounts> t0_candidates(const IntLattice& tx) {
    int r = static_cast<int>(tx.rank()) + 4;
    DiscriminantLattice target = discriminant_lattice(tx);
    std::vector<SummandCounts> out;
    for (int a = 0; 8 * a <= r; ++a)
        for (int b = 0; 8 * a + 6 * b <= r; ++b) {
            int rest = r - 8 * a - 6 * b;
            if (rest % 2 != 0) continue;
            SummandCounts c{a, b, rest / 2};
            IntLattice t0 = parse_lattice_spec(c.str());
            if (discriminant_lattice(t0).order() != target.order()) continue;
            if (isomorphic(discriminant_lattice(t0), target)) out.push_back(c);
        }
    return out;
}

T0Choice select_T0(const IntLattice& tx) {
    T0Choice out;
    out.candidates = t0_candidates(tx);
    for (const auto& s : surfaces()) {
        if (s.tx_lattice().gram != tx.gram) continue;
        SummandCounts c = counts_of(parse_ade(s.t0));
        for (const auto& x : out.candidates)
            if (x.str() == c.str()) {
                out.t0 = c;
                return out;
            }
        throw Error("tabulated T0 " + s.t0 + " fails the rank or discriminant form check");
    }
    if (out.candidates.empty()) throw Error("no sum of E8, E6, A2 matches the transcendental lattice");
    auto key = [](const SummandCounts& c) { return std::make_tuple(c.e8 + c.e6 + c.a2, -c.e8, -c.e6); };
    out.t0 = *std::min_element(out.candidates.begin(), out.candidates.end(),
                               [&](const auto& x, const auto& y) { return key(x) < key(y); });
    return out;
}

Int mw_torsion_rank0(const Int& w_det, const Int& m_det) {
    Int w = w_det < 0 ? Int(-w_det) : w_det, m = m_det < 0 ? Int(-m_det) : m_det;
    if (w == 0 || m % w != 0) throw Error("det M is not a multiple of det W");
    Int q = m / w;
    Int s = boost::multiprecision::sqrt(q);
    if (s * s != q) throw Error("det M / det W = " + to_string(q) + " is not a square");
    return s;
}

bool in_span(const IMat& rows, const QVec& x) {
    if (rows.empty()) {
        for (const auto& v : x)
            if (v != 0) return false;
        return true;
    }
    // solve c * rows = x through the normal equations over Q
    QMat r = to_q(rows);
    QMat rt(r[0].size(), QVec(r.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[0].size(); ++j) rt[j][i] = r[i][j];
    QMat g = mul(r, rt);
    QVec rhs = row_times(x, rt);
    QVec c = row_times(rhs, inverse(g));
    if (row_times(c, r) != x) return false;
    return is_integral(c);
}

std::string FibrationClass::m_shape() const {
    AdeType t = ade;
    for (int i = 0; i < minus6; ++i) t.rank_one.push_back(-6);
    t.normalize();
    return t.str();
}

std::string FibrationClass::torsion_str() const {
    if (mw_torsion.empty()) return "0";
    std::string s;
    for (const auto& d : mw_torsion) s += (s.empty() ? "Z/" : "+Z/") + to_string(d);
    return s;
}

std::string FibrationClass::mw_str() const {
    std::string s;
    if (mw_rank == 1) s = "Z";
    if (mw_rank > 1) s = "Z^" + std::to_string(mw_rank);
    if (!mw_torsion.empty()) s += (s.empty() ? "" : "+") + torsion_str();
    return s.empty() ? "0" : s;
}

namespace {

std::string row_key(const std::string& niemeier, std::vector<std::string> dist) {
    std::sort(dist.begin(), dist.end());
    std::string k = niemeier;
    for (const auto& d : dist) k += "|" + d;
    return k;
}

std::size_t niemeier_rank(const std::string& name) {
    auto all = supported_niemeier();
    return static_cast<std::size_t>(std::find(all.begin(), all.end(), name) - all.begin());
}

}  // namespace

std::vector<FibrationClass> run_surface(int k) { return run_surface(k, select_T0(surface(k).tx_lattice()).t0); }

std::vector<FibrationClass> run_surface(int k, const SummandCounts& t0) {
    surface(k);
    Int t0_det = parse_lattice_spec(t0.str()).det();
    if (t0_det < 0) t0_det = -t0_det;

    std::map<std::string, std::string> ids;
    for (const auto& r : expected_block(k)) ids[row_key(r.niemeier, r.distribution)] = r.row_id;

    std::vector<FibrationClass> out;
    for (const auto& name : supported_niemeier()) {
        NiemeierLattice n = niemeier_by_root_type(name);
        for (auto& e : enumerate_embeddings(t0, n)) {
            FibrationClass f;
            f.surface = k;
            f.niemeier = n.name;
            f.distribution = e.distribution;
            std::sort(f.distribution.begin(), f.distribution.end());
            f.m_rank = 0;
            f.m_det = 1;
            std::size_t pi = 0;
            for (std::size_t c = 0; c < n.components.size(); ++c) {
                if (e.placement[c].empty()) {
                    f.m_rank += static_cast<std::size_t>(n.components[c].rank);
                    f.m_det *= det(ade_gram(n.components[c].family, n.components[c].rank));
                } else {
                    f.m_rank += e.parts[pi].lattice.rank();
                    f.m_det *= e.parts[pi].lattice.det();
                    ++pi;
                }
            }
            if (f.m_det < 0) f.m_det = -f.m_det;
            f.minus6 = e.minus6;
            f.ade = e.m.root_type;
            f.mw_rank = static_cast<int>(e.m.lattice.rank()) - f.ade.rank();
            f.w_root = e.m.root_basis;
            if (!f.w_root.empty()) {
                Closure cl = primitive_closure(to_niemeier_coords(n, f.w_root));
                f.mw_torsion = cl.quotient;
                if (!cl.quotient.empty()) {
                    IMat inner = mul(mul(f.w_root, n.root_part.gram), transpose(f.w_root));
                    IMat outer = mul(mul(cl.basis, n.gram_n), transpose(cl.basis));
                    f.admissible = norm_vectors(inner, -2).size() == norm_vectors(outer, -2).size();
                }
            }
            if (f.mw_rank == 0) {
                Int order = 1;
                for (const auto& d : f.mw_torsion) order *= d;
                if (order != mw_torsion_rank0(t0_det, f.m_det))
                    throw Error("torsion order disagrees with the determinant ratio in " + n.name);
            }
            auto it = ids.find(row_key(f.niemeier, f.distribution));
            f.row_id = it == ids.end() ? "" : it->second;
            f.embedding = std::move(e);
            out.push_back(std::move(f));
        }
    }
    // published numbering first, then unmatched rows by lattice and distribution
    auto id_key = [](const std::string& id) {
        if (id.empty()) return std::make_pair(1000, 0);
        auto dot = id.find('.');
        return std::make_pair(0, std::stoi(id.substr(dot + 1)));
    };
    std::stable_sort(out.begin(), out.end(), [&](const FibrationClass& a, const FibrationClass& b) {
        auto ka = id_key(a.row_id), kb = id_key(b.row_id);
        if (ka != kb) return ka < kb;
        if (niemeier_rank(a.niemeier) != niemeier_rank(b.niemeier))
            return niemeier_rank(a.niemeier) < niemeier_rank(b.niemeier);
        return a.distribution < b.distribution;
    });
    int extra = 0;
    for (auto& f : out)
        if (f.row_id.empty()) f.row_id = std::to_string(k) + ".x" + std::to_string(++extra);
    return out;
}

std::optional<QVec> torsion_witness(const FibrationClass& f) {
    NiemeierLattice n = niemeier_by_root_type(f.niemeier);
    if (f.w_root.empty()) return std::nullopt;
    Closure cl = primitive_closure(to_niemeier_coords(n, f.w_root));
    for (const auto& row : cl.basis) {
        QVec x = row_times(to_q(row), n.basis);
        if (!in_span(f.w_root, x)) return x;
    }
    return std::nullopt;
}

namespace {

ExpectedRow row(const char* id, const char* n, std::vector<std::string> d, int m6, const char* ade, int rank,
                std::vector<int> tors = {}) {
    std::sort(d.begin(), d.end());
    return {id, n, d, m6, ade, rank, tors};
}

}  // namespace

const std::vector<ExpectedRow>& expected_rows() {
    static const std::vector<ExpectedRow> rows = {
        row("1.1", "E8^3", {"E6<E8", "A2^2<E8", "A2^2<E8"}, 0, "A2^5", 0),
        row("1.2", "E8+D16", {"E6<E8", "A2^4<D16"}, 0, "D4+A2", 4),
        row("1.3", "E7^2+D10", {"E6<E7", "A2<E7", "A2^3<D10"}, 1, "A5", 5),
        row("1.4", "E7^2+D10", {"E6<E7", "A2^2<E7", "A2^2<D10"}, 2, "D4+A2", 4),
        row("1.5", "E7+A17", {"E6<E7", "A2^4<A17"}, 1, "A5", 5),
        row("1.6", "E6^4", {"E6<E6", "A2^2<E6", "A2^2<E6"}, 0, "E6+A2^2", 0),
        row("1.7", "E6^4", {"E6<E6", "A2^2<E6", "A2<E6", "A2<E6"}, 0, "A2^5", 0),
        row("1.8", "E6+D7+A11", {"E6<E6", "A2^4<A11"}, 0, "D7", 3),
        row("1.9", "E6+D7+A11", {"E6<E6", "A2<D7", "A2^3<A11"}, 0, "D4+A2", 4),
        row("1.10", "E6+D7+A11", {"E6<E6", "A2^2<D7", "A2^2<A11"}, 0, "A5", 5),

        row("2.1", "E8^3", {"E6<E8", "E6<E8", "A2<E8"}, 0, "E6+A2^2", 0),
        row("2.2", "E7^2+D10", {"E6<E7", "E6<E7", "A2<D10"}, 2, "D7", 3),
        row("2.3", "E6^4", {"E6<E6", "E6<E6", "A2<E6"}, 0, "E6+A2^2", 0),

        row("3.1", "E8^3", {"E8<E8", "E6<E8"}, 0, "E8+A2", 0),

        row("4.1", "E8^3", {"E6<E8", "A2^2<E8", "A2<E8"}, 0, "E6+A2^3", 0),
        row("4.2", "E8+D16", {"E6<E8", "A2^3<D16"}, 0, "D7+A2", 3),
        row("4.3", "E7^2+D10", {"E6<E7", "A2^3<D10"}, 1, "E7", 5),
        row("4.4", "E7^2+D10", {"E6<E7", "A2<E7", "A2^2<D10"}, 1, "D4+A5", 3),
        row("4.5", "E7^2+D10", {"E6<E7", "A2^2<E7", "A2<D10"}, 2, "D7+A2", 3),
        row("4.6", "E7+A17", {"E6<E7", "A2^3<A17"}, 1, "A8", 4),
        row("4.7", "E6^4", {"E6<E6", "A2^2<E6", "A2<E6"}, 0, "E6+A2^3", 0),
        row("4.8", "E6^4", {"E6<E6", "A2<E6", "A2<E6", "A2<E6"}, 0, "A2^6", 0, {3}),
        row("4.9", "E6+D7+A11", {"E6<E6", "A2^3<A11"}, 0, "D7+A2", 3),
        row("4.10", "E6+D7+A11", {"E6<E6", "A2<D7", "A2^2<A11"}, 0, "D4+A5", 3),
        row("4.11", "E6+D7+A11", {"E6<E6", "A2^2<D7", "A2<A11"}, 0, "A8", 4),

        row("5.1", "E8^3", {"E8<E8", "A2^2<E8"}, 0, "E8+A2^2", 0),
        row("5.2", "E8^3", {"E8<E8", "A2<E8", "A2<E8"}, 0, "E6^2", 0),
        row("5.3", "E8+D16", {"E8<E8", "A2^2<D16"}, 0, "D10", 2),

        row("6.1", "E8^3", {"E6<E8", "A2^2<E8"}, 0, "E8+A2^3", 0),
        row("6.2", "E8^3", {"E6<E8", "A2<E8", "A2<E8"}, 0, "E6^2+A2", 0),
        row("6.3", "E8+D16", {"E6<E8", "A2^2<D16"}, 0, "D10+A2", 2),
        row("6.4", "E7^2+D10", {"E6<E7", "A2^2<E7"}, 2, "D10+A2", 2),
        row("6.5", "E7^2+D10", {"E6<E7", "A2<E7", "A2<D10"}, 1, "D7+A5", 2),
        row("6.6", "E7^2+D10", {"E6<E7", "A2^2<D10"}, 1, "E7+D4", 3),
        row("6.7", "E7+A17", {"E6<E7", "A2^2<A17"}, 1, "A11", 3),
        row("6.8", "E6^4", {"E6<E6", "A2^2<E6"}, 0, "E6^2+A2", 0),
        row("6.9", "E6^4", {"E6<E6", "A2<E6", "A2<E6"}, 0, "E6+A2^4", 0, {3}),
        row("6.10", "E6+D7+A11", {"E6<E6", "A2^2<D7"}, 0, "A11", 3),
        row("6.11", "E6+D7+A11", {"E6<E6", "A2<D7", "A2<A11"}, 0, "D4+A8", 2),
        row("6.12", "E6+D7+A11", {"E6<E6", "A2^2<A11"}, 0, "D7+A5", 2),

        row("7.1", "E8^3", {"E8<E8", "A2<E8"}, 0, "E8+E6", 0),
        row("7.2", "E8+D16", {"E8<E8", "A2<D16"}, 0, "D13", 1),

        row("8.1", "E8^3", {"E6<E8", "A2<E8"}, 0, "E8+E6+A2", 0),
        row("8.2", "E8+D16", {"E6<E8", "A2<D16"}, 0, "D13+A2", 1),
        row("8.3", "E7^2+D10", {"E6<E7", "A2<E7"}, 1, "D10+A5", 1, {2}),
        row("8.4", "E7^2+D10", {"E6<E7", "A2<D10"}, 1, "E7+D7", 2),
        row("8.5", "E7+A17", {"E6<E7", "A2<A17"}, 1, "A14", 2),
        row("8.6", "E6^4", {"E6<E6", "A2<E6"}, 0, "E6^2+A2^2", 0, {3}),
        row("8.7", "E6+D7+A11", {"E6<E6", "A2<D7"}, 0, "D4+A11", 1),
        row("8.8", "E6+D7+A11", {"E6<E6", "A2<A11"}, 0, "D7+A8", 1),

        row("9.1", "E8^3", {"E8<E8"}, 0, "E8^2", 0),
        row("9.2", "E8+D16", {"E8<E8"}, 0, "D16", 0, {2}),

        row("10.1", "E8^3", {"E6<E8"}, 0, "E8^2+A2", 0),
        row("10.2", "E8+D16", {"E6<E8"}, 0, "D16+A2", 0, {2}),
        row("10.3", "E7^2+D10", {"E6<E7"}, 1, "E7+D10", 1, {2}),
        row("10.4", "E7+A17", {"E6<E7"}, 1, "A17", 1, {3}),
        row("10.5", "E6^4", {"E6<E6"}, 0, "E6^3", 0, {3}),
        row("10.6", "E6+D7+A11", {"E6<E6"}, 0, "D7+A11", 0, {4}),
    };
    return rows;
}

std::vector<ExpectedRow> expected_block(int k) {
    std::vector<ExpectedRow> out;
    std::string prefix = std::to_string(k) + ".";
    for (const auto& r : expected_rows())
        if (r.row_id.rfind(prefix, 0) == 0) out.push_back(r);
    return out;
}

}  // namespace k3fib
