#include "k3fib/complement_table.hpp"

#include <boost/multiprecision/integer.hpp>

namespace k3fib {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

bool is_square(const Int& x) {
    if (x < 0) return false;
    Int r = boost::multiprecision::sqrt(x);
    return r * r == x;
}

// printed shape for k copies of A2 in A_n: a (-6) chain, one (-12) vector, then A_{n-3k};
// A_{k-1}(3) when the copies fill the component
IMat a_pattern(int n, int k) {
    bool full = 3 * k == n + 1;
    std::size_t r = full ? k - 1 : n - 2 * k;
    IMat g = zeros(r, r);
    std::size_t head = full ? r : k;
    for (std::size_t i = 0; i < r; ++i) {
        g[i][i] = i < head ? (!full && i + 1 == head ? -12 : -6) : -2;
        if (i + 1 < r) g[i][i + 1] = g[i + 1][i] = i + 1 <= head ? 3 : 1;
    }
    return g;
}

// tridiagonal -4/-1 with the last pair coupled by -2
IMat d_pattern(std::size_t r) {
    IMat g = zeros(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        g[i][i] = -4;
        if (i + 1 < r) g[i][i + 1] = g[i + 1][i] = -1;
    }
    g[r - 2][r - 1] = g[r - 1][r - 2] = -2;
    return g;
}

}  // namespace

std::string TabulatedComplement::id() const { return target.str() + ":" + source.str(); }

const std::vector<TabulatedComplement>& tabulated_complements() {
    static const std::vector<TabulatedComplement> rows = [] {
        std::vector<TabulatedComplement> r = {
            {{'A', 11}, {0, 0, 1}, 9, "A8", 0, {}},   {{'A', 11}, {0, 0, 2}, 7, "A5", 0, {}},
            {{'A', 11}, {0, 0, 3}, 5, "A2", 0, {}},   {{'A', 11}, {0, 0, 4}, 3, "0", 0, {}},
            {{'A', 17}, {0, 0, 1}, 15, "A14", 0, {}}, {{'A', 17}, {0, 0, 2}, 13, "A11", 0, {}},
            {{'A', 17}, {0, 0, 3}, 11, "A8", 0, {}},  {{'A', 17}, {0, 0, 4}, 9, "A5", 0, {}},
            {{'A', 17}, {0, 0, 5}, 7, "A2", 0, {}},   {{'A', 17}, {0, 0, 6}, 5, "0", 0, {}},
            {{'D', 7}, {0, 0, 1}, 5, "D4", 0, {}},    {{'D', 7}, {0, 0, 2}, 3, "0", 0, d_pattern(3)},
            {{'D', 10}, {0, 0, 1}, 8, "D7", 0, {}},   {{'D', 10}, {0, 0, 2}, 6, "D4", 0, {}},
            {{'D', 10}, {0, 0, 3}, 4, "0", 0, d_pattern(4)},
            {{'D', 16}, {0, 0, 1}, 14, "D13", 0, {}}, {{'D', 16}, {0, 0, 2}, 12, "D10", 0, {}},
            {{'D', 16}, {0, 0, 3}, 10, "D7", 0, {}},  {{'D', 16}, {0, 0, 4}, 8, "D4", 0, {}},
            {{'D', 16}, {0, 0, 5}, 6, "0", 0, d_pattern(6)},
            {{'E', 6}, {0, 0, 1}, 4, "A2^2", 0, {}},  {{'E', 6}, {0, 0, 2}, 2, "A2", 0, {}},
            {{'E', 6}, {0, 1, 0}, 0, "0", 0, {}},     {{'E', 7}, {0, 0, 1}, 5, "A5", 0, {}},
            {{'E', 7}, {0, 0, 2}, 3, "A2", 1, {}},    {{'E', 7}, {0, 1, 0}, 1, "0", 1, IMat{{-6}}},
            {{'E', 8}, {0, 0, 1}, 6, "E6", 0, {}},    {{'E', 8}, {0, 0, 2}, 4, "A2^2", 0, {}},
            {{'E', 8}, {0, 1, 0}, 2, "A2", 0, {}},    {{'E', 8}, {1, 0, 0}, 0, "0", 0, {}},
        };
        for (auto& row : r)
            if (row.target.family == 'A') row.gram = a_pattern(row.target.rank, row.source.a2);
        return r;
    }();
    return rows;
}

ComplementAudit audit_complement(const TabulatedComplement& row) {
    ComplementAudit a;
    a.row = row;
    IMat g = ade_gram(row.target.family, row.target.rank);
    IMat img = canonical_embedding(row.source, row.target);
    a.computed = component_complement(row.target, img);
    a.det = abs_int(a.computed.lattice.det());
    IMat stacked = img;
    stacked.insert(stacked.end(), a.computed.basis.begin(), a.computed.basis.end());
    a.index = abs_int(det(stacked));
    Int dn = abs_int(det(gram_of(img, g)));
    Int dl = abs_int(det(g));
    a.identity = dn * a.det == dl * a.index * a.index;
    a.rank_ok = a.computed.lattice.rank() == row.rank;
    a.roots_ok = a.computed.root_type.str() == row.roots;
    a.minus6_ok = a.computed.minus6 == row.minus6;
    if (row.gram) {
        a.printed_det = abs_int(det(*row.gram));
        Int lhs = dn * *a.printed_det;
        a.printed_identity = lhs % dl == 0 && is_square(lhs / dl);
        a.printed_isometric = find_isometry(a.computed.lattice.gram, *row.gram).has_value();
    }
    return a;
}

}  // namespace k3fib
