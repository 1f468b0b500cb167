#include "doctest.h"
#include "k3fib/niemeier.hpp"

using namespace k3fib;

TEST_CASE("supported lattices pass all checks") {
    for (const auto& name : supported_niemeier()) {
        CAPTURE(name);
        NiemeierLattice n = niemeier_by_root_type(name);
        NiemeierReport r = verify(n);
        CHECK(r.even);
        CHECK(r.unimodular);
        CHECK(r.rootless);
        CHECK(n.root_part.rank() == 24);
        // glue lies in the dual and is isotropic for the discriminant form
        for (const auto& g : n.glue_group) {
            CHECK(is_integral(row_times(g, n.root_part.gram)));
            Rat q = form(g, n.root_part.gram, g);
            CHECK(denom(q) == 1);
            CHECK(numer(q) % 2 == 0);
        }
        // the lattice basis is unimodular
        IMat gn = to_int(mul(mul(n.basis, to_q(n.root_part.gram)), [&] {
            QMat t(24, QVec(24));
            for (std::size_t i = 0; i < 24; ++i)
                for (std::size_t j = 0; j < 24; ++j) t[i][j] = n.basis[j][i];
            return t;
        }()));
        Int d = det(gn);
        CHECK(d * d == 1);
    }
}

TEST_CASE("glue group orders") {
    CHECK(niemeier_by_root_type("E8^3").order() == 1);
    CHECK(niemeier_by_root_type("E8+D16").order() == 2);
    CHECK(niemeier_by_root_type("E7^2+D10").order() == 4);
    CHECK(niemeier_by_root_type("E7+A17").order() == 6);
    CHECK(niemeier_by_root_type("E6^4").order() == 9);
    CHECK(niemeier_by_root_type("E6+D7+A11").order() == 12);
    // the Z/12 is cyclic
    NiemeierLattice n = niemeier_by_root_type("A11+D7+E6");
    std::size_t max_order = 0;
    for (const auto& g : n.glue_group) {
        QVec m = g;
        std::size_t k = 1;
        while (true) {
            bool zero = true;
            for (const auto& x : m)
                if (x != 0) zero = false;
            if (zero) break;
            QVec s(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) s[i] = m[i] + g[i];
            m = frac(s);
            ++k;
        }
        max_order = std::max(max_order, k);
    }
    CHECK(max_order == 12);
}

TEST_CASE("membership") {
    NiemeierLattice n = niemeier_by_root_type("E7+A17");
    QVec third(24, Rat(0));
    third[7] = Rat(1, 3);
    CHECK_FALSE(n.contains(third));
    QVec unit(24, Rat(0));
    unit[3] = 1;
    CHECK(n.contains(unit));
    CHECK_THROWS_AS(n.contains(QVec(3, Rat(0))), Error);

    // half of e1+e5+e7 in the second E7 plus half of the odd D10 roots
    NiemeierLattice m = niemeier_by_root_type("E7^2+D10");
    QVec eta(24, Rat(0));
    for (int i : {0, 4, 6}) eta[7 + i] = Rat(1, 2);
    for (int i : {0, 2, 4, 6, 8}) eta[14 + i] = Rat(1, 2);
    CHECK(m.contains(eta));
    eta[14] = 0;
    CHECK_FALSE(m.contains(eta));
}

TEST_CASE("A17 root part has index three in its closure") {
    NiemeierLattice n = niemeier_by_root_type("E7+A17");
    IMat rows;
    for (std::size_t i = 7; i < 24; ++i) {
        QVec e(24, Rat(0));
        e[i] = 1;
        rows.push_back(to_int(n.coordinates(e)));
    }
    CHECK(primitive_closure(rows).quotient == std::vector<Int>{3});
}

TEST_CASE("corrupted glue is caught") {
    // spinor glue on D16 replaced by the vector class
    NiemeierLattice bad = niemeier_from_glue({{'E', 8}, {'D', 16}}, {{0, 2}});
    NiemeierReport r = verify(bad);
    CHECK_FALSE(r.even);
    CHECK(r.unimodular);  // group order is still 2
    CHECK_FALSE(r.rootless);

    NiemeierLattice short_glue = niemeier_from_glue({{'E', 7}, {'A', 17}}, {{1, 0}});
    CHECK_FALSE(verify(short_glue).unimodular);

    CHECK_THROWS_AS(niemeier_by_root_type("A1^24"), Error);
}
