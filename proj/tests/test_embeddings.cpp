#include "doctest.h"
#include "k3fib/embeddings.hpp"

#include <boost/multiprecision/integer.hpp>
#include <random>

using namespace k3fib;

namespace {

IMat complement_gram(AdeComponent t, SummandCounts c) {
    return component_complement(t, canonical_embedding(c, t)).lattice.gram;
}

IMat scaled(IMat g, int k) {
    for (auto& r : g)
        for (auto& x : r) x *= k;
    return g;
}

Int abs_int(Int x) { return x < 0 ? Int(-x) : x; }

// [L : N + N^perp] from the stacked bases, both in L coordinates
Int stacked_index(const IMat& n, const IMat& perp) {
    IMat all = n;
    all.insert(all.end(), perp.begin(), perp.end());
    return abs_int(det(all));
}

bool is_square(const Int& x) {
    if (x < 0) return false;
    Int r = boost::multiprecision::sqrt(x);
    return r * r == x;
}

}  // namespace

TEST_CASE("summand counts") {
    SummandCounts c = counts_of(parse_ade("E6+A2^4"));
    CHECK(c.e6 == 1);
    CHECK(c.a2 == 4);
    CHECK(c.rank() == 14);
    CHECK(c.str() == "E6+A2^4");
    CHECK_THROWS_AS(counts_of(parse_ade("A3")), Error);
}

TEST_CASE("component complements of A2 and E6 sums") {
    struct Row {
        AdeComponent target;
        SummandCounts src;
        std::size_t rank;
        const char* roots;
        int minus6;
    };
    std::vector<Row> rows = {
        {{'A', 11}, {0, 0, 1}, 9, "A8", 0},   {{'A', 11}, {0, 0, 2}, 7, "A5", 0},
        {{'A', 11}, {0, 0, 3}, 5, "A2", 0},   {{'A', 11}, {0, 0, 4}, 3, "0", 0},
        {{'A', 17}, {0, 0, 1}, 15, "A14", 0}, {{'A', 17}, {0, 0, 2}, 13, "A11", 0},
        {{'A', 17}, {0, 0, 3}, 11, "A8", 0},  {{'A', 17}, {0, 0, 4}, 9, "A5", 0},
        {{'A', 17}, {0, 0, 5}, 7, "A2", 0},   {{'A', 17}, {0, 0, 6}, 5, "0", 0},
        {{'D', 7}, {0, 0, 1}, 5, "D4", 0},    {{'D', 7}, {0, 0, 2}, 3, "0", 0},
        {{'D', 10}, {0, 0, 1}, 8, "D7", 0},   {{'D', 10}, {0, 0, 2}, 6, "D4", 0},
        {{'D', 10}, {0, 0, 3}, 4, "0", 0},    {{'D', 16}, {0, 0, 1}, 14, "D13", 0},
        {{'D', 16}, {0, 0, 2}, 12, "D10", 0}, {{'D', 16}, {0, 0, 3}, 10, "D7", 0},
        {{'D', 16}, {0, 0, 4}, 8, "D4", 0},   {{'D', 16}, {0, 0, 5}, 6, "0", 0},
        {{'E', 6}, {0, 0, 1}, 4, "A2^2", 0},  {{'E', 6}, {0, 0, 2}, 2, "A2", 0},
        {{'E', 6}, {0, 1, 0}, 0, "0", 0},     {{'E', 7}, {0, 0, 1}, 5, "A5", 0},
        {{'E', 7}, {0, 0, 2}, 3, "A2", 1},    {{'E', 7}, {0, 1, 0}, 1, "0", 1},
        {{'E', 8}, {0, 0, 1}, 6, "E6", 0},    {{'E', 8}, {0, 0, 2}, 4, "A2^2", 0},
        {{'E', 8}, {0, 1, 0}, 2, "A2", 0},    {{'E', 8}, {1, 0, 0}, 0, "0", 0},
    };
    for (const auto& r : rows) {
        CAPTURE(r.target.str());
        CAPTURE(r.src.str());
        IMat img = canonical_embedding(r.src, r.target);
        CHECK(img.size() == static_cast<std::size_t>(r.src.rank()));
        // the image is a copy of the source
        CHECK(find_isometry(gram_of(img, ade_gram(r.target.family, r.target.rank)),
                            parse_lattice_spec(r.src.str()).gram)
                  .has_value());
        ComplementInfo ci = component_complement(r.target, img);
        CHECK(ci.lattice.rank() == r.rank);
        CHECK(ci.root_type.str() == r.roots);
        CHECK(ci.minus6 == r.minus6);
        // det(N) det(N^perp) = det(L) i^2 with i the index of N + N^perp
        Int i = stacked_index(img, ci.basis);
        Int dn = abs_int(det(gram_of(img, ade_gram(r.target.family, r.target.rank))));
        Int dl = abs_int(det(ade_gram(r.target.family, r.target.rank)));
        CHECK(dn * abs_int(ci.lattice.det()) == dl * i * i);
    }
}

TEST_CASE("printed complement grams") {
    // scaled A-type grams agree
    CHECK(find_isometry(complement_gram({'A', 11}, {0, 0, 4}), scaled(ade_gram('A', 3), 3)).has_value());
    CHECK(find_isometry(complement_gram({'A', 17}, {0, 0, 6}), scaled(ade_gram('A', 5), 3)).has_value());
    CHECK(find_isometry(complement_gram({'E', 7}, {0, 1, 0}), IMat{{-6}}).has_value());

    // the printed D-type grams cannot be complements: the index identity has no integral solution
    IMat d16(6, IVec(6, Int(0)));
    for (std::size_t i = 0; i < 6; ++i) {
        d16[i][i] = -4;
        if (i + 1 < 6) d16[i][i + 1] = d16[i + 1][i] = -1;
    }
    d16[4][5] = d16[5][4] = -2;
    struct Printed {
        AdeComponent target;
        int a2;
        IMat gram;
    };
    std::vector<Printed> printed = {
        {{'D', 7}, 2, {{-4, -1, 0}, {-1, -4, -2}, {0, -2, -4}}},
        {{'D', 10}, 3, {{-4, -1, 0, 0}, {-1, -4, -1, 0}, {0, -1, -4, -2}, {0, 0, -2, -4}}},
        {{'D', 16}, 5, d16},
    };
    for (const auto& p : printed) {
        CAPTURE(p.target.str());
        IMat ours = complement_gram(p.target, {0, 0, p.a2});
        Int dn = Int(1);
        for (int k = 0; k < p.a2; ++k) dn *= 3;
        Int dl = 4;
        CHECK(is_square(dn * abs_int(det(ours)) / dl));
        CHECK((dn * abs_int(det(ours))) % dl == 0);
        Int lhs = dn * abs_int(det(p.gram));
        CHECK_FALSE((lhs % dl == 0 && is_square(lhs / dl)));
        CHECK_FALSE(find_isometry(ours, p.gram).has_value());
    }
    CHECK(abs_int(det(printed[0].gram)) == 44);
}

TEST_CASE("embedding capacity") {
    CHECK_THROWS_AS(canonical_embedding({0, 0, 2}, {'A', 4}), Error);
    CHECK_NOTHROW(canonical_embedding({0, 0, 2}, {'A', 5}));
    CHECK_THROWS_AS(canonical_embedding({0, 0, 3}, {'D', 8}), Error);
    CHECK_THROWS_AS(canonical_embedding({1, 0, 0}, {'E', 7}), Error);
    CHECK_THROWS_AS(canonical_embedding({0, 1, 0}, {'D', 16}), Error);
    CHECK_THROWS_AS(canonical_embedding({0, 0, 3}, {'E', 8}), Error);
    try {
        canonical_embedding({0, 1, 1}, {'E', 8});
        FAIL("expected a non-primitive image");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("non-primitive") != std::string::npos);
        CHECK(std::string(e.what()).find("Z/3") != std::string::npos);
    }
}

TEST_CASE("D blocks are A2 systems") {
    for (int n : {6, 7, 10, 16}) {
        for (int i = 1; 3 * i <= n; ++i) {
            std::size_t a = leaf_first_d_index(3 * i - 1, n), b = leaf_first_d_index(3 * i, n);
            IMat g = ade_gram('D', n);
            CHECK(g[a][b] == 1);
        }
        // the two leaves hang off the fork
        IMat g = ade_gram('D', n);
        std::size_t fork = leaf_first_d_index(3, n);
        CHECK(g[leaf_first_d_index(1, n)][fork] == 1);
        CHECK(g[leaf_first_d_index(2, n)][fork] == 1);
        CHECK(g[leaf_first_d_index(1, n)][leaf_first_d_index(2, n)] == 0);
        CHECK(g[leaf_first_d_index(n, n)][leaf_first_d_index(n - 1, n)] == 1);
    }
}

TEST_CASE("embeddings into Niemeier lattices") {
    auto count = [](const char* src, const char* n) {
        return enumerate_embeddings(counts_of(parse_ade(src)), niemeier_by_root_type(n)).size();
    };
    CHECK(count("E6", "E7^2+D10") == 1);
    CHECK(count("E6+A2", "E6+D7+A11") == 2);
    CHECK(count("E8", "E7+A17") == 0);
    CHECK(count("E8", "E8^3") == 1);

    auto es = enumerate_embeddings(counts_of(parse_ade("E6")), niemeier_by_root_type("E7^2+D10"));
    REQUIRE(es.size() == 1);
    CHECK(es[0].m.root_type.str() == "E7+D10");
    CHECK(es[0].minus6 == 1);
    CHECK(abs_int(es[0].m.lattice.det()) == 3);

    for (const auto& name : e_type_niemeier()) {
        NiemeierLattice n = niemeier_by_root_type(name);
        for (const char* src : {"E6", "E6+A2", "E6+A2^4", "A2^3"}) {
            CAPTURE(name);
            CAPTURE(src);
            SummandCounts c = counts_of(parse_ade(src));
            Int dt = abs_int(parse_lattice_spec(src).det());
            for (const auto& e : enumerate_embeddings(c, n)) {
                // primitive in a unimodular lattice: complement determinant matches
                CHECK(abs_int(e.m.lattice.det()) == dt);
                CHECK(e.m.lattice.rank() + static_cast<std::size_t>(c.rank()) == 24);
                // and its discriminant form is the negative of the source's
                CHECK(isomorphic(discriminant_lattice(e.m.lattice),
                                 discriminant_lattice(IntLattice(negate(parse_lattice_spec(src).gram)))));
            }
        }
    }
}

TEST_CASE("two A2 pairs in two E6 components are never primitive in E6^4") {
    NiemeierLattice n = niemeier_by_root_type("E6^4");
    auto es = enumerate_embeddings(counts_of(parse_ade("E6+A2^4")), n);
    REQUIRE(es.size() == 1);
    CHECK(es[0].m.root_type.str() == "A2^5");
    // the remaining placement: its complement would contain E6+A2^2 of det 27 < 243 at full rank
    IMat img;
    std::vector<SummandCounts> load = {{0, 1, 0}, {0, 0, 2}, {0, 0, 2}, {0, 0, 0}};
    for (std::size_t c = 0; c < 4; ++c)
        for (const auto& r : canonical_embedding(load[c], n.components[c])) {
            IVec v(24, Int(0));
            std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(n.offsets[c]));
            img.push_back(v);
        }
    CHECK_THROWS_AS(niemeier_complement(n, img), Error);
    CHECK(abs_int(parse_lattice_spec("E6+A2^2").det()) == 27);
}

TEST_CASE("iterated complements") {
    IntLattice e8(ade_gram('E', 8));
    IMat a = canonical_embedding({0, 0, 1}, {'E', 8});
    IMat b = {IVec{0, 0, 0, 0, 1, 0, 0, 0}, IVec{0, 0, 0, 0, 0, 1, 0, 0}};
    IteratedResult r = orthogonal_iterated(e8, {a, b});
    CHECK(r.joint_type.str() == "A2^2");
    CHECK(r.stepwise_type.str() == "A2^2");
    CHECK(find_isometry(r.joint.gram, r.stepwise.gram).has_value());
    CHECK_THROWS_AS(orthogonal_iterated(e8, {a, IMat{IVec{0, 0, 1, 0, 0, 0, 0, 0}}}), Error);

    // randomized: mutually orthogonal roots split into parts
    std::mt19937 rng(20240611);
    std::vector<AdeComponent> targets = {{'E', 8}, {'E', 7}, {'E', 6}, {'D', 10}, {'A', 11}, {'D', 7}};
    for (int trial = 0; trial < 100; ++trial) {
        AdeComponent t = targets[trial % targets.size()];
        IntLattice l(ade_gram(t.family, t.rank));
        auto g = to_small(l.gram);
        std::vector<SVec> roots = roots_of(l.gram);
        std::shuffle(roots.begin(), roots.end(), rng);
        std::vector<SVec> chosen;
        std::size_t want = 2 + rng() % 3;
        for (const auto& r : roots) {
            bool ok = true;
            for (const auto& c : chosen) ok = ok && pair64(r, g, c) == 0;
            if (ok) chosen.push_back(r);
            if (chosen.size() == want) break;
        }
        std::vector<IMat> parts(2);
        for (const auto& c : chosen) parts[rng() % 2].push_back(to_big(c));
        IteratedResult it = orthogonal_iterated(l, parts);
        CAPTURE(trial);
        CHECK(it.joint_type == it.stepwise_type);
        CHECK(it.joint.det() == it.stepwise.det());
        CHECK(find_isometry(it.joint.gram, it.stepwise.gram).has_value());
    }
}

TEST_CASE("exhaustive A2 catalog in E8") {
    CatalogResult one = brute_force_catalog({0, 0, 1}, {'E', 8});
    CHECK(one.tuples == 1120);
    REQUIRE(one.classes.size() == 1);
    CHECK(one.classes[0].root_type.str() == "E6");
    CHECK(one.classes[0].rank == 6);
    // agrees with the canonical embedding
    CHECK(find_isometry(complement_gram({'E', 8}, {0, 0, 1}), ade_gram('E', 6)).has_value());

    CatalogResult two = brute_force_catalog({0, 0, 2}, {'E', 8});
    REQUIRE(two.classes.size() == 1);
    CHECK(two.classes[0].root_type.str() == "A2^2");
    CHECK(two.primitive == two.tuples);

    CatalogResult three = brute_force_catalog({0, 0, 3}, {'E', 8});
    CHECK(three.tuples > 0);
    CHECK(three.primitive == 0);
    CHECK(three.classes.empty());

    CHECK_THROWS_AS(brute_force_catalog({0, 1, 0}, {'E', 8}), Error);
    CHECK_THROWS_AS(brute_force_catalog({0, 0, 2}, {'E', 8}, 100), Error);
}
