#include "doctest.h"
#include "k3fib/lattice.hpp"
#include "k3fib/roots.hpp"

#include <random>

using namespace k3fib;

namespace {

IMat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> d(-6, 6);
    IMat m = zeros(r, c);
    for (auto& row : m)
        for (auto& x : row) x = d(rng);
    return m;
}

std::vector<std::string> q_strings(const DisplayGenerators& g) {
    std::vector<std::string> out;
    for (const auto& q : g.q) out.push_back(to_string(q.value));
    return out;
}

}  // namespace

TEST_CASE("smith form satisfies U M V = D with divisibility") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + trial % 5, c = 1 + (trial * 3) % 6;
        IMat m = random_matrix(rng, r, c);
        SmithForm s = smith_normal_form(m);
        CHECK(mul(mul(s.U, m), s.V) == s.D);
        CHECK(mul(s.V, s.Vinv) == identity(c));
        CHECK(det(s.U) * det(s.U) == 1);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(s.D[i][j] == 0);
        for (std::size_t i = 0; i + 1 < s.diag.size(); ++i)
            if (s.diag[i + 1] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
        CHECK(s.rank == rank(m));
    }
}

TEST_CASE("smith factors of A2 gram") {
    SmithForm s = smith_normal_form(ade_gram('A', 2));
    CHECK(s.diag == std::vector<Int>{1, 3});
}

TEST_CASE("discriminant order equals absolute determinant") {
    for (auto spec : {"A2", "A5", "D7", "E6", "E7", "E8", "U+U(3)+A2^3", "D4+A2", "A2(-1)", "(-6)+A5"}) {
        IntLattice l = parse_lattice_spec(spec);
        Int d = l.det();
        if (d < 0) d = -d;
        CHECK(Int(discriminant_lattice(l).order()) == d);
    }
}

TEST_CASE("discriminant forms of small lattices") {
    auto g = display_generators(discriminant_lattice(parse_lattice_spec("U+U(3)")));
    CHECK(g.orders == std::vector<Int>{3, 3});
    CHECK(q_strings(g) == std::vector<std::string>{"2/3", "4/3"});

    auto a = display_generators(discriminant_lattice(parse_lattice_spec("A2(-1)")));
    CHECK(q_strings(a) == std::vector<std::string>{"2/3"});

    auto a2 = display_generators(discriminant_lattice(parse_lattice_spec("A2")));
    CHECK(q_strings(a2) == std::vector<std::string>{"4/3"});

    auto e8 = discriminant_lattice(parse_lattice_spec("E8"));
    CHECK(e8.order() == 1);
}

TEST_CASE("discriminant form isomorphism") {
    auto d = [](const char* s) { return discriminant_lattice(parse_lattice_spec(s)); };
    // U(3) carries a hyperbolic form, A2 + A2(-1) is the same group with it
    CHECK(isomorphic(d("U(3)"), d("A2+A2(-1)")));
    CHECK(isomorphic(d("A2(-1)"), d("E6")));
    CHECK_FALSE(isomorphic(d("A2"), d("E6")));
    CHECK(isomorphic(d("U+U(3)+A2^3"), d("E6+A2^4")));
    CHECK(isomorphic(d("A2^2"), d("A2(-1)^2")));
    CHECK(isomorphic(d("D4"), d("D4(-1)")));
    CHECK_FALSE(isomorphic(d("A1"), d("A1(-1)")));
}

TEST_CASE("orthogonal complement and closure") {
    IntLattice e8 = parse_lattice_spec("E8");
    // E6 inside E8 has complement A2
    IMat sub;
    for (int i = 0; i < 6; ++i) {
        IVec v(8, Int(0));
        v[i] = 1;
        sub.push_back(v);
    }
    Complement c = orthogonal_complement(e8, sub);
    CHECK(c.lattice.rank() == 2);
    CHECK(c.lattice.det() == 3);
    CHECK(is_primitive(sub));
    for (const auto& k : c.basis)
        for (const auto& s : sub) CHECK(form(k, e8.gram, s) == 0);

    IMat twice = {{Int(2), Int(0)}, {Int(0), Int(1)}};
    Closure cl = primitive_closure(twice);
    CHECK(cl.quotient == std::vector<Int>{2});
    CHECK(rank(cl.basis) == 2);
}

TEST_CASE("root counts of ADE lattices") {
    // |roots| from the Coxeter number: rank * h
    struct Case {
        char f;
        int r;
        std::size_t count;
    };
    for (auto c : {Case{'A', 1, 2}, Case{'A', 2, 6}, Case{'A', 5, 30}, Case{'D', 4, 24}, Case{'D', 7, 84},
                   Case{'E', 6, 72}, Case{'E', 7, 126}, Case{'E', 8, 240}}) {
        CHECK(roots_of(ade_gram(c.f, c.r)).size() == c.count);
    }
}

TEST_CASE("lll keeps the lattice and shortens") {
    IMat g = gram_of(IMat{{Int(1), Int(5), Int(0)}, {Int(0), Int(1), Int(7)}, {Int(0), Int(0), Int(1)}},
                     negate(ade_gram('A', 3)));
    Reduced r = lll(g);
    CHECK(det(r.gram) == det(g));
    CHECK(det(r.transform) * det(r.transform) == 1);
    CHECK(gram_of(r.transform, g) == r.gram);
    CHECK(r.gram[0][0] == 2);
}

TEST_CASE("coset minimum against brute force") {
    IMat q = negate(ade_gram('A', 3));
    QVec shift = {Rat(1, 4), Rat(1, 2), Rat(3, 4)};
    auto [val, x] = coset_minimum(q, shift);
    Rat best = -1;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            for (int c = -3; c <= 3; ++c) {
                QVec v = {Rat(a) + shift[0], Rat(b) + shift[1], Rat(c) + shift[2]};
                Rat n = form(v, q, v);
                if (best < 0 || n < best) best = n;
            }
    CHECK(val == best);
    QVec v = {Rat(x[0]) + shift[0], Rat(x[1]) + shift[1], Rat(x[2]) + shift[2]};
    CHECK(form(v, q, v) == val);
}

TEST_CASE("lattice spec parser") {
    IntLattice l = parse_lattice_spec("U+U(3)+A2^3");
    CHECK(l.rank() == 10);
    CHECK(l.det() == Int(9 * 27));
    CHECK_THROWS_AS(parse_lattice_spec("B3"), Error);
    CHECK_THROWS_AS(IntLattice(IMat{{Int(1)}}), Error);
}
