#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "krh/laurent.hpp"
#include "krh/multipoly.hpp"
#include "krh/sparsemat.hpp"

#include <random>

using namespace krh;

namespace {

MultiPoly X(int v) { return MultiPoly::var(v); }

MultiPoly random_poly(std::mt19937& rng, int nvars, int max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> deg(0, max_deg);
    MultiPoly p;
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (int v = 1; v <= nvars; ++v) {
            int e = deg(rng);
            if (e > 0) m.factors.push_back({v, e});
        }
        p.add_term(m, Rational(coef(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("rational arithmetic is canonical") {
    Rational a(2, 4);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    CHECK((a + Rational(1, 2)).is_one());
    CHECK((Rational(1, 3) * Rational(3)).is_one());
    CHECK_THROWS_AS(Rational(1, 0), error);
    Rational z = Rational(5, 7) - Rational(5, 7);
    CHECK(z.is_zero());
    CHECK(z.den() == 1);
}

TEST_CASE("poly_arith examples") {
    // (X1+X2)(X1-X2) = X1^2 - X2^2
    MultiPoly lhs = (X(1) + X(2)) * (X(1) - X(2));
    MultiPoly rhs = X(1) * X(1) - X(2) * X(2);
    CHECK(lhs == rhs);
    // 1 * p = p
    std::mt19937 rng(7);
    MultiPoly p = random_poly(rng, 3, 3, 5);
    CHECK(MultiPoly(1) * p == p);
    // (X3-X1)(X3-X2) with X3 = X1 afterwards -> 0
    MultiPoly q = (X(3) - X(1)) * (X(3) - X(2));
    std::map<int, MultiPoly> sub{{3, X(1)}};
    CHECK(q.substitute(sub).is_zero());
}

TEST_CASE("poly_substitute examples") {
    // W = Xk^2 + Xl^2 - Xi^2 - Xj^2 with Xl <- Xi + Xj - Xk gives 2(Xk-Xi)(Xk-Xj)
    int i = 1, j = 2, k = 3, l = 4;
    MultiPoly w = X(k) * X(k) + X(l) * X(l) - X(i) * X(i) - X(j) * X(j);
    std::map<int, MultiPoly> sub{{l, X(i) + X(j) - X(k)}};
    MultiPoly expect = ((X(k) - X(i)) * (X(k) - X(j))).scaled(Rational(2));
    CHECK(w.substitute(sub) == expect);

    std::mt19937 rng(3);
    MultiPoly p = random_poly(rng, 2, 2, 3);
    CHECK(p.substitute({}) == p);

    std::map<int, MultiPoly> sub2{{2, X(1)}};
    CHECK((X(2) - X(1)).substitute(sub2).is_zero());

    std::map<int, MultiPoly> cyc{{1, X(2)}, {2, X(1)}};
    CHECK_THROWS_AS(X(1).substitute(cyc), error);
}

TEST_CASE("poly_exact_divide examples") {
    int i = 1, j = 2, k = 3;
    MultiPoly uv = (X(k) - X(i)) * (X(k) - X(j));
    MultiPoly w = uv.scaled(Rational(-2));
    CHECK(w.divide_exact(uv) == MultiPoly(-2));
    CHECK(MultiPoly().divide_exact(uv).is_zero());
    CHECK((X(1) * X(1) - X(2) * X(2)).divide_exact(X(1) - X(2)) == X(1) + X(2));
    CHECK_THROWS_AS((X(1) + X(2)).divide_exact(X(1) * X(1)), error);
}

TEST_CASE("ring axioms on randomized triples") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly a = random_poly(rng, 3, 2, 4);
        MultiPoly b = random_poly(rng, 3, 2, 4);
        MultiPoly c = random_poly(rng, 3, 2, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
    }
}

TEST_CASE("exact divide round trip on randomized products") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly a = random_poly(rng, 3, 2, 4);
        MultiPoly b = random_poly(rng, 3, 2, 4);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK((a * b).divide_exact(b) == a);
    }
}

TEST_CASE("homogeneous degree additivity") {
    MultiPoly p = X(1) * X(2) + X(3) * X(3);
    MultiPoly q = X(1) - X(2);
    CHECK(p.is_homogeneous());
    CHECK(q.is_homogeneous());
    CHECK(p.q_degree() == 4);
    CHECK(q.q_degree() == 2);
    CHECK((p * q).q_degree() == 6);
    CHECK(!(p + MultiPoly(1)).is_homogeneous());
}

TEST_CASE("rank kernel image basics") {
    SparseMatQ id2(2, 2);
    id2.set(0, 0, Rational(1));
    id2.set(1, 1, Rational(1));
    auto r = rank_kernel_image(id2);
    CHECK(r.rank == 2);
    CHECK(r.kernel.empty());

    SparseMatQ z(3, 4);
    auto rz = rank_kernel_image(z);
    CHECK(rz.rank == 0);
    CHECK(rz.kernel.size() == 4);

    SparseMatQ m(2, 2);
    m.set(0, 0, Rational(1));
    m.set(0, 1, Rational(2));
    m.set(1, 0, Rational(2));
    m.set(1, 1, Rational(4));
    auto rm = rank_kernel_image(m);
    CHECK(rm.rank == 1);
    REQUIRE(rm.kernel.size() == 1);
    // kernel spanned by (2, -1): check proportionality
    auto& kv = rm.kernel[0];
    REQUIRE(kv.size() == 2);
    Rational ratio = kv[0].second / kv[1].second;
    CHECK(ratio == Rational(-2));
}

TEST_CASE("rank invariant under permutations") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 6, m = 5;
        SparseMatQ a(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                if (coef(rng) > 0) a.set(i, j, Rational(coef(rng)));
        std::vector<int> rp(n), cp(m);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        auto r1 = rank_kernel_image(a);
        auto r2 = rank_kernel_image(a.permuted(rp, cp));
        CHECK(r1.rank == r2.rank);
        CHECK(r1.rank + static_cast<int>(r1.kernel.size()) == m);
    }
}

TEST_CASE("laurent2 specialization") {
    // P(unknot) = 1
    Laurent2 one = Laurent2::constant(Rational(1));
    CHECK(one.specialize_a(2) == Laurent1::monomial(0, Rational(1)));

    // P(3_1) = a^2 q^2 + a^2 q^-2 - a^4 at N = 2 -> q^2 + q^6 - q^8
    Laurent2 p31;
    p31.add_term(2, 2, Rational(1));
    p31.add_term(2, -2, Rational(1));
    p31.add_term(4, 0, Rational(-1));
    Laurent1 spec = p31.specialize_a(2);
    Laurent1 expect;
    expect.add_term(2, Rational(1));
    expect.add_term(6, Rational(1));
    expect.add_term(8, Rational(-1));
    CHECK(spec == expect);

    // (a - a^-1)/(q - q^-1) at N = 2 -> q + q^-1
    Laurent2Frac circ = Laurent2Frac::circle();
    Laurent2 num_spec;
    for (auto& [e, c] : circ.num.specialize_a(2).terms) num_spec.add_term(0, e, c);
    Laurent2 div = num_spec.divide_exact(q_minus_qinv());
    Laurent2 expect2;
    expect2.add_term(0, 1, Rational(1));
    expect2.add_term(0, -1, Rational(1));
    CHECK(div == expect2);
}

TEST_CASE("laurent2frac normalization and arithmetic") {
    // (q - q^-1) / (q - q^-1) normalizes to 1
    Laurent2Frac f(q_minus_qinv(), 1);
    CHECK(f.denom_power == 0);
    CHECK(f == Laurent2Frac::one());

    Laurent2Frac s = Laurent2Frac::circle();
    Laurent2Frac s2 = s * s;
    CHECK(s2.denom_power == 2);
    CHECK((s2.divide_exact(s)) == s);

    // series of 1/(q-q^-1): -q - q^3 - q^5 ...
    Laurent2Frac inv(Laurent2::constant(Rational(1)), 1);
    Laurent2 ser = inv.series_up_to(5);
    Laurent2 expect;
    expect.add_term(0, 1, Rational(-1));
    expect.add_term(0, 3, Rational(-1));
    expect.add_term(0, 5, Rational(-1));
    CHECK(ser == expect);
}
