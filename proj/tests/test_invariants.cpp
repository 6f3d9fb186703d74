#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "krh/invariants.hpp"

using namespace krh;

namespace {

Options fast() {
    Options o;
    o.pad = 2;
    o.exec = Exec::parallel;
    return o;
}

TripleGradedDims trefoil_dims() {
    return {{{2, 2, -2}, 1}, {{-2, 2, 2}, 1}, {{0, 4, -2}, 1}};
}

} // namespace

TEST_CASE("signature") {
    CHECK(signature(BraidWord::parse("b=1;")) == 0);
    CHECK(signature(BraidWord::parse("b=2; w=1 1 1")) == 2);
    CHECK(signature(BraidWord::parse("b=2; w=-1 -1 -1")) == -2);
    CHECK(signature(BraidWord::parse("b=3; w=1 -2 1 -2")) == 0);
    CHECK(signature(BraidWord::parse("b=2; w=1 1 1 1 1")) == 4);
    CHECK(signature(BraidWord::parse("b=3; w=1 1 1 2 -1 2")) == 2);
    CHECK_THROWS_AS(signature(BraidWord::parse("b=2; w=1 1")), error);
}

TEST_CASE("homfly homology of the unknot") {
    auto h = homfly_homology(BraidWord::parse("b=1;"), fast());
    CHECK(h.dims == TripleGradedDims{{{0, 0, 0}, 1}});
    CHECK(!h.window_truncated);
}

TEST_CASE("homfly homology of the trefoil") {
    auto h = homfly_homology(BraidWord::parse("b=2; w=1 1 1"), fast());
    CHECK(h.dims == trefoil_dims());
    CHECK(!h.window_truncated);
    CHECK(euler_check(h.dims, link_homfly_moy(BraidWord::parse("b=2; w=1 1 1")).reduced.num));
}

TEST_CASE("middle and unreduced unknot towers") {
    auto m = middle_homology(BraidWord::parse("b=1;"), fast());
    CHECK(m.dims.count({1, 0, 0}) == 1);
    CHECK(m.dims.count({3, 0, 0}) == 1);
    for (auto& [t, d] : m.dims) {
        CHECK(t.j == 0);
        CHECK(t.k == 0);
        CHECK(t.i % 2 == 1);
        CHECK(t.i >= 1);
    }
    auto u = unreduced_homology(BraidWord::parse("b=1;"), fast());
    CHECK(u.dims.count({1, 1, -1}) == 1);
    CHECK(u.dims.count({1, -1, -1}) == 1);
    CHECK(u.dims.count({3, 1, -1}) == 1);

    // H~ = H (x) H^*(S^1): dims match under (i, j, k) -> (i, j+-1, k-1)
    for (auto& [t, d] : u.dims) {
        long expect = 0;
        auto it1 = m.dims.find({t.i, t.j - 1, t.k + 1});
        auto it2 = m.dims.find({t.i, t.j + 1, t.k + 1});
        if (it1 != m.dims.end()) expect += it1->second;
        if (it2 != m.dims.end()) expect += it2->second;
        CHECK(d == expect);
    }
}

TEST_CASE("thinness verdicts") {
    auto v = delta_thinness(trefoil_dims(), 2);
    CHECK(v.thin);
    CHECK(v.delta_support.size() == 1);

    // figure-eight support from |HOMFLY coefficients| at sigma = 0
    TripleGradedDims f8{{{0, 2, -2}, 1},
                        {{0, -2, 2}, 1},
                        {{0, 0, 0}, 1},
                        {{2, 0, -2}, 1},
                        {{-2, 0, 2}, 1}};
    CHECK(delta_thinness(f8, 0).thin);

    // the 9_42 shape has two delta values (hollow -2, solid 0)
    TripleGradedDims n942{{{0, 0, 0}, 1}, {{2, 0, -4}, 1}};
    auto nv = delta_thinness(n942, 0);
    CHECK(!nv.thin);
    CHECK(nv.delta_support.size() == 2);
}

TEST_CASE("euler check detects faults") {
    Laurent2 p31;
    p31.add_term(2, 2, Rational(1));
    p31.add_term(2, -2, Rational(1));
    p31.add_term(4, 0, Rational(-1));
    CHECK(euler_check(trefoil_dims(), p31));
    auto bad = trefoil_dims();
    bad[{0, 4, -2}] = 2;
    CHECK(!euler_check(bad, p31));
    CHECK(euler_check(TripleGradedDims{{{0, 0, 0}, 1}}, Laurent2::constant(Rational(1))));
}

TEST_CASE("sl(N) homology of the unknot") {
    for (int N : {1, 2, 3}) {
        auto r = sln_homology(BraidWord::parse("b=1;"), N, true, fast());
        CHECK(r.dims == BigradedDims{{{0, 0}, 1}});
        auto u = sln_homology(BraidWord::parse("b=1;"), N, false, fast());
        long total = 0;
        for (auto& [k, d] : u.dims) total += d;
        CHECK(total == N);
        CHECK(u.dims.count({1 - N, 0}) == 1);
    }
}

TEST_CASE("sl(2) homology of the trefoil matches the regraded table") {
    auto r = sln_homology(BraidWord::parse("b=2; w=1 1 1"), 2, true, fast());
    BigradedDims expect{{{2, 0}, 1}, {{6, -2}, 1}, {{8, -3}, 1}};
    CHECK(r.dims == expect);
    // Euler characteristic: P(q^2, q) = q^2 + q^6 - q^8
    Laurent1 chi = chi_of_sln(r.dims);
    Laurent1 e;
    e.add_term(2, Rational(1));
    e.add_term(6, Rational(1));
    e.add_term(8, Rational(-1));
    CHECK(chi == e);
}

TEST_CASE("sl(2) unknot via a kinked presentation") {
    auto r = sln_homology(BraidWord::parse("b=2; w=1"), 2, true, fast());
    CHECK(r.dims == BigradedDims{{{0, 0}, 1}});
    auto r2 = sln_homology(BraidWord::parse("b=2; w=-1"), 2, true, fast());
    CHECK(r2.dims == BigradedDims{{{0, 0}, 1}});
}

TEST_CASE("marked edge independence for the trefoil") {
    BraidWord w = BraidWord::parse("b=2; w=1 1 1");
    Options o = fast();
    o.marked_edge = 1;
    auto a = sln_homology(w, 2, true, o);
    o.marked_edge = 3;
    auto b = sln_homology(w, 2, true, o);
    o.marked_edge = 5;
    auto c = sln_homology(w, 2, true, o);
    CHECK(a.dims == b.dims);
    CHECK(a.dims == c.dims);
}

TEST_CASE("diagram independence of the trefoil homology") {
    auto a = homfly_homology(BraidWord::parse("b=2; w=1 1 1"), fast());
    // Markov-stabilized three-strand presentation
    auto b = homfly_homology(BraidWord::parse("b=3; w=1 1 1 2"), fast());
    CHECK(a.dims == b.dims);
}

TEST_CASE("mirror consistency for the trefoil") {
    auto a = homfly_homology(BraidWord::parse("b=2; w=1 1 1"), fast());
    auto b = homfly_homology(BraidWord::parse("b=2; w=-1 -1 -1"), fast());
    TripleGradedDims mirrored;
    for (auto& [t, d] : a.dims) mirrored[{-t.i, -t.j, -t.k}] = d;
    CHECK(b.dims == mirrored);
}

TEST_CASE("parity of the trefoil gradings") {
    auto h = homfly_homology(BraidWord::parse("b=2; w=1 1 1"), fast());
    for (auto& [t, d] : h.dims) {
        CHECK(t.i % 2 == 0);
        CHECK(t.j % 2 == 0);
        CHECK(t.k % 2 == 0);
    }
}

TEST_CASE("stabilization of the unknot") {
    CHECK(stabilization(BraidWord::parse("b=1;"), 2, fast()) == 1);
}

TEST_CASE("totally reduced homology of the 2-unlink") {
    auto r = totally_reduced(BraidWord::parse("b=2;"), 1, 2, 2, fast());
    BigradedDims expect{{{2, 1}, 1}, {{-2, -1}, 1}};
    CHECK(r.dims == expect);
    CHECK(r.total == 2);
}

TEST_CASE("totally reduced homology of the Hopf link") {
    BraidWord hopf = BraidWord::parse("b=2; w=1 1");
    auto d = close_braid(hopf);
    auto comp = d.link_component_of_edge();
    // two choices of (i, j) give the same dims
    std::vector<std::pair<int, int>> picks;
    int c0 = -1, c1 = -1;
    for (int e = 1; e <= d.num_edges; ++e) {
        if (comp[e] == 0 && c0 < 0) c0 = e;
        if (comp[e] == 1 && c1 < 0) c1 = e;
    }
    int d0 = -1, d1 = -1;
    for (int e = d.num_edges; e >= 1; --e) {
        if (comp[e] == 0 && d0 < 0) d0 = e;
        if (comp[e] == 1 && d1 < 0) d1 = e;
    }
    auto a = totally_reduced(hopf, c0, c1, 2, fast());
    auto b = totally_reduced(hopf, d0, d1, 2, fast());
    CHECK(a.dims == b.dims);
    CHECK(a.total == 4);
    // all classes on delta = 1, q in {0, 2, 4, 6}
    BigradedDims expect{{{0, 1}, 1}, {{2, 1}, 1}, {{4, 1}, 1}, {{6, 1}, 1}};
    CHECK(a.dims == expect);
}

TEST_CASE("skein triple validation") {
    BraidWord plus = BraidWord::parse("b=2; w=1 1 1");
    BraidWord minus = BraidWord::parse("b=2; w=1 1 -1");
    BraidWord zero = BraidWord::parse("b=2; w=1 1");
    CHECK_NOTHROW(skein_triple_check(plus, minus, zero, 2, fast()));
    BraidWord badzero = BraidWord::parse("b=2; w=1");
    CHECK_THROWS_AS(skein_triple_check(plus, minus, badzero, 2, fast()), error);
}

TEST_CASE("report json round trip") {
    ReportOptions ropt;
    ropt.base = fast();
    ropt.with_sl2 = false;
    auto rep = full_report("unknot", BraidWord::parse("b=1;"), ropt);
    std::string j = report_json(rep);
    auto back = report_from_json(j);
    CHECK(report_json(back) == j);
}

TEST_CASE("dot rendering") {
    std::string grid = render_dots(trefoil_dims(), 2);
    CHECK(grid.find("delta = 2") != std::string::npos);
    std::string empty = render_dots({}, 0);
    CHECK(!empty.empty());
}
