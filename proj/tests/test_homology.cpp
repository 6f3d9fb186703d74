#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "krh/homology.hpp"
#include "krh/invariants.hpp"
#include "krh/moypoly.hpp"

using namespace krh;

namespace {

AssembledComplex make(const char* braid, Variant v, const ParamPoly& p, int marked = 1) {
    auto d = close_braid(BraidWord::parse(braid));
    AssembleOptions opt;
    opt.variant = v;
    opt.marked_edge = marked;
    return assemble(d, p, opt);
}

} // namespace

TEST_CASE("graded slices of the unknot complexes") {
    auto mid = make("b=1;", Variant::middle, ParamPoly{});
    ChainSlicer slicer(mid.complex, 8);
    CHECK(slicer.slice_dim({2, 0, 0}) == 1);  // the monomial X1
    CHECK(slicer.slice_dim({0, 0, 0}) == 1);
    CHECK(slicer.slice_dim({1, 0, 0}) == 0);

    auto red = make("b=1;", Variant::reduced_global, ParamPoly{});
    ChainSlicer rs(red.complex, 8);
    CHECK(rs.slice_dim({0, 0, 0}) == 1);
    for (int q = 1; q <= 8; ++q) CHECK(rs.slice_dim({q, 0, 0}) == 0);
}

TEST_CASE("double homology of unknot variants") {
    // middle: Q[X], one class in each even degree
    auto mid = make("b=1;", Variant::middle, ParamPoly{});
    DoubleHomologyEngine em(mid.complex, 10, Exec::serial);
    auto dm = em.dims(8);
    CHECK(dm[{0, 0, 0}] == 1);
    CHECK(dm[{2, 0, 0}] == 1);
    CHECK(dm[{8, 0, 0}] == 1);
    CHECK(dm.size() == 5);

    // reduced: Q at the origin only
    auto red = make("b=1;", Variant::reduced_edge, ParamPoly{});
    DoubleHomologyEngine er(red.complex, 10, Exec::serial);
    auto dr = er.dims(8);
    CHECK(dr.size() == 1);
    CHECK(dr[{0, 0, 0}] == 1);

    // unreduced: two towers
    auto unr = make("b=1;", Variant::unreduced, ParamPoly{});
    DoubleHomologyEngine eu(unr.complex, 10, Exec::serial);
    auto du = eu.dims(4);
    CHECK(du[{0, 0, 0}] == 1);
    CHECK(du[{0, -2, 0}] == 1);
    CHECK(du[{2, 0, 0}] == 1);
    CHECK(du[{2, -2, 0}] == 1);
}

TEST_CASE("total homology of the unknot") {
    for (int N : {1, 2, 3}) {
        auto red = make("b=1;", Variant::reduced_edge, param_x_pow(N + 1));
        TotalHomologyEngine er(red.complex, N, 10 + 2 * N, Exec::serial);
        auto dims = er.dims();
        CHECK(dims.size() == 1);
        CHECK(dims[{0, 0}] == 1);

        auto unr = make("b=1;", Variant::unreduced, param_x_pow(N + 1));
        TotalHomologyEngine eu(unr.complex, N, 10 + 4 * N, Exec::serial);
        auto ud = eu.dims();
        // Q[X]/(X^N) on the shifted generator: N classes from gr_N = 1 - N, step 2
        long total = 0;
        for (auto& [k, d] : ud) total += d;
        CHECK(total == N);
        CHECK(ud[{1 - N, 0}] == 1);
        if (N > 1) CHECK(ud[{3 - N, 0}] == 1);
    }
}

TEST_CASE("serial and parallel scans agree") {
    auto red = make("b=2; w=1 1 1", Variant::reduced_edge, param_x_pow(3));
    DoubleHomologyEngine a(red.complex, 12, Exec::serial);
    DoubleHomologyEngine b(red.complex, 12, Exec::parallel);
    CHECK(a.dims(10) == b.dims(10));

    TotalHomologyEngine ta(red.complex, 2, 16, Exec::serial);
    TotalHomologyEngine tb(red.complex, 2, 16, Exec::parallel);
    CHECK(ta.dims() == tb.dims());
}

TEST_CASE("homology dims independent of basis order") {
    auto red = make("b=2; w=1 1 1", Variant::reduced_edge, ParamPoly{});
    DoubleHomologyEngine a(red.complex, 12, Exec::serial, false);
    DoubleHomologyEngine b(red.complex, 12, Exec::serial, true);
    CHECK(a.dims(10) == b.dims(10));
}

TEST_CASE("positive homology of a braid graph matches its MOY polynomial") {
    // single-crossing theta graph on two strands
    ColumnWord g{2, {1}};
    BraidWord w;
    w.strands = 2;
    w.letters.push_back({1, BraidLetter::singular});
    auto d = close_braid(w);
    AssembleOptions opt;
    opt.variant = Variant::unreduced;
    auto ac = assemble(d, ParamPoly{}, opt);
    int q_hi = 9;
    PositiveHomology h(ac.complex, q_hi, Exec::serial);
    // signed Poincare polynomial == (-aq)^{-b} P~(D) as ascending series
    Laurent2Frac p = graph_homfly(g).value;
    Laurent2 expect = p.scale(-2, -2, Rational(1)).series_up_to(q_hi - 2);
    Laurent2 got;
    for (auto& [s, dim] : h.dims()) {
        if (s.q > q_hi - 2) continue;
        Rational sgn(((s.j / 2) % 2 == 0) ? dim : -dim);
        got.add_term(s.j, s.q, sgn);
    }
    CHECK(got == expect);
}

TEST_CASE("filtered pages on a tiny two-step complex") {
    // V_0 = Q (filt 0), V_1 = Q (filt 0), d = identity: everything dies at r=0
    FilteredBlocks fb;
    fb.cols[0] = {{0, 1}};
    fb.cols[1] = {{0, 1}};
    SparseMatQ d(1, 1);
    d.set(0, 0, Rational(1));
    fb.d[0] = d;
    auto pages = filtered_pages(fb, 3);
    CHECK(pages[0][{0, 0}].dim == 1);
    CHECK(pages[0][{0, 0}].drank == 1);
    CHECK(pages[1].count({0, 0}) == 0);

    // filtration drop: d from filt 1 to filt 0 is seen on page 1
    FilteredBlocks fb2;
    fb2.cols[0] = {{1, 1}};
    fb2.cols[1] = {{0, 1}};
    fb2.d[0] = d;
    auto pages2 = filtered_pages(fb2, 3);
    CHECK(pages2[0][{0, 1}].dim == 1);
    CHECK(pages2[0][{0, 1}].drank == 0);
    CHECK(pages2[1][{0, 1}].dim == 1);
    CHECK(pages2[1][{0, 1}].drank == 1);
    CHECK(pages2[1][{1, 0}].dim == 1);
    CHECK(pages2[2].empty());
}

TEST_CASE("E_k(-1) of the unknot is immediate") {
    auto red = make("b=1;", Variant::reduced_edge, ParamPoly{});
    auto pages = ek_sequence_minus1(red.complex, -4, 4, 4, Exec::serial);
    // E_2 = reduced HOMFLY homology of the unknot: one class at the origin
    CHECK(pages[2].dims.size() == 1);
    CHECK(pages[2].dims[{0, 0, 0}] == 1);
    CHECK(pages[2].converged);
}

TEST_CASE("E_k(N) of the unknot is immediate") {
    auto red = make("b=1;", Variant::reduced_edge, param_x_pow(3));
    auto pages = ek_sequence_N(red.complex, 2, -6, 6, 4, Exec::serial);
    CHECK(pages[1].dims.size() == 1);
    CHECK(pages[1].dims[{0, 0, 0}] == 1);
    CHECK(pages[1].converged);
}

TEST_CASE("total homology of (C, d_+ + d_v) for the 2-unlink") {
    auto red = make("b=2;", Variant::reduced_edge, ParamPoly{});
    auto dims = total_homology_plus_vert(red.complex, -2, 10, Exec::serial);
    // towers: (gr_+, gr'_{-1}) = (0, 2m) and (-1, 2m+2), raw gradings
    CHECK(dims[{0, 0}] == 1);
    CHECK(dims[{0, 2}] == 1);
    CHECK(dims[{-1, 2}] == 1);
    CHECK(dims[{-1, 4}] == 1);
    CHECK(dims.count({-1, 0}) == 0);
}
