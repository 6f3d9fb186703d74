#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "krh/diagram.hpp"

#include <random>
#include <set>

using namespace krh;

TEST_CASE("braid word parsing and formatting") {
    BraidWord w = BraidWord::parse("b=3; w=1 -2 s1 2");
    CHECK(w.strands == 3);
    REQUIRE(w.letters.size() == 4);
    CHECK(w.letters[0].kind == BraidLetter::positive);
    CHECK(w.letters[1].kind == BraidLetter::negative);
    CHECK(w.letters[1].column == 2);
    CHECK(w.letters[2].kind == BraidLetter::singular);
    CHECK(BraidWord::parse(w.format()) == w);

    BraidWord u = BraidWord::parse("b=1;");
    CHECK(u.strands == 1);
    CHECK(u.letters.empty());
    CHECK_THROWS_AS(BraidWord::parse("b=2; w=5"), error);
}

TEST_CASE("close_braid basics") {
    // unknot: a single edge with a single mark
    TangleDiagram u = close_braid(BraidWord::parse("b=1;"));
    CHECK(u.num_edges == 1);
    REQUIRE(u.vertices.size() == 1);
    CHECK(u.vertices[0].kind == Vertex::mark);
    CHECK(u.closed());

    BraidWord tref = BraidWord::parse("b=2; w=1 1 1");
    CHECK(tref.writhe() == 3);
    TangleDiagram d = close_braid(tref);
    CHECK(d.num_edges == 8);
    CHECK(d.num_crossings() == 3);
    CHECK(d.link_components() == 1);

    BraidWord fig8 = BraidWord::parse("b=3; w=1 -2 1 -2");
    CHECK(fig8.writhe() == 0);
    CHECK(close_braid(fig8).link_components() == 1);

    // Hopf link has two components
    CHECK(close_braid(BraidWord::parse("b=2; w=1 1")).link_components() == 2);
}

TEST_CASE("edge ring free variable count") {
    // unknot: R = Q[X1]
    auto u = close_braid(BraidWord::parse("b=1;"));
    auto pres = edge_ring(u);
    CHECK(pres.free_vars.size() == 1);
    CHECK(pres.eliminated.empty());

    // single singular crossing, open: three free variables
    TangleDiagram ds;
    ds.num_edges = 4;
    ds.vertices.push_back(Vertex{Vertex::crossing_sing, {1, 2}, {3, 4}});
    ds.ends_in = {1, 2};
    ds.ends_out = {3, 4};
    ds.validate();
    CHECK(edge_ring(ds).free_vars.size() == 3);

    // trefoil closure: E - V + C
    auto t = close_braid(BraidWord::parse("b=2; w=1 1 1"));
    int expect = t.num_edges - static_cast<int>(t.vertices.size()) + 1;
    CHECK(static_cast<int>(edge_ring(t).free_vars.size()) == expect);

    // every relator maps to zero under elimination
    auto check_relators = [](const TangleDiagram& d) {
        auto p = edge_ring(d);
        for (auto& v : d.vertices) {
            MultiPoly r;
            for (int e : v.out) r += MultiPoly::var(e);
            for (int e : v.in) r += -MultiPoly::var(e);
            CHECK(p.to_free(r).is_zero());
        }
    };
    check_relators(t);
    check_relators(close_braid(BraidWord::parse("b=3; w=1 -2 1 -2")));
}

TEST_CASE("edge ring count on randomized diagrams") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        int b = 2 + static_cast<int>(rng() % 3);
        int len = 1 + static_cast<int>(rng() % 6);
        BraidWord w;
        w.strands = b;
        for (int i = 0; i < len; ++i) {
            BraidLetter l;
            l.column = 1 + static_cast<int>(rng() % (b - 1));
            int k = static_cast<int>(rng() % 3);
            l.kind = k == 0   ? BraidLetter::positive
                     : k == 1 ? BraidLetter::negative
                              : BraidLetter::singular;
            w.letters.push_back(l);
        }
        auto d = close_braid(w);
        auto pres = edge_ring(d);
        int expect = d.num_edges - static_cast<int>(d.vertices.size()) +
                     d.closed_graph_components();
        CHECK(static_cast<int>(pres.free_vars.size()) == expect);
    }
}

TEST_CASE("moy states") {
    auto states0 = moy_states(BraidWord::parse("b=1;"));
    REQUIRE(states0.size() == 1);
    CHECK(states0[0].weight == 0);

    auto states = moy_states(BraidWord::parse("b=2; w=1 1 1"));
    CHECK(states.size() == 8);
    std::map<int, int> weight_count;
    for (auto& s : states) ++weight_count[s.weight];
    CHECK(weight_count[0] == 1);
    CHECK(weight_count[1] == 3);
    CHECK(weight_count[2] == 3);
    CHECK(weight_count[3] == 1);

    auto neg = moy_states(BraidWord::parse("b=2; w=-1"));
    REQUIRE(neg.size() == 2);
    std::set<int> ws{neg[0].weight, neg[1].weight};
    CHECK(ws == std::set<int>{-1, 0});

    CHECK_THROWS_AS(moy_states(BraidWord::parse("b=2; w=s1")), error);
}

TEST_CASE("wu complexity") {
    CHECK(wu_complexity(ColumnWord{0, {}}) == 0);
    CHECK(wu_complexity(ColumnWord{1, {}}) == 1);
    CHECK(wu_complexity(ColumnWord{2, {1}}) == 3);
}

TEST_CASE("find_moy_move basics") {
    // single circle: move O
    MoyMove m = find_moy_move(ColumnWord{1, {}});
    CHECK(m.type == MoyMove::O);

    // two stacked singular crossings: move II available
    MoyMove m2 = find_moy_move(ColumnWord{2, {1, 1}});
    CHECK((m2.type == MoyMove::II || m2.type == MoyMove::I));

    // theta: single crossing on two strands is a move I region
    MoyMove m1 = find_moy_move(ColumnWord{2, {1}});
    CHECK(m1.type == MoyMove::I);
}

TEST_CASE("moy moves strictly decrease complexity") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        int b = 1 + static_cast<int>(rng() % 4);
        int len = b > 1 ? static_cast<int>(rng() % 9) : 0;
        ColumnWord g;
        g.strands = b;
        for (int i = 0; i < len; ++i) g.columns.push_back(1 + static_cast<int>(rng() % (b - 1)));
        // walk the recursion all the way down
        std::vector<ColumnWord> stack{g};
        int guard = 0;
        while (!stack.empty() && ++guard < 4000) {
            ColumnWord cur = stack.back();
            stack.pop_back();
            if (cur.strands == 0) continue;
            MoyMove mv = find_moy_move(cur);
            REQUIRE(mv.type != MoyMove::none);
            int before = wu_complexity(cur);
            switch (mv.type) {
                case MoyMove::O: {
                    auto next = delete_strand(cur, mv.strand, {});
                    CHECK(wu_complexity(next) < before);
                    stack.push_back(next);
                    break;
                }
                case MoyMove::I: {
                    auto next = delete_strand(cur, mv.strand, mv.positions);
                    CHECK(wu_complexity(next) < before);
                    stack.push_back(next);
                    break;
                }
                case MoyMove::II: {
                    int c = cur.columns[mv.positions[0]];
                    auto next = replace_positions(cur, mv.positions, {c});
                    CHECK(wu_complexity(next) < before);
                    stack.push_back(next);
                    break;
                }
                case MoyMove::III: {
                    int c1 = cur.columns[mv.positions[0]];
                    for (auto& repl : std::vector<std::vector<int>>{
                             {c1 - 1, c1, c1 - 1}, {c1}, {c1 - 1}}) {
                        auto next = replace_positions(cur, mv.positions, repl);
                        CHECK(wu_complexity(next) < before);
                        stack.push_back(next);
                    }
                    break;
                }
                default: break;
            }
        }
        CHECK(guard < 4000);
    }
}

TEST_CASE("surgeries") {
    auto t = close_braid(BraidWord::parse("b=2; w=1 1 1"));

    // insert then remove a mark recovers the diagram shape
    auto marked = insert_mark(t, 3);
    CHECK(marked.num_edges == t.num_edges + 1);
    int mark_vertex = -1;
    for (size_t i = 0; i < marked.vertices.size(); ++i)
        if (marked.vertices[i].kind == Vertex::mark && marked.vertices[i].in[0] == 3 &&
            marked.vertices[i].out[0] == static_cast<int>(marked.num_edges))
            mark_vertex = static_cast<int>(i);
    REQUIRE(mark_vertex >= 0);
    auto back = remove_mark(marked, mark_vertex);
    CHECK(back.num_edges == t.num_edges);
    CHECK(back.num_crossings() == t.num_crossings());

    // mirror of the trefoil word
    BraidWord tw = BraidWord::parse("b=2; w=1 1 1");
    BraidWord mtw = tw.mirrored();
    for (auto& l : mtw.letters) CHECK(l.kind == BraidLetter::negative);

    // connected sum of two 2-strand trefoils: 3 strands, Fig. 7 layout
    BraidWord cs = connected_sum(tw, tw);
    CHECK(cs.strands == 3);
    CHECK(cs.letters.size() == 6);
    CHECK(cs.letters[3].column == 2);

    // disjoint union and identify_ends keep the edge ring consistent
    TangleDiagram ds;
    ds.num_edges = 4;
    ds.vertices.push_back(Vertex{Vertex::crossing_sing, {1, 2}, {3, 4}});
    ds.ends_in = {1, 2};
    ds.ends_out = {3, 4};
    auto du = disjoint_union(ds, ds);
    CHECK(du.num_edges == 8);
    CHECK(edge_ring(du).free_vars.size() == 6);
    auto glued = identify_ends(du, 3, 5);
    CHECK(edge_ring(glued).free_vars.size() == 5);
    CHECK_THROWS_AS(identify_ends(du, 1, 5), error);
}

TEST_CASE("diagram connected sum splice") {
    auto a = close_braid(BraidWord::parse("b=2; w=1 1 1"));
    auto b = close_braid(BraidWord::parse("b=2; w=1 1 1"));
    auto c = connected_sum(a, 1, b, 1);
    CHECK(c.num_edges == a.num_edges + b.num_edges);
    CHECK(c.link_components() == 1);
    CHECK(c.num_crossings() == 6);
}
