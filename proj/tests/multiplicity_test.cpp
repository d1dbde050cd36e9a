#include <tropicount/multiplicity.hpp>

#include <gtest/gtest.h>

using namespace tropicount;

namespace {

// Marked point on a new vertex subdividing an end of v.
void marked_end(TropicalCurve& c, int v, Vec2 vec, int label) {
    int m = c.add_vertex();
    c.add_edge(v, m, vec);
    c.add_end(m, vec);
    c.add_mark(m, label);
}

TropicalCurve line_through_two_points() {
    TropicalCurve c;
    c.add_vertex();
    c.add_end(0, {1, 1});
    marked_end(c, 0, {-1, 0}, 0);
    marked_end(c, 0, {0, -1}, 1);
    return c;
}

// x -(3,0)- u ={(1,0),(2,0)}= v -(3,0)- y
TropicalCurve flat_bigon(std::int64_t w1, std::int64_t w2) {
    TropicalCurve c;
    int x = c.add_vertex(), u = c.add_vertex(), v = c.add_vertex(), y = c.add_vertex();
    const std::int64_t w = w1 + w2;
    c.add_edge(x, u, {w, 0});
    c.add_edge(u, v, {w1, 0});
    c.add_edge(u, v, {w2, 0});
    c.add_edge(v, y, {w, 0});
    marked_end(c, x, {-w + 1, 1}, 0);
    c.add_end(x, {-1, -1});
    marked_end(c, y, {w - 1, -1}, 1);
    marked_end(c, y, {1, 1}, 2);
    return c;
}

// x -(L,0)- p -(L,0)- y with a contracted loop at p
TropicalCurve loop_on_edge(std::int64_t L) {
    TropicalCurve c;
    int x = c.add_vertex(), p = c.add_vertex(), y = c.add_vertex();
    c.add_edge(x, p, {L, 0});
    c.add_edge(p, p, {0, 0});
    c.add_edge(p, y, {L, 0});
    marked_end(c, x, {-L + 1, 1}, 0);
    c.add_end(x, {-1, -1});
    marked_end(c, y, {L - 1, -1}, 1);
    marked_end(c, y, {1, 1}, 2);
    return c;
}

} // namespace

TEST(Genus0, LineThroughTwoPoints) {
    EXPECT_EQ(multiplicity_genus0(line_through_two_points()), 1);
}

TEST(Genus0, NonRigidRejected) {
    auto c = line_through_two_points();
    c.marks.pop_back();
    try {
        multiplicity_genus0(c);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "non-rigid configuration");
    }
}

TEST(Genus0, HeavyEdgeScalesDeterminant) {
    // two trivalent vertices joined by a weight-2 edge; all paths to mark 2 cross it
    TropicalCurve c;
    int a = c.add_vertex(), b = c.add_vertex();
    c.add_edge(a, b, {2, 0});
    marked_end(c, a, {-1, 1}, 0);
    marked_end(c, a, {-1, -1}, 1);
    marked_end(c, b, {1, 1}, 2);
    c.add_end(b, {1, -1});
    auto m = multiplicity_genus0(c);
    EXPECT_EQ(m % 2, 0);
    EXPECT_EQ(m, vertex_product_multiplicity(c));
}

TEST(CellWeight, FlatCycle) {
    EXPECT_EQ(cell_weight(flat_bigon(1, 2)), Rational(1));
    EXPECT_EQ(cell_weight(flat_bigon(2, 2)), Rational(1));
    EXPECT_EQ(cell_weight(flat_bigon(1, 1)), Rational(1, 2));
    EXPECT_EQ(flat_cycle_weight(2, 2, true), Rational(2));
}

TEST(CellWeight, LoopOnEdge) {
    EXPECT_EQ(cell_weight(loop_on_edge(3)), Rational(1));
    EXPECT_EQ(cell_weight(loop_on_edge(1)), Rational(0));
}

TEST(CellWeight, LoopAtTrivalentVertex) {
    TropicalCurve c;
    c.add_vertex();
    c.add_edge(0, 0, {0, 0});
    c.add_end(0, {-3, 0});
    c.add_end(0, {0, -3});
    c.add_end(0, {3, 3});
    EXPECT_EQ(cell_weight(c), Rational(1));
    TropicalCurve d;
    d.add_vertex();
    d.add_edge(0, 0, {0, 0});
    d.add_end(0, {-2, 0});
    d.add_end(0, {0, -2});
    d.add_end(0, {2, 2});
    EXPECT_EQ(cell_weight(d), Rational(0));
}

TEST(FlatCycle, FormulaExamples) {
    EXPECT_EQ(flat_cycle_formula(1, 2, 5), 30);
    EXPECT_EQ(flat_cycle_formula(1, 1, 5), 10);
    EXPECT_EQ(flat_cycle_formula(3, 3, 1), 6);
}

TEST(FlatCycle, MatchesRawDeterminant) {
    for (auto [w1, w2] : std::vector<std::pair<int, int>>{{1, 2}, {1, 1}, {2, 2}, {1, 3}, {2, 3}}) {
        auto c = flat_bigon(w1, w2);
        EXPECT_EQ(deficiency(c), 1);
        Int m = multiplicity_flat_cycle(c);
        EXPECT_GT(m, 0);
        EXPECT_EQ(Rational(m), multiplicity_raw(c)) << w1 << ',' << w2;
    }
}

TEST(FlatCycle, MarkedCycleRejected) {
    auto c = flat_bigon(1, 2);
    c.marks[0].vertex = 1;
    try {
        multiplicity_flat_cycle(c);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "unsupported: marked cycle");
    }
}

TEST(ContractedLoop, FormulaExamples) {
    EXPECT_EQ(contracted_loop_formula(1, 4), 4);
    EXPECT_EQ(contracted_loop_formula(2, 1), 2);
    EXPECT_EQ(contracted_loop_formula(0, 7), 0);
}

TEST(ContractedLoop, MatchesRawDeterminant) {
    for (int L = 1; L <= 5; ++L) {
        auto c = loop_on_edge(L);
        EXPECT_EQ(Rational(multiplicity_contracted_loop(c)), multiplicity_raw(c)) << L;
    }
    EXPECT_EQ(multiplicity_contracted_loop(loop_on_edge(1)), 0);
}

TEST(WellSpaced, Multisets) {
    EXPECT_TRUE(minimum_attained_twice({2, 2, 5}));
    EXPECT_FALSE(minimum_attained_twice({1, 2}));
}

TEST(WellSpaced, FlatCycleLengths) {
    auto c = flat_bigon(1, 2);
    for (auto& e : c.edges) e.length = Rational(1);
    EXPECT_TRUE(is_well_spaced(c));
    c.edges[0].length = Rational(2);
    EXPECT_FALSE(is_well_spaced(c));
}

TEST(WellSpaced, PlanarCycleAlways) {
    TropicalCurve tri;
    for (int i = 0; i < 3; ++i) tri.add_vertex();
    tri.add_edge(0, 1, {1, 0});
    tri.add_edge(1, 2, {-1, 1});
    tri.add_edge(2, 0, {0, -1});
    tri.add_end(0, {-1, -1});
    tri.add_end(1, {1, 0});
    tri.add_end(2, {0, 1});
    EXPECT_TRUE(is_well_spaced(tri));
}

TEST(WellSpaced, LoopWithOneLeavingEdge) {
    // 4-valent loop vertex whose edges span two lines: each line has two leaving edges
    TropicalCurve c;
    c.add_vertex();
    c.add_edge(0, 0, {0, 0});
    c.add_end(0, {1, 0});
    c.add_end(0, {0, 1});
    c.add_end(0, {-1, -1});
    EXPECT_TRUE(is_well_spaced(c));
}
