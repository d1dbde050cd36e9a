#include <tropicount/polygon.hpp>

#include <gtest/gtest.h>

using namespace tropicount;

namespace {

std::vector<Vec2> verts(const LatticePolygon& p) { return p.vertices(); }

} // namespace

TEST(PolygonOfDegree, Trapezoid) {
    auto p = polygon_of_degree(2, 2, 1);
    std::vector<Vec2> want{{0, 0}, {2, 0}, {2, 1}, {0, 5}};
    EXPECT_EQ(verts(p), want);
}

TEST(PolygonOfDegree, CollapsesToTriangle) {
    auto p = polygon_of_degree(1, 3, 0);
    std::vector<Vec2> want{{0, 0}, {3, 0}, {0, 3}};
    EXPECT_EQ(verts(p), want);
}

TEST(PolygonOfDegree, Rectangle) {
    std::vector<Vec2> want{{0, 0}, {2, 0}, {2, 3}, {0, 3}};
    EXPECT_EQ(verts(polygon_of_degree(0, 2, 3)), want);
}

TEST(PolygonOfDegree, RejectsNegative) {
    EXPECT_THROW(polygon_of_degree(-1, 1, 1), std::invalid_argument);
    EXPECT_THROW(polygon_of_degree(1, 1, -2), std::invalid_argument);
}

TEST(Degree, StandardEnds) {
    auto d = degree_standard(2, 2, 1);
    std::map<Vec2, int> count;
    for (const auto& e : d.ends()) {
        EXPECT_EQ(e.weight, 1);
        count[e.direction]++;
    }
    EXPECT_EQ(count[Vec2(2, 1)], 2);
    EXPECT_EQ(count[Vec2(1, 0)], 1);
    EXPECT_EQ(count[Vec2(0, -1)], 2);
    EXPECT_EQ(count[Vec2(-1, 0)], 5);
    EXPECT_TRUE(d.weighted_sum().is_zero());
}

TEST(Degree, SmallStandard) {
    auto d = degree_standard(1, 1, 1);
    std::vector<WeightedEnd> want{{{-1, 0}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}};
    EXPECT_EQ(d.ends(), want);
}

TEST(Degree, RelativeSingle) {
    auto d = degree_relative(1, 1, 2, Tangency::single(2));
    std::vector<WeightedEnd> want{{{-1, 0}, 1}, {{-1, 0}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{1, 0}, 2}, {{1, 1}, 1}};
    EXPECT_EQ(d.ends(), want);
    EXPECT_TRUE(d.weighted_sum().is_zero());
}

TEST(Degree, RelativePairOnFiberClass) {
    auto d = degree_relative(2, 0, 3, Tangency::pair(1, 1));
    ASSERT_EQ(d.num_ends(), 6u);
    int right = 0, left = 0;
    for (const auto& e : d.ends()) {
        EXPECT_EQ(e.weight, 1);
        if (e.direction == Vec2(1, 0)) ++right;
        if (e.direction == Vec2(-1, 0)) ++left;
    }
    EXPECT_EQ(right, 3);
    EXPECT_EQ(left, 3);
    EXPECT_TRUE(d.degenerate());
}

TEST(Degree, RelativeRejectsLargeTangency) {
    try {
        degree_relative(1, 1, 1, Tangency::single(2));
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "tangency exceeds bidegree");
    }
}

TEST(Degree, RelativeSymmetricInPair) {
    EXPECT_EQ(degree_relative(2, 1, 4, Tangency::pair(1, 2)), degree_relative(2, 1, 4, Tangency::pair(2, 1)));
}

TEST(Interior, Examples) {
    EXPECT_EQ(interior_lattice_points(LatticePolygon({{0, 0}, {3, 0}, {0, 3}})), 1);
    EXPECT_EQ(interior_lattice_points(polygon_of_degree(2, 1, 1)), 0);
    EXPECT_EQ(interior_lattice_points(polygon_of_degree(1, 2, 2)), 2);
}

TEST(Pick, Examples) {
    auto sq = pick_data(LatticePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    EXPECT_EQ(sq.area, Rational(1));
    EXPECT_EQ(sq.boundary_points, 4);
    EXPECT_EQ(sq.interior_points, 0);
    auto tri = pick_data(LatticePolygon({{0, 0}, {2, 0}, {0, 2}}));
    EXPECT_EQ(tri.area, Rational(2));
    EXPECT_EQ(tri.boundary_points, 6);
    EXPECT_EQ(tri.interior_points, 0);
}

TEST(Pick, ParallelogramVariant) {
    LatticePolygon p({{0, 0}, {2, 1}, {3, 3}, {1, 2}});
    auto d = pick_data(p);
    EXPECT_EQ(d.area, Rational(3));
    // non-vertex boundary points
    const auto b = d.boundary_points - 4;
    EXPECT_EQ(d.area, Rational(d.interior_points) + fraction(b, 2) + 1);
    EXPECT_EQ(parallelogram_pick_area(p), Rational(3));
}

TEST(Pick, GridAgreesWithScan) {
    for (int n = 0; n <= 3; ++n)
        for (int a = 1; a <= 6; ++a)
            for (int b = 0; b <= 6; ++b) {
                if (n == 0 && b == 0) continue;
                auto p = polygon_of_degree(n, a, b);
                EXPECT_EQ(interior_lattice_points_scan(p), interior_lattice_points_pick(p));
                if (n == 1) EXPECT_EQ(2 * interior_lattice_points_scan(p), a * a + 2 * a * b - 3 * a - 2 * b + 2);
            }
}

TEST(Duality, EdgeLengthsMatchEndWeights) {
    for (int n = 0; n <= 3; ++n)
        for (int a = 1; a <= 6; ++a)
            for (int b = 0; b <= 6; ++b) {
                if (n == 0 && b == 0) continue;
                auto p = polygon_of_degree(n, a, b);
                auto d = degree_standard(n, a, b);
                std::map<Vec2, std::int64_t> by_dir;
                for (const auto& e : d.ends()) by_dir[e.direction] += e.weight;
                // outward normal of edge (dx,dy) of a ccw polygon is (dy,-dx)
                std::map<Vec2, std::int64_t> by_edge;
                for (std::size_t i = 0; i < p.vertices().size(); ++i) {
                    Vec2 e = p.edge(i);
                    by_edge[primitive(Vec2(e.y, -e.x))] += lattice_length(e);
                }
                std::erase_if(by_dir, [](const auto& kv) { return kv.second == 0; });
                EXPECT_EQ(by_dir, by_edge) << n << ' ' << a << ' ' << b;
            }
}

TEST(Polygon, JsonRoundTrip) {
    auto p = polygon_of_degree(2, 2, 1);
    EXPECT_EQ(polygon_from_json(to_json(p)).vertices(), p.vertices());
    EXPECT_EQ(to_json(degree_standard(1, 1, 1))["ends"].size(), 5u);
}

TEST(Polygon, RejectsDegenerate) {
    EXPECT_THROW(LatticePolygon({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
    EXPECT_THROW(polygon_of_degree(0, 2, 0), std::invalid_argument);
    EXPECT_THROW(LatticePolygon({{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);
}
