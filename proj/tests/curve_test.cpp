#include <tropicount/curve.hpp>

#include <gtest/gtest.h>

using namespace tropicount;

namespace {

TropicalCurve star(std::vector<Vec2> ends) {
    TropicalCurve c;
    c.add_vertex();
    for (auto v : ends) c.add_end(0, v);
    return c;
}

} // namespace

TEST(Balancing, Stars) {
    EXPECT_TRUE(check_balancing(star({{1, 0}, {0, 1}, {-1, -1}})).ok);
    auto bad = check_balancing(star({{1, 0}, {0, 1}}));
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(bad.failing_vertices, std::vector<int>{0});
    EXPECT_TRUE(check_balancing(star({{2, 0}, {-2, 0}, {0, 1}, {0, -1}})).ok);
}

TEST(Balancing, EdgeGeometry) {
    TropicalCurve c;
    c.add_vertex();
    c.add_vertex();
    int e = c.add_edge(0, 1, {2, 1});
    c.edges[e].length = Rational(1, 2);
    c.positions[0] = Point{0, 0};
    c.positions[1] = Point{1, Rational(1, 2)};
    c.add_end(0, {-2, -1});
    c.add_end(1, {2, 1});
    EXPECT_TRUE(check_balancing(c).ok);
    c.positions[1] = Point{1, 1};
    EXPECT_FALSE(check_balancing(c).ok);
}

TEST(Deficiency, ThreeKinds) {
    TropicalCurve loop;
    loop.add_vertex();
    loop.add_edge(0, 0, {0, 0});
    loop.add_end(0, {1, 0});
    loop.add_end(0, {-1, 0});
    EXPECT_EQ(deficiency(loop), 2);

    TropicalCurve flat;
    flat.add_vertex();
    flat.add_vertex();
    flat.add_edge(0, 1, {1, 0});
    flat.add_edge(0, 1, {2, 0});
    flat.add_end(0, {-3, 0});
    flat.add_end(1, {3, 0});
    EXPECT_EQ(deficiency(flat), 1);

    TropicalCurve tri;
    for (int i = 0; i < 3; ++i) tri.add_vertex();
    tri.add_edge(0, 1, {1, 0});
    tri.add_edge(1, 2, {-1, 1});
    tri.add_edge(2, 0, {0, -1});
    tri.add_end(0, {-1, -1});
    tri.add_end(1, {1, 0});
    tri.add_end(2, {0, 1});
    EXPECT_EQ(deficiency(tri), 0);

    TropicalCurve tree = star({{1, 0}, {0, 1}, {-1, -1}});
    EXPECT_THROW(deficiency(tree), std::invalid_argument);
}

TEST(Cycle, FindsAllEdges) {
    TropicalCurve tri;
    for (int i = 0; i < 4; ++i) tri.add_vertex();
    tri.add_edge(0, 1, {1, 0});
    tri.add_edge(1, 2, {-1, 1});
    tri.add_edge(2, 0, {0, -1});
    tri.add_edge(2, 3, {0, 1});
    auto cyc = find_cycle(tri);
    EXPECT_EQ(cyc.edges.size(), 3u);
    EXPECT_EQ(cyc.vertices.size(), 3u);
    Vec2 s;
    for (std::size_t i = 0; i < cyc.edges.size(); ++i) s += tri.edges[cyc.edges[i]].vec * cyc.signs[i];
    EXPECT_TRUE(s.is_zero());
}

TEST(Curve, PlaceVertices) {
    TropicalCurve c;
    for (int i = 0; i < 3; ++i) c.add_vertex();
    c.edges.push_back({0, 1, {1, 0}, Rational(2)});
    c.edges.push_back({1, 2, {0, 3}, Rational(1, 3)});
    ASSERT_TRUE(place_vertices(c, Point{1, 1}));
    EXPECT_EQ(*c.positions[2], (Point{3, 2}));
}

TEST(Curve, JsonRoundTrip) {
    TropicalCurve c;
    c.add_vertex();
    c.add_vertex();
    c.edges.push_back({0, 1, {2, 0}, Rational(3, 2)});
    c.add_end(0, {-2, 0});
    c.add_end(1, {1, 1});
    c.add_end(1, {1, -1});
    c.add_mark(1, 4);
    c.positions[0] = Point{0, 0};
    auto back = curve_from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_EQ(back.edges[0].vec, Vec2(2, 0));
    EXPECT_EQ(*back.edges[0].length, Rational(3, 2));
}

TEST(Curve, JsonRejectsBadInput) {
    EXPECT_THROW(curve_from_json(nlohmann::json::parse(R"({"vertices":[]})")), std::invalid_argument);
    EXPECT_THROW(curve_from_json(nlohmann::json::parse(R"({"vertices":[{}],"edges":[{"ends":[0,3],"direction":[1,0]}]})")),
                 std::invalid_argument);
}
