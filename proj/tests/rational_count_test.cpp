#include <tropicount/rational_count.hpp>

#include <gtest/gtest.h>

using namespace tropicount;

TEST(Wdvv, FirstFiveDegrees) {
    const char* expected[] = {"1", "1", "12", "620", "87304"};
    for (int d = 1; d <= 5; ++d) EXPECT_EQ(wdvv_p2(d).get_str(), expected[d - 1]) << "d=" << d;
}

TEST(Wdvv, RejectsNonPositiveDegree) { EXPECT_THROW(wdvv_p2(0), std::invalid_argument); }

TEST(FloorDiagrams, PlaneAgreesWithWdvv) {
    for (int d = 1; d <= 5; ++d) EXPECT_EQ(count_rational(plane_query(d)).value, wdvv_p2(d)) << "d=" << d;
}

TEST(FloorDiagrams, RationalCurvesOnF1) {
    // F_1 degree (a,b) is the plane blown up once; (a,0) gives plane curves of degree a
    for (int d = 1; d <= 4; ++d)
        EXPECT_EQ(count_rational(CountQuery{1, d, 0, Tangency::none(), 0}).value, wdvv_p2(d));
}

TEST(FloorDiagrams, ZeroBidegreeInA) {
    // only fibres: a single line for b = 1, nothing rational for b >= 2
    EXPECT_EQ(count_rational(CountQuery{2, 0, 1, Tangency::none(), 0}).value, 1);
    EXPECT_EQ(count_rational(CountQuery{2, 0, 2, Tangency::none(), 0}).value, 0);
}

TEST(FloorDiagrams, InfeasibleTangency) {
    EXPECT_THROW(count_rational(CountQuery{1, 1, 0, Tangency::single(2), 0}), InfeasibleQuery);
}

TEST(FloorDiagrams, GenusOneRejected) {
    EXPECT_THROW(count_rational(CountQuery{1, 3, 0, Tangency::none(), 1}), std::invalid_argument);
}

TEST(BruteForce, AgreesWithFloorDiagrams) {
    // the 11-leaf queries live in the acceptance run
    const CountQuery queries[] = {
        {1, 1, 1, Tangency::none(), 0},    {3, 1, 0, Tangency::none(), 0},   {0, 1, 2, Tangency::single(2), 0},
        {1, 1, 1, Tangency::single(1), 0}, {0, 1, 1, Tangency::none(), 0},   {2, 1, 0, Tangency::none(), 0},
        {1, 1, 0, Tangency::none(), 0},
    };
    for (const auto& q : queries) {
        ASSERT_LE(leaf_count(q), 11) << q.key();
        EXPECT_EQ(brute_force_enumerate(q).value, count_rational(q).value) << q.key();
    }
}

TEST(BruteForce, IndependentOfConfiguration) {
    const CountQuery q{0, 1, 2, Tangency::single(2), 0};
    const Int v = brute_force_enumerate(q, 11, 1).value;
    EXPECT_EQ(brute_force_enumerate(q, 11, 7).value, v);
    EXPECT_EQ(brute_force_enumerate(q, 11, 42).value, v);
}

TEST(BruteForce, RespectsLeafCap) {
    EXPECT_THROW(brute_force_enumerate(plane_query(3)), std::invalid_argument);
}

TEST(BruteForce, WitnessesCarryMultiplicities) {
    auto r = brute_force_enumerate(CountQuery{0, 1, 2, Tangency::single(2), 0}, 11, 1, true);
    Int sum = 0;
    for (const auto& w : r.witnesses) {
        EXPECT_TRUE(check_balancing(w.curve).ok);
        sum += w.multiplicity;
    }
    EXPECT_EQ(sum, r.value);
}

TEST(Query, PointCounts) {
    EXPECT_EQ((CountQuery{1, 3, 0, Tangency::none(), 0}.num_points()), 8);
    EXPECT_EQ((CountQuery{2, 1, 3, Tangency::single(2), 0}.num_points()), 2 * 3 + 4 - 1 - 1);
    EXPECT_EQ((CountQuery{2, 1, 3, Tangency::pair(1, 1), 0}.num_points()), 2 * 3 + 4 - 1);
}

TEST(Query, JsonRoundTrip) {
    CountRecord r;
    r.query = CountQuery{2, 1, 3, Tangency::pair(2, 1), 0};
    r.value = Int("123456789012345678901234567890");
    r.method = CountMethod::brute_force;
    r.seed = 9;
    auto back = record_from_json(to_json(r));
    EXPECT_EQ(back.query.key(), r.query.key());
    EXPECT_EQ(back.value, r.value);
    EXPECT_EQ(back.method, r.method);
    EXPECT_EQ(back.seed, 9u);
}

TEST(Configuration, SeededAndDistinct) {
    auto a = random_configuration(6, 3), b = random_configuration(6, 3), c = random_configuration(6, 4);
    ASSERT_EQ(a.points.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(a.points[i].x, b.points[i].x);
        EXPECT_EQ(a.points[i].y, b.points[i].y);
    }
    bool differs = false;
    for (std::size_t i = 0; i < 6; ++i) differs |= a.points[i].x != c.points[i].x;
    EXPECT_TRUE(differs);
}
