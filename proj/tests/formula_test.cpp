#include <tropicount/formula.hpp>

#include <gtest/gtest.h>

using namespace tropicount;

TEST(PlaneElliptic, FirstFiveDegrees) {
    auto counts = wdvv_provider();
    const char* expected[] = {"0", "0", "12", "1860", "523824"};
    for (int d = 1; d <= 5; ++d) EXPECT_EQ(p2_elliptic(d, counts).get_str(), expected[d - 1]) << "d=" << d;
}

TEST(PlaneElliptic, MatchesGeneralFormulaOnF1) {
    auto wdvv = wdvv_provider();
    auto floors = default_provider();
    for (int d = 1; d <= 4; ++d) {
        EXPECT_EQ(elliptic_count(1, d, 0, floors).total, p2_elliptic(d, wdvv)) << "d=" << d;
    }
}

TEST(F1Elliptic, MatchesGeneralFormula) {
    auto counts = default_provider();
    for (int a = 1; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            auto r = elliptic_count(1, a, b, counts);
            EXPECT_EQ(r.total, f1_elliptic(a, b, counts)) << a << "," << b;
            EXPECT_TRUE(r.terms.empty());
        }
}

TEST(F1Elliptic, InteriorCoefficient) {
    for (int a = 1; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            const std::int64_t num = a * a + 2 * a * b - 3 * a - 2 * b + 2;
            EXPECT_EQ(interior_lattice_points(polygon_of_degree(1, a, b)), num / 2) << a << "," << b;
        }
}

TEST(Terms, NoneBelowN2) {
    for (int n = 0; n <= 1; ++n) EXPECT_TRUE(enumerate_terms(n, 3, 2).empty());
}

TEST(Terms, PointSplitsAddUp) {
    for (int n = 2; n <= 4; ++n)
        for (int a = 1; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b) {
                const std::int64_t N = 2 * b + (n + 2) * a - 1;
                for (const auto& t : enumerate_terms(n, a, b)) {
                    std::int64_t s = 0, sa = 0, sb = 0, sw = t.w0_upper + t.w0_lower;
                    for (auto p : t.point_splits) s += p;
                    for (auto [x, y] : t.splits) {
                        sa += x;
                        sb += y;
                    }
                    for (auto w : t.side_weights) sw += w;
                    EXPECT_EQ(s, N);
                    EXPECT_EQ(sa, a - 1);
                    EXPECT_EQ(sb, b + n);
                    EXPECT_EQ(sw, n);
                    EXPECT_GE(t.w0_upper, t.w0_lower);
                    EXPECT_EQ(t.coefficient, multinomial(N, t.point_splits));
                }
            }
}

TEST(Terms, RowsOnF2) {
    auto terms = enumerate_terms(2, 1, 1);
    ASSERT_FALSE(terms.empty());
    for (const auto& t : terms) {
        EXPECT_EQ(t.w0_upper, 1);
        EXPECT_EQ(t.w0_lower, 1);
        EXPECT_EQ(t.k, 0);
    }
}

TEST(Terms, RejectsBadBidegree) {
    EXPECT_THROW(enumerate_terms(2, 0, 1), std::invalid_argument);
    EXPECT_THROW(enumerate_terms(-1, 1, 1), std::invalid_argument);
}

TEST(EllipticCount, SummandsAddUp) {
    auto counts = default_provider();
    for (int n = 2; n <= 3; ++n)
        for (int a = 1; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) {
                auto r = elliptic_count(n, a, b, counts);
                EXPECT_EQ(r.total, r.summand1 + r.summand2 + r.summand3);
                Int s2 = 0, s3 = 0;
                for (const auto& tv : r.terms) {
                    EXPECT_EQ(tv.value, term_value(tv.term, n, counts));
                    (tv.term.row == 2 ? s2 : s3) += tv.value;
                }
                EXPECT_EQ(s2, r.summand2);
                EXPECT_EQ(s3, r.summand3);
            }
}

TEST(EllipticCount, ZeroWithoutInteriorPoints) {
    auto counts = default_provider();
    EXPECT_EQ(elliptic_count(1, 1, 1, counts).total, 0);
    EXPECT_EQ(elliptic_count(0, 1, 1, counts).total, 0);
    EXPECT_EQ(elliptic_count(0, 1, 2, counts).total, 0);
}

TEST(Multinomial, Values) {
    EXPECT_EQ(multinomial(5, {2, 3}), 10);
    EXPECT_EQ(multinomial(6, {1, 2, 3}), 60);
    EXPECT_THROW(multinomial(4, {1, 2}), std::invalid_argument);
}

TEST(Output, JsonAndCsv) {
    auto r = elliptic_count(2, 1, 1, default_provider());
    auto j = to_json(r, true);
    EXPECT_EQ(j["total"], r.total.get_str());
    EXPECT_EQ(j["terms"].size(), r.terms.size());
    EXPECT_FALSE(to_json(r, false).contains("terms"));
    EXPECT_EQ(csv_header(), "n,a,b,summand1,summand2,summand3,total\n");
    EXPECT_EQ(to_csv_row(r).substr(0, 6), "2,1,1,");
}
