#include <tropicount/elliptic_direct.hpp>
#include <tropicount/formula.hpp>

#include <gtest/gtest.h>

using namespace tropicount;

TEST(EllipticDirect, LeafCounts) {
    EXPECT_EQ(elliptic_leaf_count(1, 1, 1), 9);
    EXPECT_EQ(elliptic_leaf_count(0, 1, 1), 7);
    EXPECT_EQ(elliptic_leaf_count(1, 3, 0), 17);
}

TEST(EllipticDirect, MatchesFormulaOnF0) {
    const Int expected = elliptic_count(0, 1, 1, default_provider()).total;
    for (std::uint64_t seed : {1u, 2u, 3u})
        for (const Rational& j : {Rational(7, 3), Rational(101, 7)}) {
            auto r = count_elliptic_direct(0, 1, 1, j, seed);
            EXPECT_EQ(r.value, expected) << "seed " << seed << " j " << j;
            EXPECT_GT(r.types_solved, 0u);
        }
}

TEST(EllipticDirect, MatchesFormulaOnF1) {
    const Int expected = elliptic_count(1, 1, 1, default_provider()).total;
    auto r = count_elliptic_direct(1, 1, 1, Rational(13, 5), 4);
    EXPECT_EQ(r.value, expected);
    EXPECT_EQ(r.by_deficiency[0] + r.by_deficiency[1] + r.by_deficiency[2], Rational(r.value));
}

TEST(EllipticDirect, WitnessesAreWellSpaced) {
    auto r = count_elliptic_direct(0, 1, 1, Rational(7, 3), 5, 11, true);
    EXPECT_EQ(r.witnesses.size(), r.curves);
    for (const auto& w : r.witnesses) {
        EXPECT_TRUE(check_balancing(w.curve).ok);
        EXPECT_TRUE(is_well_spaced(w.curve));
        EXPECT_EQ(w.curve.genus(), 1);
    }
}

TEST(EllipticDirect, Preconditions) {
    EXPECT_THROW(count_elliptic_direct(1, 3, 0, Rational(1), 1), std::invalid_argument);
    EXPECT_THROW(count_elliptic_direct(1, 1, 1, Rational(0), 1), std::invalid_argument);
    EXPECT_THROW(count_elliptic_direct(1, 1, 1, Rational(-2), 1), std::invalid_argument);
}
