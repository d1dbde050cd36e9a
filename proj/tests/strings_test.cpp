#include <tropicount/curve_suites.hpp>

#include <gtest/gtest.h>

#include <chrono>

using namespace tropicount;

namespace {

void expect_suite(CurveFamily f, std::uint64_t seed) {
    auto r = run_suite(f, 200, seed);
    EXPECT_TRUE(r.ok(200)) << to_string(f) << ": " << r.agreed << "/" << r.checked << " after " << r.draws << " draws"
                           << (r.failures.empty() ? "" : ", first: " + r.failures.front());
}

} // namespace

TEST(Suites, FlatCycle) { expect_suite(CurveFamily::flat_cycle, 11); }
TEST(Suites, ContractedLoop) { expect_suite(CurveFamily::contracted_loop, 12); }
TEST(Suites, StringThroughCycle) { expect_suite(CurveFamily::string_cycle, 13); }
TEST(Suites, StringWithFlatCycle) { expect_suite(CurveFamily::string_flat_cycle, 14); }

TEST(Suites, OtherSeeds) {
    for (auto f : {CurveFamily::flat_cycle, CurveFamily::contracted_loop, CurveFamily::string_cycle})
        EXPECT_TRUE(run_suite(f, 50, 1234).ok(50)) << to_string(f);
}

TEST(Generators, CurvesAreBalancedAndWellSpaced) {
    std::mt19937_64 rng(3);
    for (auto f : {CurveFamily::flat_cycle, CurveFamily::contracted_loop, CurveFamily::string_cycle,
                   CurveFamily::string_flat_cycle}) {
        int seen = 0;
        for (int i = 0; i < 2000 && seen < 20; ++i) {
            auto c = draw_curve(f, rng);
            if (!c) continue;
            ++seen;
            EXPECT_TRUE(check_balancing(*c).ok);
            EXPECT_TRUE(is_well_spaced(*c));
            EXPECT_EQ(c->genus(), 1);
        }
        EXPECT_EQ(seen, 20) << to_string(f);
    }
}

TEST(Strings, DecompositionAddsUp) {
    std::mt19937_64 rng(21);
    int seen = 0;
    for (int i = 0; i < 5000 && seen < 40; ++i) {
        auto c = random_string_curve(rng, i % 2 == 1);
        if (!c) continue;
        ++seen;
        auto d = decompose_string_curve(*c);
        EXPECT_EQ(d.kind, i % 2 == 1 ? 3 : 2);
        EXPECT_GE(d.w0_upper, d.w0_lower);
        std::int64_t sw = 0;
        for (const auto& sc : d.components)
            for (auto w : sc.weights) sw += w;
        EXPECT_EQ(sw, d.n);
        EXPECT_FALSE(d.string.closed);
        EXPECT_EQ(d.components.front().weights.size(), d.kind == 2 ? 2u : 1u);
    }
    EXPECT_EQ(seen, 40);
}

TEST(Strings, CycleLengthConventions) {
    std::mt19937_64 rng(5);
    int ones = 0, heavier = 0;
    for (int i = 0; i < 5000 && (ones < 10 || heavier < 10); ++i) {
        auto c = random_string_curve(rng, false);
        if (!c) continue;
        auto d = decompose_string_curve(*c);
        const Rational w = multiplicity_raw(*c, std::nullopt, CycleLength::weighted);
        const Rational a = multiplicity_raw(*c);
        // abstract length: (w0' + w0'') in place of 2 w0' w0''
        EXPECT_EQ(a * Rational(2 * d.w0_upper * d.w0_lower), w * Rational(d.w0_upper + d.w0_lower));
        if (d.w0_upper == 1 && d.w0_lower == 1) {
            ++ones;
            EXPECT_EQ(w, a);
        } else {
            ++heavier;
            EXPECT_NE(w, a);
        }
    }
    EXPECT_GE(ones, 10);
    EXPECT_GE(heavier, 10);
}

TEST(Strings, FindsOnlyMarkFreePaths) {
    TropicalCurve c;
    int u = c.add_vertex(), v = c.add_vertex();
    c.add_edge(u, v, {1, 0});
    c.add_end(u, {-1, 0});
    c.add_end(u, {0, -1});
    c.add_end(v, {1, 1});
    c.add_end(v, {-1, 0});
    EXPECT_EQ(find_strings(c).size(), 6u);
    c.add_mark(v, 0);
    EXPECT_EQ(find_strings(c).size(), 1u);
}

TEST(Strings, RejectsCurvesWithoutMovableString) {
    TropicalCurve c;
    c.add_vertex();
    c.add_edge(0, 0, {0, 0});
    c.add_end(0, {1, 0});
    c.add_end(0, {-1, 0});
    EXPECT_THROW(decompose_string_curve(c), std::invalid_argument);
}

TEST(Suites, RunsQuickly) {
    auto t0 = std::chrono::steady_clock::now();
    for (auto f : {CurveFamily::flat_cycle, CurveFamily::contracted_loop, CurveFamily::string_cycle})
        run_suite(f, 200, 99);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
}
