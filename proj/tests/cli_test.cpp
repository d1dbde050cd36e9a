#include "cli_support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <regex>

using namespace cli_support;
namespace fs = std::filesystem;

TEST(Golden, OutputsMatchByteForByte) {
    const auto cases = golden_cases();
    ASSERT_GE(cases.size(), 10u);
    for (const auto& c : cases) {
        auto r = run(c.args);
        EXPECT_EQ(r.status, 0) << c.name;
        EXPECT_EQ(r.out, slurp(source_dir / "tests/golden" / c.file)) << c.name;
        EXPECT_EQ(run(c.args).out, r.out) << c.name << " is not reproducible";
    }
}

TEST(Golden, JsonCarriesSchema) {
    for (const auto& c : golden_cases()) {
        if (c.args.find("--json") == std::string::npos) continue;
        auto j = nlohmann::json::parse(slurp(source_dir / "tests/golden" / c.file));
        EXPECT_EQ(j.at("schema"), 1) << c.name;
    }
}

TEST(Golden, SvgIsWellFormed) {
    for (const auto& c : golden_cases()) {
        if (c.file.ends_with(".svg")) {
            std::string why;
            EXPECT_TRUE(well_formed_xml(run(c.args).out, why)) << c.name << ": " << why;
        }
    }
    const auto star = run("render samples/star.json").out;
    EXPECT_EQ(count(star, "<line "), 3u);
    std::string why;
    EXPECT_FALSE(well_formed_xml("<svg><line></svg>", why));
}

TEST(Cli, KnownValues) {
    EXPECT_EQ(run("count-rational --surface p2 --d 3 --quiet").out, "12\n");
    EXPECT_EQ(run("count-elliptic --surface p2 --d 4 --quiet").out, "1860\n");
    EXPECT_EQ(run("count-elliptic --n 1 --a 1 --b 1 --quiet").out, "0\n");
    const auto poly = run("polygon --n 2 --a 2 --b 1").out;
    EXPECT_NE(poly.find("(0,0),(2,0),(2,1),(0,5)"), std::string::npos);
    EXPECT_NE(poly.find("interior points 2"), std::string::npos);
    EXPECT_NE(run("polygon --n 1 --a 3 --b 0").out.find("interior points 1"), std::string::npos);
}

TEST(Cli, QuietPrintsOneInteger) {
    const std::regex integer("[0-9]+\n");
    for (const char* args : {"count-rational --n 2 --a 1 --b 3 --tangency 1,1 --quiet", "count-elliptic --n 2 --a 2 --b 1 --quiet",
                             "count-rational --n 1 --a 2 --b 1 --quiet"}) {
        auto r = run(args);
        EXPECT_EQ(r.status, 0) << args;
        EXPECT_TRUE(std::regex_match(r.out, integer)) << args << ": " << r.out;
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("polygon --n 1 --a 0 --b 0").status, 2);
    EXPECT_EQ(run("polygon --n 1 --a 1").status, 2);
    EXPECT_EQ(run("polygon --n 1 --a 1 --b x").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("count-rational --n 1 --a 1 --b 2 --tangency 3").status, 3);
    EXPECT_EQ(run("count-rational --n 1 --a 1 --b 2 --tangency 0").status, 2);
    EXPECT_EQ(run("count-elliptic --surface p2 --d 0").status, 2);
    EXPECT_EQ(run("count-elliptic --n 1 --a 1 --b 1 --verify-direct --j -1").status, 2);
    EXPECT_EQ(run("render samples/no_such_file.json").status, 2);
    EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, RenderRejectsBadCurves) {
    const auto dir = fs::temp_directory_path() / "tropicount_cli_test";
    fs::create_directories(dir);
    std::ofstream(dir / "empty.json") << R"({"vertices": [], "edges": [], "ends": []})";
    std::ofstream(dir / "broken.json") << "{\"vertices\": [";
    EXPECT_EQ(run("render '" + (dir / "empty.json").string() + "'").status, 2);
    EXPECT_EQ(run("render '" + (dir / "broken.json").string() + "'").status, 2);
    const auto svg = dir / "star.svg";
    EXPECT_EQ(run("render samples/star.json --out '" + svg.string() + "'").status, 0);
    EXPECT_EQ(slurp(svg), slurp(source_dir / "tests/golden/render_star.svg"));
}

TEST(Cli, CacheRoundTrip) {
    const auto dir = fs::temp_directory_path() / "tropicount_cli_test";
    fs::create_directories(dir);
    const auto cache = dir / "cache.json";
    const auto manifest = dir / "manifest.json";
    fs::remove(cache);
    const std::string args = "count-rational --n 1 --a 3 --b 1 --json --manifest '" + manifest.string() + "'";
    auto first = run(args, "TROPICOUNT_CACHE='" + cache.string() + "'");
    auto m1 = nlohmann::json::parse(slurp(manifest));
    auto second = run(args, "TROPICOUNT_CACHE='" + cache.string() + "'");
    auto m2 = nlohmann::json::parse(slurp(manifest));
    EXPECT_EQ(first.out, second.out);
    EXPECT_EQ(m1["cache"]["misses"], 1);
    EXPECT_EQ(m2["cache"]["hits"], 1);
    EXPECT_EQ(m2["cache"]["misses"], 0);
    EXPECT_EQ(m2["cache"]["path"], cache.string());
    EXPECT_TRUE(fs::exists(cache));
    // the flag wins over the variable
    const auto other = dir / "other.json";
    fs::remove(other);
    run("count-rational --n 1 --a 3 --b 1 --quiet --cache '" + other.string() + "'", "TROPICOUNT_CACHE='" + cache.string() + "'");
    EXPECT_TRUE(fs::exists(other));
}
