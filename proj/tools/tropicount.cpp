// tropicount: lattice polygons, rational and elliptic curve counts, and curve drawings.

#include <tropicount/tropicount.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace tropicount;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, infeasible = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Degree {
    std::string surface;
    std::int64_t d = -1, n = -1, a = -1, b = -1;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--surface", surface, "p2 for the plane (use with --d)")->check(CLI::IsMember({"p2"}));
        cmd->add_option("--d", d, "plane degree");
        cmd->add_option("--n", n, "Hirzebruch index");
        cmd->add_option("--a", a);
        cmd->add_option("--b", b);
    }

    /// (n, a, b) with the plane as F_1 degree (d, 0).
    std::array<std::int64_t, 3> resolve() const {
        if (surface == "p2" || d >= 0) {
            if (n >= 0 || a >= 0 || b >= 0) throw UsageError("give either --surface p2 --d or --n --a --b");
            if (d < 1) throw UsageError("--d must be at least 1");
            return {1, d, 0};
        }
        if (n < 0 || a < 0 || b < 0) throw UsageError("--n, --a and --b are required and nonnegative");
        if (a == 0 && b == 0) throw UsageError("bidegree (0,0)");
        return {n, a, b};
    }
};

Tangency parse_tangency(const std::string& s) {
    if (s.empty()) return Tangency::none();
    std::vector<std::int64_t> w;
    std::stringstream in(s);
    for (std::string part; std::getline(in, part, ',');) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(part, &used);
            if (used != part.size() || v < 1) throw UsageError("");
            w.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("--tangency takes one or two positive weights, e.g. 2 or 1,1");
        }
    }
    if (w.size() == 1) return Tangency::single(w[0]);
    if (w.size() == 2) return Tangency::pair(w[0], w[1]);
    throw UsageError("--tangency takes one or two positive weights, e.g. 2 or 1,1");
}

Rational parse_rational(const std::string& s) {
    try {
        Rational q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw UsageError("not a rational number: " + s);
    }
}

struct Manifest {
    std::string command_line;
    std::uint64_t seed = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    const CountCache* cache = nullptr;
    std::string path;  // empty: stderr

    void emit() const {
        json m = {{"command_line", command_line},
                  {"seed", seed},
                  {"version", version},
                  {"engines", {{"floor_diagram", 1}, {"brute_force", 1}, {"formula", 1}, {"direct", 1}}},
                  {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
        if (cache) {
            m["cache"] = {{"path", cache->path() ? json(cache->path()->string()) : json(nullptr)},
                          {"hits", cache->hits()},
                          {"misses", cache->misses()}};
        }
        if (path.empty()) {
            std::cerr << "manifest: " << m.dump() << "\n";
        } else {
            std::ofstream out(path);
            out << m.dump(2) << "\n";
        }
    }
};

void print_json(json body, const std::string& command) {
    json out = {{"schema", 1}, {"command", command}};
    out.update(body);
    std::cout << out.dump(2) << "\n";
}

CountCache open_cache(const std::string& flag) {
    if (!flag.empty()) return CountCache(flag);
    if (const char* env = std::getenv("TROPICOUNT_CACHE"); env && *env) return CountCache(CountCache::resolve_path(""));
    return CountCache();
}

std::string vertices_text(const LatticePolygon& p) {
    std::string s;
    for (const auto& v : p.vertices()) s += (s.empty() ? "" : ",") + ("(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")");
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counts of rational and elliptic curves on the plane and Hirzebruch surfaces"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    bool as_json = false, quiet = false, breakdown = false, verify = false, as_csv = false;
    std::string cache_path, manifest_path, tangency, method = "floor", curve_path, svg_path, j_text = "7/3";
    std::uint64_t seed = 1;
    Degree deg;

    auto* polygon = app.add_subcommand("polygon", "Newton polygon of a degree");
    deg.add_to(polygon);
    polygon->add_flag("--json", as_json);

    auto* rational = app.add_subcommand("count-rational", "Rational curves through points, with optional tangency");
    deg.add_to(rational);
    rational->add_option("--tangency", tangency, "weights of the tangency to the negative section: w or w1,w2");
    rational->add_option("--seed", seed, "seed of the point configuration");
    rational->add_option("--cache", cache_path, "cache file (default $TROPICOUNT_CACHE)");
    rational->add_option("--method", method, "floor (floor diagrams) or brute (type search)")
        ->check(CLI::IsMember({"floor", "brute"}));
    rational->add_flag("--json", as_json);
    rational->add_flag("--quiet", quiet, "print only the count");
    rational->add_option("--manifest", manifest_path, "write the run manifest here instead of stderr");

    auto* elliptic = app.add_subcommand("count-elliptic", "Elliptic curves with fixed j-invariant");
    deg.add_to(elliptic);
    elliptic->add_flag("--breakdown", breakdown, "list every term of the sum");
    elliptic->add_flag("--verify-direct", verify, "recount by direct search when the instance is small enough");
    elliptic->add_option("--j", j_text, "cycle length for --verify-direct (positive rational)");
    elliptic->add_option("--seed", seed, "seed of the point configuration for --verify-direct");
    elliptic->add_option("--cache", cache_path, "cache file (default $TROPICOUNT_CACHE)");
    elliptic->add_flag("--json", as_json);
    elliptic->add_flag("--csv", as_csv);
    elliptic->add_flag("--quiet", quiet, "print only the count");
    elliptic->add_option("--manifest", manifest_path, "write the run manifest here instead of stderr");

    auto* render = app.add_subcommand("render", "Draw a curve given as JSON");
    render->add_option("curve", curve_path, "curve JSON file")->required();
    render->add_option("--out", svg_path, "SVG file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    Manifest manifest;
    for (int i = 0; i < argc; ++i) manifest.command_line += (i ? " " : "") + std::string(argv[i]);
    manifest.seed = seed;
    manifest.path = manifest_path;

    try {
        if (polygon->parsed()) {
            auto [n, a, b] = deg.resolve();
            const auto p = polygon_of_degree(n, a, b);
            const auto pd = pick_data(p);
            if (as_json) {
                print_json({{"n", n}, {"a", a}, {"b", b}, {"polygon", to_json(p)}, {"area", to_string(pd.area)},
                            {"boundary_points", pd.boundary_points}, {"interior_points", pd.interior_points}},
                           "polygon");
            } else {
                std::cout << "vertices " << vertices_text(p) << "\n"
                          << "area " << pd.area << "\n"
                          << "boundary points " << pd.boundary_points << "\n"
                          << "interior points " << pd.interior_points << "\n";
            }
            return ok;
        }

        if (rational->parsed()) {
            auto [n, a, b] = deg.resolve();
            const CountQuery q{n, a, b, parse_tangency(tangency), 0};
            q.degree();  // throws InfeasibleQuery
            CountCache cache = open_cache(cache_path);
            manifest.cache = &cache;
            CountRecord r = method == "brute" ? brute_force_enumerate(q, 11, seed) : cache.count(q, seed);
            if (method == "brute") r.witnesses.clear();
            if (quiet) std::cout << r.value << "\n";
            else if (as_json) print_json(to_json(r), "count-rational");
            else std::cout << "N(" << q.key() << ") = " << r.value << "  [" << to_string(r.method) << "]\n";
            manifest.emit();
            return ok;
        }

        if (elliptic->parsed()) {
            auto [n, a, b] = deg.resolve();
            CountCache cache = open_cache(cache_path);
            manifest.cache = &cache;
            const auto r = elliptic_count(n, a, b, cache.provider());
            json direct;
            int status = ok;
            if (verify) {
                const Rational j = parse_rational(j_text);
                if (j <= 0) throw UsageError("--j must be positive");
                if (elliptic_leaf_count(n, a, b) > 11) {
                    direct = {{"status", "skipped"}, {"reason", "instance too large for direct search"}};
                } else {
                    auto d = count_elliptic_direct(n, a, b, j, seed);
                    const bool same = d.value == r.total;
                    direct = {{"status", same ? "agrees" : "differs"}, {"value", d.value.get_str()},
                              {"j_length", to_string(j)}, {"seed", seed}, {"curves", d.curves}};
                    if (!same) status = failed;
                }
            }
            if (quiet) {
                std::cout << r.total << "\n";
            } else if (as_csv) {
                std::cout << csv_header() << to_csv_row(r);
            } else if (as_json) {
                json body = to_json(r, breakdown);
                if (verify) body["direct"] = direct;
                print_json(body, "count-elliptic");
            } else {
                std::cout << "N(" << n << ":" << a << ":" << b << ") = " << r.total << "\n"
                          << "  interior points " << r.interior_points << " x rational " << r.rational_count << " = "
                          << r.summand1 << "\n"
                          << "  cycle through the section " << r.summand2 << "\n"
                          << "  string along the section " << r.summand3 << "\n";
                if (breakdown) {
                    for (const auto& tv : r.terms) {
                        std::cout << "    row " << tv.term.row << " k=" << tv.term.k << " w0=(" << tv.term.w0_upper
                                  << "," << tv.term.w0_lower << ") splits";
                        for (auto [x, y] : tv.term.splits) std::cout << " (" << x << "," << y << ")";
                        std::cout << " -> " << tv.value << "\n";
                    }
                }
                if (verify) std::cout << "  direct search: " << direct.value("status", "") << "\n";
            }
            if (status != ok) std::cerr << "error: direct search differs from the formula\n";
            manifest.emit();
            return status;
        }

        if (render->parsed()) {
            std::ifstream in(curve_path);
            if (!in) throw UsageError("cannot read " + curve_path);
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw UsageError(std::string("invalid JSON: ") + e.what());
            }
            TropicalCurve c;
            try {
                c = curve_from_json(j);
            } catch (const std::exception& e) {
                throw UsageError(std::string("invalid curve: ") + e.what());
            }
            const std::string svg = render_svg(c);
            if (svg_path.empty()) {
                std::cout << svg;
            } else {
                std::ofstream out(svg_path);
                if (!out) throw UsageError("cannot write " + svg_path);
                out << svg;
            }
            return ok;
        }
    } catch (const InfeasibleQuery& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return infeasible;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return failed;
    }
    return usage;
}
