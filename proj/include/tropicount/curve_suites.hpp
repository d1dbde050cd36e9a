#ifndef TROPICOUNT_CURVE_SUITES_HPP
#define TROPICOUNT_CURVE_SUITES_HPP

// Random-curve checks of the closed multiplicity formulas against the raw determinant.

#include "random_curves.hpp"
#include "strings.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace tropicount {

enum class CurveFamily { flat_cycle, contracted_loop, string_cycle, string_flat_cycle };

inline std::string to_string(CurveFamily f) {
    switch (f) {
    case CurveFamily::flat_cycle: return "flat_cycle";
    case CurveFamily::contracted_loop: return "contracted_loop";
    case CurveFamily::string_cycle: return "string_cycle";
    case CurveFamily::string_flat_cycle: return "string_flat_cycle";
    }
    return "unknown";
}

struct SuiteResult {
    CurveFamily family = CurveFamily::flat_cycle;
    std::size_t checked = 0, agreed = 0, draws = 0;
    std::vector<std::string> failures;  // first few disagreements
    bool ok(std::size_t wanted) const { return checked == wanted && agreed == wanted; }
};

inline std::optional<TropicalCurve> draw_curve(CurveFamily f, std::mt19937_64& rng) {
    switch (f) {
    case CurveFamily::flat_cycle: return random_flat_cycle_curve(rng);
    case CurveFamily::contracted_loop: return random_contracted_loop_curve(rng);
    case CurveFamily::string_cycle: return random_string_curve(rng, false);
    case CurveFamily::string_flat_cycle: return random_string_curve(rng, true);
    }
    return std::nullopt;
}

/// Closed formula and determinant for one curve. A string curve with a flat cycle keeps a free
/// parameter, so only its decomposition is checked (the determinant side is left at 0).
inline std::pair<Int, Rational> formula_and_raw(CurveFamily f, const TropicalCurve& c) {
    switch (f) {
    case CurveFamily::flat_cycle: return {multiplicity_flat_cycle(c), multiplicity_raw(c)};
    case CurveFamily::contracted_loop: return {multiplicity_contracted_loop(c), multiplicity_raw(c)};
    case CurveFamily::string_cycle:
        return {multiplicity_string(decompose_string_curve(c)), multiplicity_raw(c, std::nullopt, CycleLength::weighted)};
    case CurveFamily::string_flat_cycle: {
        auto d = decompose_string_curve(c);
        if (d.kind != 3) throw std::logic_error("expected a flat cycle beside the string");
        for (const auto& sc : d.components)
            if (sc.multiplicity == 0) throw std::logic_error("component without multiplicity");
        return {multiplicity_string(d), Rational(0)};
    }
    }
    return {0, Rational(0)};
}

inline SuiteResult run_suite(CurveFamily f, std::size_t count, std::uint64_t seed, std::size_t max_draws = 200000) {
    SuiteResult r;
    r.family = f;
    std::mt19937_64 rng(seed);
    while (r.checked < count && r.draws < max_draws) {
        ++r.draws;
        auto c = draw_curve(f, rng);
        if (!c) continue;
        ++r.checked;
        std::ostringstream why;
        try {
            auto [formula, raw] = formula_and_raw(f, *c);
            const bool same = f == CurveFamily::string_flat_cycle ? formula > 0 : Rational(formula) == raw;
            if (same) {
                ++r.agreed;
                continue;
            }
            why << "formula " << formula << " raw " << raw;
        } catch (const std::exception& e) {
            why << e.what();
        }
        if (r.failures.size() < 5) r.failures.push_back(why.str());
    }
    return r;
}

} // namespace tropicount

#endif // TROPICOUNT_CURVE_SUITES_HPP
