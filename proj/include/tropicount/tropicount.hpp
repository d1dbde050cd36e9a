#ifndef TROPICOUNT_TROPICOUNT_HPP
#define TROPICOUNT_TROPICOUNT_HPP

#include "arith.hpp"
#include "cache.hpp"
#include "curve.hpp"
#include "curve_suites.hpp"
#include "elliptic_direct.hpp"
#include "formula.hpp"
#include "multiplicity.hpp"
#include "polygon.hpp"
#include "random_curves.hpp"
#include "rational_count.hpp"
#include "strings.hpp"
#include "subdivision.hpp"
#include "svg.hpp"

namespace tropicount {

inline constexpr const char* version = "0.1.0";

} // namespace tropicount

#endif // TROPICOUNT_TROPICOUNT_HPP
