#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace ghpath {

// Exact arbitrary-precision rational. All distances, radii, curve parameters
// and tolerances in this library are Rat; nothing is ever rounded unless a
// function explicitly says so.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical reduced-fraction string: "3", "-3", "17/5". cpp_rational keeps
// itself in lowest terms with positive denominator, so streaming is enough.
std::string to_string(const Rat& q);

// Accepts "p/q", decimal strings ("0.4" -> 2/5), and plain integers, with an
// optional leading sign. Throws validation_error on anything else.
Rat parse_rat(std::string_view text);

Rat abs(const Rat& q);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

} // namespace ghpath
