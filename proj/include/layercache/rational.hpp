#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace layercache {

// Exact arithmetic for memories, loads and inverse-DoF values. Denominators
// stay small (lcm of corner granularities times a sharing denominator), so
// 64-bit numerators never come close to overflow.
using Rational = boost::rational<std::int64_t>;
// Compare against Rational(k), never a bare integer: under C++20 operator
// rewriting, boost's mixed rational == int overload recurses forever.

// Accepts "p/q" or a bare integer, optional leading '-'. Throws
// std::invalid_argument on anything else (including q == 0).
Rational parse_rational(std::string_view text);

// Always "p/q", even for integers ("2/1"). Used by the scheme file format.
std::string to_fraction(const Rational& r);

// "p/q", or "p" when the denominator is one. Used for human-facing output.
std::string to_display(const Rational& r);

// Fixed-point decimal with the given number of fractional digits, rounded
// half away from zero.
std::string to_decimal(const Rational& r, int digits = 6);

double to_double(const Rational& r);

}  // namespace layercache
