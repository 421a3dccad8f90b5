#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "expbrush/errors.hpp"

namespace expbrush {

// Exact rational coordinate type for vertical (address-space) geometry.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact conversion of a finite double (doubles are dyadic rationals).
Rat rat_from_double(double v);

double rat_to_double(const Rat& r);

// "p/q" (or "p" when q == 1); the serialization used in JSON outputs.
std::string rat_to_string(const Rat& r);

// Accepts "p/q", plain integers, and decimal literals like "-0.25".
Rat rat_parse(const std::string& text);

}  // namespace expbrush
