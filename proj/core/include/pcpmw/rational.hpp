#pragma once

// Exact arithmetic carriers. Counts, weights and probabilities in this
// library are never floats unless an operation is explicitly documented as
// an estimate.

#include <boost/multiprecision/cpp_int.hpp>

namespace pcpmw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace pcpmw
