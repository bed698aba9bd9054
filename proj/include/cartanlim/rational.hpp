#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cartanlim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& x) { return x.sign(); }

inline Rational abs_of(const Rational& x) { return x < 0 ? Rational(-x) : x; }

/// Renders an exact rational as "p" or "p/q" with q > 0.
inline std::string rational_str(const Rational& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

}  // namespace cartanlim
