#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace bsurf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);
double to_double(const Rational& r);
Rational parse_rational(const std::string& text);

}  // namespace bsurf
