#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace distgraph {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p/q" or an integer; decimals are rejected
Rational parse_rational(const std::string& text);
// comma separated list of parse_rational
std::vector<Rational> parse_rational_list(const std::string& text);
// always "num/den", den > 0
std::string format_rational(const Rational& r);
double to_double(const Rational& r);

}  // namespace distgraph
