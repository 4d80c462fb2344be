#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace veemap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Always "p/q" with q > 0, e.g. "2/1", "0/1", "-3/4".
std::string to_string(const Rational& r);

/// Accepts "p/q" or an integer "p".
Rational parse_rational(std::string_view text);

}  // namespace veemap
