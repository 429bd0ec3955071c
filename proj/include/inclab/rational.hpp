#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace inclab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "7", "-3", "1/2", "0.25", "2^-11" and "3*2^5". Throws Error{parse_error}.
Rational parse_rational(std::string_view text);

// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& v);
double to_double(const Rational& q);

BigInt pow_int(std::uint64_t base, unsigned exp);
Rational pow_rational(const Rational& base, unsigned exp);

}  // namespace inclab
