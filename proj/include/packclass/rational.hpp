#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace packclass {

// Arbitrary precision; expression templates off so `auto` stays a value.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

// Numerator and denominator (always positive) as 64-bit integers.
// Throw Error(kTooLarge) when they do not fit.
std::int64_t numerator64(const Rational& r);
std::int64_t denominator64(const Rational& r);

// Accepts "n", "-n", "n/d". Throws Error(kParse) on anything else,
// including decimal notation.
Rational parse_rational(std::string_view text);

// "n" when the denominator is 1, "n/d" otherwise.
std::string format_rational(const Rational& r);

std::int64_t ceil_div(std::int64_t num, std::int64_t den);

}  // namespace packclass
