#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace scg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "3", "-2", "1/100", "0.25".
Rational parse_rational(std::string_view s);
std::string format_rational(const Rational& r);
double to_double(const Rational& r);
BigInt floor_big(const Rational& r);
BigInt ceil_big(const Rational& r);
// Saturates at INT64_MAX / INT64_MIN.
std::int64_t floor_i64(const Rational& r);
std::int64_t ceil_i64(const Rational& r);

}  // namespace scg
