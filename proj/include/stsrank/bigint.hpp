#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace stsrank {

/// Exact nonnegative integer counts.
using BigCount = boost::multiprecision::cpp_int;
/// Exact rationals, always kept in lowest terms with a positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigCount& x)
{
    return x.str();
}

BigCount parse_decimal(const std::string& s);

BigCount pow_big(const BigCount& base, std::uint64_t exponent);

BigCount factorial_big(std::uint64_t n);

BigCount floor_of(const BigRational& q);
BigCount ceil_of(const BigRational& q);

/// "p/q" or "p" when the denominator is 1.
std::string to_string(const BigRational& q);

} // namespace stsrank
