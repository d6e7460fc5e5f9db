#include "stsrank/bigint.hpp"

#include "stsrank/error.hpp"

#include <algorithm>
#include <cctype>

namespace stsrank {

namespace {

// Results beyond this many bits are refused rather than computed.
constexpr std::uint64_t kMaxResultBits = std::uint64_t{1} << 26;

} // namespace

BigCount parse_decimal(const std::string& s)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ParameterError("not a nonnegative decimal integer: '" + s + "'");
    return BigCount(s);
}

BigCount pow_big(const BigCount& base, std::uint64_t exponent)
{
    if (exponent == 0)
        return 1;
    if (base == 0 || base == 1)
        return base;
    const auto bits = static_cast<std::uint64_t>(boost::multiprecision::msb(base)) + 1;
    if (exponent > kMaxResultBits / bits)
        throw ResourceError("power with about " + std::to_string(bits) + "*" + std::to_string(exponent) +
                            " bits exceeds the exact-arithmetic cap");
    BigCount result = 1;
    BigCount b = base;
    while (exponent) {
        if (exponent & 1)
            result *= b;
        exponent >>= 1;
        if (exponent)
            b *= b;
    }
    return result;
}

BigCount factorial_big(std::uint64_t n)
{
    if (n > 200'000)
        throw ResourceError("factorial of " + std::to_string(n) + " exceeds the exact-arithmetic cap");
    BigCount f = 1;
    for (std::uint64_t i = 2; i <= n; ++i)
        f *= i;
    return f;
}

BigCount floor_of(const BigRational& q)
{
    const BigCount num = boost::multiprecision::numerator(q);
    const BigCount den = boost::multiprecision::denominator(q);
    BigCount quot = num / den; // truncates toward zero
    if (num < 0 && quot * den != num)
        quot -= 1;
    return quot;
}

BigCount ceil_of(const BigRational& q)
{
    const BigCount num = boost::multiprecision::numerator(q);
    const BigCount den = boost::multiprecision::denominator(q);
    BigCount quot = num / den;
    if (num > 0 && quot * den != num)
        quot += 1;
    return quot;
}

std::string to_string(const BigRational& q)
{
    const BigCount num = boost::multiprecision::numerator(q);
    const BigCount den = boost::multiprecision::denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

} // namespace stsrank
