#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace mtt {

/// Arbitrary-precision integer. Rational elimination grows coefficients
/// quickly, so fixed-width integers are not an option anywhere in the engine.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Kept in canonical form (denominator > 0,
/// gcd(num, den) = 1) by the backend on every construction and operation,
/// so equality is structural.
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when a serialized rational (or other scalar field) is malformed.
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Canonical text form: "p/q" with q > 1, or just "p". Sign on the numerator.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parse the canonical form back. Accepts an optional leading sign on the
/// numerator only; the denominator must be a positive integer literal.
inline Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw ParseError("empty rational literal");
    const auto slash = text.find('/');
    const std::string num_part = text.substr(0, slash);
    std::size_t i = 0;
    if (num_part[i] == '+' || num_part[i] == '-')
        ++i;
    if (i == num_part.size())
        throw ParseError("rational literal '" + text + "' has no digits");
    for (; i < num_part.size(); ++i)
        if (num_part[i] < '0' || num_part[i] > '9')
            throw ParseError("bad character in rational literal '" + text + "'");
    BigInt num(num_part);
    if (slash == std::string::npos)
        return Rational(num);
    const std::string den_part = text.substr(slash + 1);
    if (den_part.empty())
        throw ParseError("rational literal '" + text + "' has empty denominator");
    for (char c : den_part)
        if (c < '0' || c > '9')
            throw ParseError("denominator of '" + text + "' must be an unsigned integer");
    BigInt den(den_part);
    if (den == 0)
        throw ParseError("rational literal '" + text + "' has zero denominator");
    return Rational(num) / Rational(den);
}

}  // namespace mtt
