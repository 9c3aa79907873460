#pragma once

#include "nbint/numeric.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace nbint {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
/// Exact rational, always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Parses "p/q", an integer, or a decimal literal such as "-0.125" or "2.5e-3"
/// into the exact rational it denotes. Throws InputError on malformed text.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" for integers.
std::string to_string(const Rational& q);

Integer numerator_of(const Rational& q);
Integer denominator_of(const Rational& q);

/// Correctly rounded (up to two roundings) conversion to binary128.
Real to_real(const Rational& q);

/// Exact square root if q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

/// Smallest-denominator rational inside [lo, hi] (Stern-Brocot descent).
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace nbint
