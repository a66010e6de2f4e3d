#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace pqpierce {

/// Arbitrary-precision integer and rational scalars. GMP keeps every
/// rational in lowest terms with a positive denominator.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

/// Accepts "n", "n/d" and finite decimals such as "-0.25".
Rational parse_rational(std::string_view text);

/// Saturating binomial coefficient; returns UINT64_MAX on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

Integer lcm_of(const Integer& a, const Integer& b);

}  // namespace pqpierce
