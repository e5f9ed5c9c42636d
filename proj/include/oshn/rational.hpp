#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace oshn {

// Exact arbitrary-precision rational scalar. Always stored reduced with a
// positive denominator; arithmetic never rounds.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Renders as "p" for integers and "p/q" otherwise, q > 0.
std::string rat_to_string(const Rational& r);

// Parses "p", "p/q", with optional sign. Rejects zero denominators and
// malformed input.
std::optional<Rational> parse_rational(const std::string& s);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

// Exact integer power with a small exponent, m^k.
Rational int_pow(long m, unsigned k);

}  // namespace oshn
