#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace edr {

using Integer = mpz_class;
using Rational = mpq_class;

/// a*x + b*y == g with g >= 0 (GMP's minimal cofactors).
struct ExtendedGcd {
  Integer g, x, y;
};

ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

Integer gcd(const Integer& a, const Integer& b);

// Floor-free remainder in [0, |m|).
Integer mod_nonneg(const Integer& a, const Integer& m);

// p-adic valuation of a nonzero integer.
unsigned long valuation(const Integer& a, const Integer& p);

bool is_probable_prime(const Integer& p);

Integer parse_integer(std::string_view text);
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& a);
std::string to_string(const Rational& q);

std::string_view trim(std::string_view text);

// Splits on `sep` at parenthesis/brace depth zero.
std::vector<std::string> split_top_level(std::string_view text, char sep);

}  // namespace edr
