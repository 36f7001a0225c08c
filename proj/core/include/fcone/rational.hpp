#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fcone {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q" with q >= 1, always including the denominator.
std::string format_rational(const Rational& value);

// Accepts "p/q" or a bare integer "p". Throws DomainError otherwise.
Rational parse_rational(std::string_view text);

// Smallest positive integer multiple that clears all denominators, then
// divided by the gcd of the numerators. Zero vectors map to zero vectors.
std::vector<Integer> primitive_integer_vector(std::span<const Rational> values);

Integer gcd_of(std::span<const Integer> values);

// Throws DomainError if the value is not an integer fitting in int64.
std::int64_t to_int64(const Rational& value);
std::int64_t to_int64(const Integer& value);

}  // namespace fcone
