#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace crown {

// Exact rational number. Every coordinate and dimension in the library uses it.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q", "p" or a finite decimal such as "0.55". Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; the denominator is always written, even when it is 1.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);

// Nearest multiple of 1/denominator (halves round up).
Rational round_to_grid(const Rational& value, long denominator);

// Nearest integer to sqrt(value) for value >= 0.
Integer round_sqrt(const Rational& value);

}  // namespace crown
