#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace genus {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "3", "-2/5", "0.125", "1e-3". Throws ParseError.
Rational parse_rational(std::string_view text);

// "3", "-2/5"
std::string to_string(const Rational& q);

Rational power(const Rational& base, int exponent);

}  // namespace genus
