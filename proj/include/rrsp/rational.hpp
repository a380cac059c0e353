#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rrsp {

// Arbitrary-precision rational; always kept in canonical (reduced) form.
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" with decimal digits only. Throws
// std::invalid_argument on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

}  // namespace rrsp
