#pragma once
#include <gmpxx.h>

#include <string>

namespace qcorner {

// Exact rational numbers. GMP keeps values canonical (gcd 1, denominator >= 1).
using Rational = mpq_class;

Rational rational_from_string(const std::string& s);

// "p" when the denominator is 1, "p/q" otherwise, always in lowest terms.
std::string to_string(const Rational& q);

}  // namespace qcorner
