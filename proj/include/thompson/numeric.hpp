#pragma once

#include "thompson/dyadic.hpp"

namespace thompson {

// Natural log of a positive integer or rational, accurate even when the value
// is far outside the range of a double.
double log_integer(const Integer& z);
double log_rational(const Rational& r);

}  // namespace thompson
