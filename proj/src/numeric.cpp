#include "thompson/numeric.hpp"

#include <cmath>
#include <limits>

#include "thompson/errors.hpp"

namespace thompson {

double log_integer(const Integer& z) {
  if (sgn(z) <= 0) throw DegenerateParams("log of a nonpositive number");
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

double log_rational(const Rational& r) {
  if (sgn(r) <= 0) throw DegenerateParams("log of a nonpositive number");
  return log_integer(r.get_num()) - log_integer(r.get_den());
}

}  // namespace thompson
