#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace endotorsion {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Prime factorization of |n| as (prime, exponent) pairs in increasing order.
/// Uses trial division followed by Pollard-Brent. Throws CapExceeded above 2^200.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

/// All positive divisors of |n| in increasing order; n must be nonzero.
std::vector<Integer> positive_divisors(const Integer& n);

}  // namespace endotorsion
