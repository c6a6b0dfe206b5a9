#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace finitekit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Smallest integer >= num/den for positive den.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r > 0) ++q;
  return q;
}

/// Exact rational for x rounded to 12 significant decimal digits.
Rational round_to_12_digits(double x);

}  // namespace finitekit
