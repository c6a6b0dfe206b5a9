#pragma once

#include <cstdint>
#include <string>

#include "finitekit/complexity/numeric.hpp"

namespace finitekit::complexity {

/// Comparison function g(n) from the family the class definitions use.
///
///   Const(c)   g(n) = c
///   LogPow(k)  g(n) = log2(n)^k     (log rounded to 12 significant digits)
///   Poly(k)    g(n) = n^k           (k a non-negative integer)
///   Exp(r)     g(n) = 2^(r*n)       (fractional part of the exponent rounded)
///
/// Evaluation is exact rational arithmetic apart from the documented roundings.
class GrowthFormula {
 public:
  enum class Kind { constant, log_pow, poly, exp };

  static GrowthFormula constant(Rational c);
  static GrowthFormula log_pow(unsigned k);
  static GrowthFormula poly(unsigned k);
  static GrowthFormula exp(Rational rate);

  Kind kind() const { return kind_; }
  const Rational& parameter() const { return param_; }

  /// g(n) for n >= 2.
  Rational operator()(std::uint64_t n) const;

  std::string to_string() const;

 private:
  GrowthFormula(Kind kind, Rational param) : kind_(kind), param_(std::move(param)) {}
  Kind kind_;
  Rational param_;
};

}  // namespace finitekit::complexity
