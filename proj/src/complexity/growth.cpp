#include "finitekit/complexity/growth.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "finitekit/util/error.hpp"

namespace finitekit {

Rational round_to_12_digits(double x) {
  if (x == 0.0) return Rational(0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  // d.ddddddddddde±XX
  std::string text(buf);
  const auto epos = text.find('e');
  std::string mantissa = text.substr(0, epos);
  const int exponent = std::atoi(text.c_str() + epos + 1);
  bool negative = false;
  if (mantissa[0] == '-') {
    negative = true;
    mantissa.erase(0, 1);
  }
  mantissa.erase(mantissa.find('.'), 1);
  BigInt digits(mantissa);
  const int scale = exponent - 11;
  BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(scale)));
  Rational r = scale >= 0 ? Rational(digits * ten_pow) : Rational(digits, ten_pow);
  return negative ? Rational(-r) : r;
}

namespace complexity {

GrowthFormula GrowthFormula::constant(Rational c) {
  if (c <= 0) throw Error(ErrorCode::unsupported, "Const growth needs a positive constant");
  return {Kind::constant, std::move(c)};
}

GrowthFormula GrowthFormula::log_pow(unsigned k) {
  if (k < 1) throw Error(ErrorCode::unsupported, "LogPow exponent must be >= 1");
  return {Kind::log_pow, Rational(k)};
}

GrowthFormula GrowthFormula::poly(unsigned k) { return {Kind::poly, Rational(k)}; }

GrowthFormula GrowthFormula::exp(Rational rate) {
  if (rate <= 0) throw Error(ErrorCode::unsupported, "Exp rate must be positive");
  return {Kind::exp, std::move(rate)};
}

Rational GrowthFormula::operator()(std::uint64_t n) const {
  if (n < 2) throw Error(ErrorCode::unsupported, "growth formulas are evaluated for n >= 2");
  switch (kind_) {
    case Kind::constant:
      return param_;
    case Kind::log_pow: {
      const Rational lg = round_to_12_digits(std::log2(static_cast<double>(n)));
      const auto k = numerator(param_).convert_to<unsigned>();
      return Rational(boost::multiprecision::pow(numerator(lg), k),
                      boost::multiprecision::pow(denominator(lg), k));
    }
    case Kind::poly: {
      const auto k = numerator(param_).convert_to<unsigned>();
      return Rational(boost::multiprecision::pow(BigInt(n), k));
    }
    case Kind::exp: {
      const Rational e = param_ * n;
      BigInt whole = numerator(e) / denominator(e);
      const Rational frac = e - Rational(whole);
      BigInt two_pow = BigInt(1) << whole.convert_to<unsigned>();
      if (frac == 0) return Rational(two_pow);
      const double f = frac.convert_to<double>();
      return Rational(two_pow) * round_to_12_digits(std::exp2(f));
    }
  }
  return Rational(0);
}

std::string GrowthFormula::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant: os << "Const(" << param_ << ")"; break;
    case Kind::log_pow: os << "LogPow(" << param_ << ")"; break;
    case Kind::poly: os << "Poly(" << param_ << ")"; break;
    case Kind::exp: os << "Exp(" << param_ << ")"; break;
  }
  return os.str();
}

}  // namespace complexity
}  // namespace finitekit
