#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kissbound {

/// Exact rational scalar; gmpxx keeps every value canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Variable-precision binary float. New values take the thread's default
/// precision; see ScopedPrecision.
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 212;
inline constexpr int kDefaultEmitDigits = 64;

unsigned bits_to_digits10(unsigned bits);

/// Sets the default precision of freshly constructed Real values for the
/// lifetime of the guard.
class ScopedPrecision {
public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
  unsigned saved_digits10_;
};

/// Rounds to nearest at the current default precision.
Real to_real(const Rational& q);

/// Exact: every finite binary float is a dyadic rational.
Rational to_rational(const Real& x);

/// Re-rounds x to the current default precision.
Real at_working_precision(const Real& x);

/// Accepts "p/q", integers and finite decimals ("0.25", "-1e-3"). Anything
/// else throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Parses a decimal/scientific literal at the current default precision.
Real parse_real(std::string_view text);

std::string to_string(const Rational& q);

/// Scientific notation with `digits` significant digits, correctly rounded.
std::string to_decimal(const Real& x, int digits = kDefaultEmitDigits);
/// Rounds half away from zero, or toward +inf when `round_up` is set.
std::string to_decimal(const Rational& q, int digits = kDefaultEmitDigits, bool round_up = false);

/// Fixed notation with `decimals` digits after the point, rounded toward +inf
/// when `round_up` is set (used for displaying upper bounds).
std::string to_fixed(const Rational& q, int decimals, bool round_up = false);

/// Unit in the last place of x at precision `bits`.
Rational ulp(const Rational& x, unsigned bits);

}  // namespace kissbound
