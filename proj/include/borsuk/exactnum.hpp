// Exact arithmetic substrate: big integers, rationals, binomials, primality
// and log-space mirrors of quantities too large to hold exactly.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace borsuk {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// High-precision real (40 decimal digits, roughly 133 mantissa bits).
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<40>,
    boost::multiprecision::et_off>;

/// A signed quantity stored by the natural log of its magnitude.
class LogReal {
 public:
  LogReal() = default;

  static LogReal zero() {
    LogReal r;
    r.zero_ = true;
    return r;
  }
  static LogReal from_log(Real log_abs, bool negative = false);
  static LogReal from_int(const BigInt& v);
  static LogReal from_real(const Real& v);

  bool is_zero() const { return zero_; }
  bool negative() const { return negative_; }
  /// ln|x|; meaningless when is_zero().
  const Real& log_abs() const { return log_abs_; }

  Real value() const;
  double to_double() const;

  LogReal operator*(const LogReal& o) const;
  LogReal operator/(const LogReal& o) const;
  LogReal operator+(const LogReal& o) const;

  /// Compares signed values.
  friend bool operator<(const LogReal& a, const LogReal& b);
  friend bool operator>(const LogReal& a, const LogReal& b) { return b < a; }

 private:
  Real log_abs_{0};
  bool negative_ = false;
  bool zero_ = false;
};

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Sum_{i=0}^{p-1} C(n, i); terms with i > n vanish.
BigInt binomial_tail_sum(std::uint64_t n, std::uint64_t p);

/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t m);

LogReal log_binomial(std::uint64_t n, std::uint64_t k);

/// ln Sum_{i=0}^{p-1} C(n, i), summed outward from the largest term.
LogReal log_binomial_tail_sum(std::uint64_t n, std::uint64_t p);

/// Natural log of a positive big integer.
Real ln(const BigInt& v);

Real to_real(const BigInt& v);
Real to_real(const BigRational& v);

/// "num/den", or "num" when the denominator is one.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& v);
/// Scientific notation with the given number of significant digits.
std::string to_string(const Real& v, int digits = 20);

/// Parses a decimal literal ("0.6", "-1.25", "3", "1e-2") exactly.
BigRational parse_decimal(std::string_view text);

/// Parses a non-negative integer given as digits, "1e12" or "10^12".
BigInt parse_big_integer(std::string_view text);

/// Smallest integer >= x (x may be negative).
BigInt ceil_to_int(const Real& x);
BigInt floor_to_int(const Real& x);

std::uint64_t to_u64(const BigInt& v);

}  // namespace borsuk
