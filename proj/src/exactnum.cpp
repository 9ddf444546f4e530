#include "borsuk/exactnum.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace borsuk {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

Real lngamma(std::uint64_t x) {
  Real r;
  Real arg = static_cast<double>(x);
  if (x > (1ull << 52)) arg = Real(std::to_string(x));
  mpfr_lngamma(r.backend().data(), arg.backend().data(), MPFR_RNDN);
  return r;
}

Real log1p_exp(const Real& x) {  // ln(1 + e^x)
  using boost::multiprecision::exp;
  using boost::multiprecision::log1p;
  if (x > 0) return x + log1p(exp(-x));
  return log1p(exp(x));
}

}  // namespace

LogReal LogReal::from_log(Real log_abs, bool negative) {
  LogReal r;
  r.log_abs_ = std::move(log_abs);
  r.negative_ = negative;
  return r;
}

LogReal LogReal::from_int(const BigInt& v) {
  if (sgn(v) == 0) return zero();
  BigInt mag = abs(v);
  return from_log(ln(mag), sgn(v) < 0);
}

LogReal LogReal::from_real(const Real& v) {
  if (v == 0) return zero();
  using boost::multiprecision::abs;
  using boost::multiprecision::log;
  return from_log(log(abs(v)), v < 0);
}

Real LogReal::value() const {
  if (zero_) return Real(0);
  using boost::multiprecision::exp;
  Real m = exp(log_abs_);
  return negative_ ? Real(-m) : m;
}

double LogReal::to_double() const { return static_cast<double>(value()); }

LogReal LogReal::operator*(const LogReal& o) const {
  if (zero_ || o.zero_) return zero();
  return from_log(log_abs_ + o.log_abs_, negative_ != o.negative_);
}

LogReal LogReal::operator/(const LogReal& o) const {
  if (o.zero_) throw std::domain_error("LogReal division by zero");
  if (zero_) return zero();
  return from_log(log_abs_ - o.log_abs_, negative_ != o.negative_);
}

LogReal LogReal::operator+(const LogReal& o) const {
  if (zero_) return o;
  if (o.zero_) return *this;
  const LogReal& big = (log_abs_ >= o.log_abs_) ? *this : o;
  const LogReal& small = (log_abs_ >= o.log_abs_) ? o : *this;
  Real diff = small.log_abs_ - big.log_abs_;  // <= 0
  if (big.negative_ == small.negative_) {
    return from_log(big.log_abs_ + log1p_exp(diff), big.negative_);
  }
  if (diff == 0) return zero();
  using boost::multiprecision::exp;
  using boost::multiprecision::log1p;
  return from_log(big.log_abs_ + log1p(-exp(diff)), big.negative_);
}

bool operator<(const LogReal& a, const LogReal& b) {
  auto sign = [](const LogReal& x) { return x.zero_ ? 0 : (x.negative_ ? -1 : 1); };
  int sa = sign(a), sb = sign(b);
  if (sa != sb) return sa < sb;
  if (sa == 0) return false;
  if (sa > 0) return a.log_abs_ < b.log_abs_;
  return a.log_abs_ > b.log_abs_;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("invalid binomial: k > n");
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt binomial_tail_sum(std::uint64_t n, std::uint64_t p) {
  if (p == 0) throw std::invalid_argument("binomial tail sum needs p >= 1");
  std::uint64_t top = std::min<std::uint64_t>(p - 1, n);
  BigInt sum = 0;
  BigInt term = 1;  // C(n, 0)
  for (std::uint64_t i = 0;; ++i) {
    sum += term;
    if (i == top) break;
    term *= (n - i);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), i + 1);
  }
  return sum;
}

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kSmall) {
    if (m % q == 0) return m == q;
  }
  std::uint64_t d = m - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is exact for every m < 3.3e24.
  for (std::uint64_t w : kSmall) {
    std::uint64_t x = pow_mod(w, d, m);
    if (x == 1 || x == m - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, m);
      if (x == m - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

LogReal log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("invalid binomial: k > n");
  if (k == 0 || k == n) return LogReal::from_log(Real(0));
  return LogReal::from_log(lngamma(n + 1) - lngamma(k + 1) - lngamma(n - k + 1));
}

LogReal log_binomial_tail_sum(std::uint64_t n, std::uint64_t p) {
  if (p == 0) throw std::invalid_argument("binomial tail sum needs p >= 1");
  const std::uint64_t top = std::min<std::uint64_t>(p - 1, n);
  const std::uint64_t peak = std::min<std::uint64_t>(top, n / 2);
  const Real cutoff("1e-45");

  // Terms are relative to C(n, peak); they decay monotonically on both sides.
  Real sum = 1;
  Real term = 1;
  for (std::uint64_t i = peak; i > 0; --i) {
    term *= Real(static_cast<double>(i)) / Real(static_cast<double>(n - i + 1));
    sum += term;
    if (term < cutoff * sum) break;
  }
  term = 1;
  for (std::uint64_t i = peak; i < top; ++i) {
    term *= Real(static_cast<double>(n - i)) / Real(static_cast<double>(i + 1));
    sum += term;
    if (term < cutoff * sum) break;
  }
  using boost::multiprecision::log;
  return LogReal::from_log(log_binomial(n, peak).log_abs() + log(sum));
}

Real to_real(const BigInt& v) {
  Real r;
  mpfr_set_z(r.backend().data(), v.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real to_real(const BigRational& v) {
  Real r;
  mpfr_set_q(r.backend().data(), v.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real ln(const BigInt& v) {
  if (sgn(v) <= 0) throw std::domain_error("ln of non-positive integer");
  Real r = to_real(v);
  mpfr_log(r.backend().data(), r.backend().data(), MPFR_RNDN);
  return r;
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(const BigRational& value) {
  BigRational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

std::string to_string(const Real& v, int digits) {
  return v.str(digits, std::ios_base::scientific);
}

BigRational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a decimal number: " + std::string(text));
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string rest(text.substr(i));
    std::size_t used = 0;
    try {
      exponent += std::stol(rest, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a decimal number: " + std::string(text));
    }
    i += used;
  }
  if (i != text.size()) throw std::invalid_argument("not a decimal number: " + std::string(text));

  BigInt num(digits, 10);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  BigRational q = exponent < 0 ? BigRational(num, scale) : BigRational(num * scale);
  q.canonicalize();
  return negative ? BigRational(-q) : q;
}

BigInt parse_big_integer(std::string_view text) {
  auto caret = text.find('^');
  if (caret != std::string_view::npos) {
    BigInt base = parse_big_integer(text.substr(0, caret));
    BigInt e = parse_big_integer(text.substr(caret + 1));
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), to_u64(e));
    return r;
  }
  BigRational q = parse_decimal(text);
  if (q.get_den() != 1 || sgn(q) < 0) {
    throw std::invalid_argument("not a non-negative integer: " + std::string(text));
  }
  return q.get_num();
}

BigInt ceil_to_int(const Real& x) {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), x.backend().data(), MPFR_RNDU);
  return r;
}

BigInt floor_to_int(const Real& x) {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), x.backend().data(), MPFR_RNDD);
  return r;
}

std::uint64_t to_u64(const BigInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw std::out_of_range("integer does not fit in 64 bits: " + v.get_str());
  }
  std::uint64_t r = 0;
  mpz_export(&r, nullptr, -1, sizeof r, 0, 0, v.get_mpz_t());
  return r;
}

}  // namespace borsuk
