#include <doctest.h>

#include <stdexcept>

#include "borsuk/exactnum.hpp"

using namespace borsuk;

TEST_CASE("binomial matches Pascal's rule") {
  for (std::uint64_t n = 1; n <= 60; ++n) {
    for (std::uint64_t k = 1; k < n; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
  CHECK(binomial(10, 0) == 1);
  CHECK_THROWS_AS(binomial(10, 11), std::invalid_argument);
  CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
}

TEST_CASE("binomial tail sums") {
  CHECK(binomial_tail_sum(8, 5) == 163);  // 1 + 8 + 28 + 56 + 70
  CHECK(binomial_tail_sum(16, 5) == 2517);
  CHECK(binomial_tail_sum(8, 100) == 256);  // terms past n vanish
  CHECK_THROWS_AS(binomial_tail_sum(8, 0), std::invalid_argument);
}

TEST_CASE("primality agrees with trial division") {
  auto trial = [](std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
      if (m % q == 0) return false;
    }
    return true;
  };
  for (std::uint64_t m = 0; m < 20000; ++m) CHECK(is_prime(m) == trial(m));
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(18446744073709551615ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("log-space binomials mirror the exact values") {
  for (auto [n, k] : {std::pair<std::uint64_t, std::uint64_t>{100, 50}, {995, 497}, {2000, 3}}) {
    const Real exact = ln(binomial(n, k));
    CHECK(abs(log_binomial(n, k).log_abs() - exact) < Real(1e-25) * exact);
  }
  for (auto [n, p] : {std::pair<std::uint64_t, std::uint64_t>{996, 457}, {176, 79}, {400, 179}, {64, 64}}) {
    const Real exact = ln(binomial_tail_sum(n, p));
    CHECK(abs(log_binomial_tail_sum(n, p).log_abs() - exact) < Real(1e-25) * exact);
  }
}

TEST_CASE("LogReal arithmetic") {
  const LogReal a = LogReal::from_real(Real(6)), b = LogReal::from_real(Real(-2));
  CHECK((a * b).to_double() == doctest::Approx(-12));
  CHECK((a / b).to_double() == doctest::Approx(-3));
  CHECK((a + b).to_double() == doctest::Approx(4));
  CHECK(b < a);
  CHECK(LogReal::zero() < a);
  CHECK(b < LogReal::zero());
  CHECK(LogReal::from_int(BigInt(0)).is_zero());
}

TEST_CASE("decimal and big-integer parsing") {
  CHECK(parse_decimal("0.6") == BigRational(3, 5));
  CHECK(parse_decimal("-1.25") == BigRational(-5, 4));
  CHECK(parse_decimal("1e-2") == BigRational(1, 100));
  CHECK(parse_decimal("3") == 3);
  CHECK_THROWS_AS(parse_decimal("0.6x"), std::invalid_argument);
  CHECK(parse_big_integer("1e12") == BigInt("1000000000000"));
  CHECK(parse_big_integer("10^12") == BigInt("1000000000000"));
  CHECK(parse_big_integer("12345") == 12345);
  CHECK_THROWS(parse_big_integer("-5"));
}

TEST_CASE("rounding and conversions") {
  CHECK(ceil_to_int(Real("2.1")) == 3);
  CHECK(ceil_to_int(Real("-2.1")) == -2);
  CHECK(floor_to_int(Real("-2.1")) == -3);
  CHECK(ceil_to_int(Real(4)) == 4);
  CHECK(to_u64(BigInt("18446744073709551615")) == 18446744073709551615ull);
  CHECK_THROWS(to_u64(BigInt("18446744073709551616")));
  CHECK(to_string(BigRational(6, 4)) == "3/2");
  CHECK(to_string(BigRational(4, 2)) == "2");
}
