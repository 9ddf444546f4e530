#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "borsuk/bounds.hpp"

using namespace borsuk;

TEST_CASE("count bound on small exact inputs") {
  const CountBound b = count_bound(8, 5, BigInt(1));
  REQUIRE(b.numerator);
  REQUIRE(b.denominator);
  CHECK(*b.numerator == 35);
  CHECK(*b.denominator == 163);
  CHECK_FALSE(b.passes);
  CHECK(b.ratio_log.to_double() == doctest::Approx(35.0 / 163.0));
  CHECK_THROWS_AS(count_bound(6, 3, BigInt(1)), std::invalid_argument);
}

TEST_CASE("exact and log-space count bounds agree") {
  for (auto [n, p] : {std::pair<std::uint64_t, std::uint64_t>{176, 79}, {996, 457}, {9996, 2500}}) {
    const CountBound exact = count_bound(n, p, BigInt(2));
    const LogReal mirror = log_binomial(n - 1, n / 2 - 1) / log_binomial_tail_sum(n, p);
    CHECK(abs(exact.ratio_log.log_abs() - mirror.log_abs()) < Real(1e-20));
  }
  const CountBound large = count_bound(31620, 14747, BigInt("1000000000000000002"));
  CHECK_FALSE(large.numerator.has_value());
  CHECK(static_cast<double>(large.ratio_log.log_abs()) == doctest::Approx(68.9009).epsilon(1e-5));
  CHECK(large.passes);
}

TEST_CASE("binary entropy") {
  CHECK(static_cast<double>(binary_entropy(Real(1) / 2)) == doctest::Approx(1.0));
  CHECK(binary_entropy(Real(0)) == 0);
  CHECK(static_cast<double>(binary_entropy(Real(1) / 4)) == doctest::Approx(0.8112781244591328));
}

TEST_CASE("asymptotic base at p0 = 1/4") {
  const AsymptoticBase base = asymptotic_base(Real(1) / 4);
  CHECK(static_cast<double>(base.c_prime) == doctest::Approx(1.7547653506033233).epsilon(1e-14));
  CHECK(static_cast<double>(base.c) == doctest::Approx(1.1397535284773888).epsilon(1e-14));
  REQUIRE(base.samples.size() == 3);
  CHECK(base.samples[0].root == doctest::Approx(1.73823306827).epsilon(1e-10));
  CHECK(base.samples[2].error == doctest::Approx(0.00489327).epsilon(1e-5));
  CHECK(base.monotone);
  CHECK_THROWS_AS(asymptotic_base(Real(1) / 2), std::domain_error);
  CHECK_THROWS_AS(asymptotic_base(Real(1) / 5), std::domain_error);
}

TEST_CASE("find_d0 at r = 0.71") {
  const D0Result res = find_d0(parse_decimal("0.71"));
  CHECK(res.d0 == 7745);
  CHECK(res.params.n == 88);
  CHECK(res.params.a == 4);
  CHECK(res.params.p == 23);
  CHECK(res.previous_d == 7057);
  CHECK(res.certificate.passes);
  CHECK_FALSE(res.previous.passes);
  CHECK(res.d0_minus_one_fails);
}

TEST_CASE("find_d0 scans every grid point") {
  // The pass/fail pattern is not monotone in n, so a bisection would land later.
  const D0Result res = find_d0(parse_decimal("0.6"));
  CHECK(res.d0 == BigInt("1802703502561537"));
  CHECK(res.params.n == 6516);
  CHECK(res.params.a == 5120);
  CHECK(res.params.p == 2909);
  CHECK_FALSE(res.previous.passes);
  CHECK_THROWS_WITH_AS(find_d0(parse_decimal("0.6"), 1e-12, BigInt("1000000000000")), "no d0 found below cap",
                       std::domain_error);
  CHECK_THROWS_AS(find_d0(parse_decimal("0.5")), std::invalid_argument);
}

TEST_CASE("exponent of the fixed-radius bound approaches ln c") {
  const Real target = log(asymptotic_base(Real(1) / 4).c);
  CHECK(static_cast<double>(target) == doctest::Approx(0.130812).epsilon(1e-5));
  auto exponent_at = [](std::uint64_t n) {
    BigInt d = BigInt(static_cast<unsigned long>(n)) * BigInt(static_cast<unsigned long>(n)) + 1;
    return theorem2_exponent(plan_fixed(parse_decimal("0.71"), d));
  };
  const Real e1000 = exponent_at(1000), e10000 = exponent_at(10000);
  CHECK(abs(e10000 - target) < abs(e1000 - target));
  CHECK(static_cast<double>(abs(e10000 - target) / target) < 0.01);
}

TEST_CASE("shrinking-radius chain") {
  const Theorem3Report small = theorem3_check(BigInt(100));
  CHECK_FALSE(small.all_pass);
  REQUIRE(small.first_failure() != nullptr);

  const Theorem3Report mid = theorem3_check(BigInt("1000000000000"));
  REQUIRE(mid.params);
  CHECK(mid.params->n == 996);
  CHECK_FALSE(mid.all_pass);
  REQUIRE(mid.first_failure() != nullptr);
  CHECK(mid.first_failure()->name == kCountCheckName);
  REQUIRE(mid.final_ratio_log);
  CHECK(static_cast<double>(mid.final_ratio_log->log_abs()) == doctest::Approx(1.088964568745).epsilon(1e-10));

  const Theorem3Report large = theorem3_check(BigInt("1000000000000000000"));
  CHECK(large.all_pass);
}
