#include <doctest.h>

#include <stdexcept>

#include "borsuk/params.hpp"

using namespace borsuk;

TEST_CASE("solve_k is the least k with rsq > (2k+1)/(8k)") {
  CHECK(solve_k(BigRational(26, 100)) == 13);
  CHECK(solve_k(BigRational(9, 25)) == 2);
  CHECK(solve_k(BigRational(5041, 10000)) == 1);
  CHECK(solve_k(BigRational(3, 8) + BigRational(1, 1000)) == 1);
  CHECK(solve_k(BigRational(3, 8)) == 2);  // boundary is strict
  CHECK_THROWS_AS(solve_k(BigRational(1, 4)), std::invalid_argument);
  for (unsigned k = 1; k < 30; ++k) {
    const BigRational edge(2 * k + 1, 8 * k);
    CHECK(solve_k(edge + BigRational(1, 1000000)) <= k);
  }
}

TEST_CASE("u_eval endpoints and monotone root") {
  for (unsigned k = 1; k <= 5; ++k) {
    CHECK(u_eval(BigRational(0), k) == BigRational(1, 2));
    CHECK(u_eval(BigRational(2), k) == BigRational(2 * k + 1, 8 * k));
  }
  const Real a0 = solve_a0(Real(9) / 25, 2);
  CHECK(static_cast<double>(a0) == doctest::Approx(1.57147776159532).epsilon(1e-9));
  CHECK(u_eval(a0, 2) <= Real(9) / 25);
  CHECK_THROWS_AS(solve_a0(Real(1) / 2, 2), std::domain_error);
}

TEST_CASE("choose_n takes the largest multiple of 4 below the 2k-th root") {
  CHECK(choose_n(BigInt(1000000000), 2) == 176);  // 176^4 < 1e9 < 180^4
  CHECK(choose_n(BigInt(1000000), 1) == 996);
  CHECK(choose_n(BigInt(17), 1) == 4);
  CHECK(choose_n(BigInt(257), 2) == 4);
  CHECK_THROWS_AS(choose_n(BigInt(256), 2), std::domain_error);
}

TEST_CASE("choose_a lands on a prime (a+n)/4") {
  auto [a, p] = choose_a(Real(0), 996);
  CHECK(a == 8);
  CHECK(p == 251);
  for (std::uint64_t n = 4; n <= 400; n += 4) {
    auto [a2, p2] = choose_a(Real("1.3"), n);
    CHECK(a2 % 4 == 0);
    CHECK(is_prime(p2));
    CHECK(a2 + n == 4 * p2);
    CHECK(Real(a2) >= Real("1.3") * n / 2);
  }
}

TEST_CASE("plan_fixed examples") {
  const ParamSet ps = plan_fixed(parse_decimal("0.6"), BigInt(1000000000));
  CHECK(ps.k == 2);
  CHECK(ps.n == 176);
  CHECK(ps.a == 140);
  CHECK(ps.p == 79);
  CHECK(static_cast<double>(ps.a0) == doctest::Approx(1.57147776159532).epsilon(1e-9));

  const ParamSet wide = plan_fixed(parse_decimal("0.71"), BigInt(1000000));
  CHECK(wide.k == 1);
  CHECK(wide.a0 == 0);
  CHECK(wide.n == 996);
  CHECK(wide.a == 8);
  CHECK(wide.p == 251);
  CHECK(wide.p0() == Real(1) / 4);

  CHECK_THROWS_AS(plan_fixed(parse_decimal("0.5"), BigInt(1000)), std::invalid_argument);
  CHECK_THROWS_AS(plan_fixed(parse_decimal("0.6"), BigInt(100)), std::domain_error);
}

TEST_CASE("shrinking pipeline at 1e12") {
  const ParamSet ps = plan_shrinking(BigInt("1000000000000"));
  CHECK(ps.mode == Mode::ShrinkingRadius);
  CHECK(ps.k == 2);
  CHECK(ps.n == 996);
  CHECK(ps.a == 832);
  CHECK(ps.p == 457);
  REQUIRE(ps.phi);
  CHECK(static_cast<double>(*ps.phi) == doctest::Approx(0.720698467373544).epsilon(1e-12));
  CHECK(static_cast<double>(phi_of(BigInt("1000000000000"), 6.0)) == doctest::Approx(0.720698467373544));
}

TEST_CASE("shrinking pipeline records failures instead of hiding them") {
  const ShrinkingPlan small = shrinking_pipeline(BigInt(100));
  CHECK_FALSE(small.all_pass());
  REQUIRE(small.first_failure() != nullptr);
  CHECK(small.first_failure()->name == "a_below_n");
  CHECK_THROWS_WITH_AS(plan_shrinking(BigInt(100)), "d below threshold d0: a_below_n", std::domain_error);
  CHECK_THROWS_AS(shrinking_pipeline(BigInt(100), 0.0), std::invalid_argument);

  const ShrinkingPlan big = shrinking_pipeline(BigInt("1000000000000000000"));
  CHECK(big.all_pass());
  REQUIRE(big.params);
  CHECK(big.params->n == 31620);
  CHECK(big.params->a == 27368);
  CHECK(big.params->p == 14747);
}
