#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "borsuk/optimality.hpp"

using namespace borsuk;

TEST_CASE("h* and its ratio") {
  for (unsigned m : {2u, 4u, 6u, 8u}) {
    const CandidatePolynomial h = h_star(m, 10);
    CHECK(check_membership(h).in_reduced_class());
    const RatioValue rv = ratio(h);
    CHECK(rv.abs_ratio == static_cast<double>(m - 1) / (m + 1));
    CHECK(rv.value == doctest::Approx(static_cast<double>(m + 1) / (4 * m)));
  }
  CHECK_THROWS_AS(h_star(3, 10), std::invalid_argument);
  CHECK_THROWS_AS(h_star(0, 10), std::invalid_argument);
}

TEST_CASE("membership rejects polynomials outside the class") {
  CandidatePolynomial shifted = h_star(4, 10);
  shifted.a = 5;  // not stationary at -5
  CHECK_FALSE(check_membership(shifted).stationary);
  CandidatePolynomial negative = h_star(4, 10);
  negative.u[2] = -1;
  CHECK_FALSE(check_membership(negative).nonnegative);
  CandidatePolynomial lifted = h_star(2, 10);
  lifted.u[0] = 1000;  // h(-n) = 900 > 0
  CHECK(check_membership(lifted).in_class());
  CHECK_FALSE(check_membership(lifted).in_reduced_class());
  CHECK_THROWS_WITH_AS(ratio(lifted), "not in reduced class: h(-a) > 0", std::domain_error);
}

TEST_CASE("construction polynomial is a class member") {
  const CandidatePolynomial h = construction_polynomial(2, 7, 10);
  CHECK(h.derivative(-7) == doctest::Approx(0).scale(1e4));
  CHECK(check_membership(h).in_class());
}

TEST_CASE("search never beats the extremal ratio") {
  SearchOptions opts;
  opts.samples = 2000;
  for (unsigned m = 2; m <= 8; ++m) {
    const SearchResult sr = search_optimum(m, 10, opts);
    REQUIRE(sr.found);
    CHECK(sr.best_abs_ratio <= extremal_abs_ratio(m) + 1e-9);
    CHECK(sr.best_abs_ratio >= extremal_abs_ratio(m) - 1e-6);
    CHECK(check_membership(sr.best).in_reduced_class());
  }
  CHECK(extremal_abs_ratio(3) == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(search_optimum(4, 10, SearchOptions{999, 0, 1}), std::invalid_argument);
}

TEST_CASE("search is deterministic across thread counts") {
  SearchOptions a{3000, 7, 1}, b{3000, 7, 3};
  const SearchResult x = search_optimum(6, 10, a), y = search_optimum(6, 10, b);
  CHECK(x.best_abs_ratio == y.best_abs_ratio);
  CHECK(x.best.u == y.best.u);
}

TEST_CASE("coefficient inequality") {
  const CoefficientInequality star = verify_coefficient_inequality(h_star(6, 10));
  CHECK(star.pass);
  CHECK(star.equality);
  CHECK(star.factor == 6);
  for (unsigned m : {3u, 5u, 6u}) {
    const auto members = sample_class_members(m, 10, SearchOptions{1000, 3, 1});
    CHECK_FALSE(members.empty());
    for (const auto& h : members) CHECK(verify_coefficient_inequality(h).pass);
  }
  CandidatePolynomial off = h_star(4, 10);
  off.u[1] *= 2;
  CHECK_THROWS_WITH_AS(verify_coefficient_inequality(off), "derivative does not vanish at -n", std::domain_error);
  CandidatePolynomial constant = h_star(4, 10);
  constant.u[0] = 1;
  CHECK_THROWS_AS(verify_coefficient_inequality(constant), std::invalid_argument);
}

TEST_CASE("objective grows with a") {
  const double grid[] = {2.5, 5, 7.5, 10};
  const AReductionReport rep = a_reduction_check(4, 10, grid, SearchOptions{1000, 0, 1});
  REQUIRE(rep.entries.size() == 4);
  CHECK(rep.non_decreasing);
  CHECK(rep.max_at_n);
}

TEST_CASE("optimality rows and CSV") {
  const OptimalityRow row = optimality_row(4, 10, SearchOptions{1000, 0, 1});
  CHECK(row.extremal_bound == doctest::Approx(0.6));
  CHECK(std::abs(row.gap) < 1e-6);
  std::ostringstream out;
  write_optimality_csv(out, std::vector<OptimalityRow>{row});
  CHECK(out.str().rfind("m,n,best_ratio,best_abs_ratio,extremal_bound,gap\n4,", 0) == 0);
}
