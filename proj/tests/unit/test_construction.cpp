#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "borsuk/construction.hpp"

using namespace borsuk;

TEST_CASE("sign vector invariants are enforced") {
  CHECK_NOTHROW(SignVector({1, -1, 1, -1}));
  CHECK_THROWS_AS(SignVector({-1, 1, 1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(SignVector({1, 1, 1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(SignVector({1, -1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SignVector({1, 0, -1, 0}), std::invalid_argument);
  const SignVector x = SignVector::from_minus_mask(0b1010, 4);
  CHECK(x == SignVector({1, -1, 1, -1}));
  CHECK(x.minus_mask() == 0b1010);
}

TEST_CASE("gen_sigma enumerates the family lexicographically") {
  const auto s4 = gen_sigma(4);
  REQUIRE(s4.size() == 3);
  CHECK(s4[0] == SignVector({1, 1, -1, -1}));
  CHECK(s4[1] == SignVector({1, -1, 1, -1}));
  CHECK(s4[2] == SignVector({1, -1, -1, 1}));
  CHECK(gen_sigma(8).size() == 35);
  CHECK(gen_sigma(12).size() == 462);
  CHECK_THROWS_AS(gen_sigma(6), std::invalid_argument);
  CHECK_THROWS_AS(gen_sigma(28), std::invalid_argument);
}

TEST_CASE("inner products from masks agree with entrywise sums") {
  const auto s = gen_sigma(8);
  for (const auto& x : s) {
    for (const auto& y : s) {
      CHECK(inner_sign(x, y) == inner_from_masks(x.minus_mask(), y.minus_mask(), 8));
    }
  }
}

TEST_CASE("star polynomial and tensor inner products") {
  CHECK(star_polynomial(-4, 1, 4) == 16 - 2 * 4 * 4);
  CHECK(star_polynomial(2, 2, 3) == 16 + 4 * 27 * 2);
  const auto s = gen_sigma(8);
  const TensorImage x(s[0], 1, 4);
  CHECK(x.tail_weight_sq == 8);
  CHECK(x.norm_sq() == 64 + 8 * 8);
  CHECK(star_inner(x, x) == x.norm_sq());
  const auto coords = star_materialize(x);
  CHECK(coords.size() == 64 + 8);
  double sq = 0;
  for (double c : coords) sq += c * c;
  CHECK(sq == doctest::Approx(128.0));
}

TEST_CASE("geometry matches the brute-force pair scan") {
  struct Case { std::uint64_t n; unsigned k; std::uint64_t a; long diam, rho, scanned; std::size_t pairs; bool degenerate; };
  for (Case c : {Case{4, 1, 4, 128, 48, 96, 0, true}, Case{8, 1, 8, 512, 192, 480, 0, true},
                 Case{12, 1, 8, 800, 336, 800, 1386, false}, Case{8, 1, 4, 288, 128, 288, 70, false}}) {
    CAPTURE(c.n);
    CAPTURE(c.a);
    const GeometryReport g = geometry(c.n, c.k, c.a, Real(1) / 2, BigRational(1, 2));
    CHECK(g.diam_sq == c.diam);
    CHECK(g.rho_sq == c.rho);
    CHECK(g.degenerate == c.degenerate);
    CHECK(g.attained_diam_sq == c.scanned);
    std::vector<TensorImage> pts;
    for (const auto& x : gen_sigma(c.n)) pts.emplace_back(x, c.k, c.a);
    const DiameterScan scan = diameter_scan(pts, 2);
    CHECK(scan.diam_sq == c.scanned);
    if (!c.degenerate) {
      CHECK(scan.pairs.size() == c.pairs);
      for (auto [i, j] : scan.pairs) CHECK(inner_sign(pts[i].base, pts[j].base) == -static_cast<std::int64_t>(c.a));
    }
    BigRational expected(c.rho, c.diam);
    expected.canonicalize();
    CHECK(g.r_prime_sq == expected);
  }
}

TEST_CASE("diameter scan does not depend on the thread count") {
  std::vector<TensorImage> pts;
  for (const auto& x : gen_sigma(12)) pts.emplace_back(x, 1, 8);
  const DiameterScan one = diameter_scan(pts, 1), four = diameter_scan(pts, 4);
  CHECK(one.diam_sq == four.diam_sq);
  CHECK(one.pairs == four.pairs);
  CHECK(diameter_scan(std::span<const TensorImage>(pts.data(), 1)).diam_sq == 0);
}

TEST_CASE("compression must fit inside the target sphere") {
  CHECK_THROWS_WITH_AS(geometry(8, 1, 4, Real("0.1"), BigRational(1, 10)), "compression failed: r'^2 > r^2",
                       std::domain_error);
}

TEST_CASE("embedding lands on the radius-r sphere") {
  const ParamSet ps = plan_fixed(parse_decimal("0.71"), BigInt(300));
  const GeometryReport g = geometry(ps);
  const auto sigma = gen_sigma(ps.n);
  const TensorImage x(sigma[1], ps.k, ps.a), y(sigma[2], ps.k, ps.a);
  const auto ex = embed(ps.d, g, x), ey = embed(ps.d, g, y);
  REQUIRE(ex.size() == to_u64(ps.d));
  double nx = 0, dist = 0;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    nx += ex[i] * ex[i];
    dist += (ex[i] - ey[i]) * (ex[i] - ey[i]);
  }
  CHECK(nx == doctest::Approx(0.71 * 0.71).epsilon(1e-12));
  CHECK(dist <= 1 + 1e-12);
}

TEST_CASE("point set writer emits its header") {
  const ParamSet ps = plan_fixed(parse_decimal("0.71"), BigInt(300));
  const GeometryReport g = geometry(ps);
  std::vector<TensorImage> pts;
  for (const auto& x : gen_sigma(ps.n)) pts.emplace_back(x, ps.k, ps.a);
  std::ostringstream out;
  write_point_set(out, ps, g, pts);
  CHECK(out.str().rfind("# borsuk-omega", 0) == 0);
}
