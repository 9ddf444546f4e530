#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "borsuk/upper.hpp"

using namespace borsuk;

namespace {

// Farthest pair: barycentres of complementary vertex sets of sizes s = floor(d/2) and t = d - s,
// at angle cos = -sqrt(st / ((s+1)(t+1))).
double closed_form_unit_diameter(unsigned d) {
  const double s = d / 2, t = d - s;
  const double cos = -std::sqrt(s * t / ((s + 1) * (t + 1)));
  return std::sqrt(2 - 2 * cos);
}

}  // namespace

TEST_CASE("simplex vertices are regular and inscribed") {
  for (unsigned d : {2u, 3u, 7u}) {
    const Eigen::MatrixXd V = simplex_vertices(d, 0.75);
    REQUIRE(V.rows() == d + 1);
    REQUIRE(V.cols() == d);
    for (Eigen::Index i = 0; i <= d; ++i) {
      CHECK(V.row(i).norm() == doctest::Approx(0.75));
      for (Eigen::Index j = i + 1; j <= d; ++j) {
        CHECK(V.row(i).dot(V.row(j)) == doctest::Approx(-0.75 * 0.75 / d));
      }
    }
    CHECK(V.colwise().sum().norm() < 1e-12);
  }
  CHECK_THROWS_AS(simplex_vertices(1, 1.0), std::invalid_argument);
}

TEST_CASE("piece diameters match the closed form") {
  const double expected[] = {1.7320508075688773, 1.7761476679542305, 1.8257418583505537, 1.8477590650225735,
                             1.8708286933869707, 1.8839302902397866, 1.8973665961010276, 1.906041227742845,
                             1.9148542155126762, 1.921017571355617,  1.9272482233188631};
  for (unsigned d = 2; d <= 12; ++d) {
    CAPTURE(d);
    const double got = piece_diameter(d, 1.0);
    CHECK(got == doctest::Approx(expected[d - 2]).epsilon(1e-8));
    CHECK(got == doctest::Approx(closed_form_unit_diameter(d)).epsilon(1e-8));
  }
  CHECK(piece_diameter(2, 0.505) == doctest::Approx(0.505 * std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("piece diameter is reproducible and thread independent") {
  PieceDiameterOptions one, four;
  one.seed = four.seed = 42;
  four.threads = 4;
  CHECK(piece_diameter(9, 1.0, one) == piece_diameter(9, 1.0, four));
  CHECK_THROWS_AS(piece_diameter(13, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(piece_diameter(1, 1.0), std::invalid_argument);
  PieceDiameterOptions none;
  none.restarts = 0;
  CHECK_THROWS_AS(piece_diameter(3, 1.0, none), std::invalid_argument);
}

TEST_CASE("trend fit and partition checks") {
  const TrendFit trend = fit_trend();
  CHECK(trend.c_fit > 0.25);
  CHECK(trend.c_fit < 0.5);
  for (unsigned d = 2; d <= 10; ++d) {
    const SimplexPartitionReport rep = theorem4_check(d, 0.01, trend);
    CHECK(rep.pass);
    CHECK_FALSE(rep.extrapolated);
    CHECK(rep.r == doctest::Approx(0.5 + 0.01 / d));
  }
  const SimplexPartitionReport far = theorem4_check(1000, 0.01, trend);
  CHECK(far.extrapolated);
  CHECK(far.piece_diam == doctest::Approx(2 * far.r * (1 - trend.c_fit / 1000)));
  const SimplexPartitionReport wide = theorem4_check(4, 1.0, trend);
  CHECK_FALSE(wide.pass);
}

TEST_CASE("covering log and CSV") {
  CHECK(static_cast<double>(rogers_cover_log(Real("0.75"), 100).log_abs()) == doctest::Approx(100 * std::log(1.5)));
  CHECK_THROWS_AS(rogers_cover_log(Real("0.5"), 10), std::invalid_argument);
  std::vector<SimplexPartitionReport> rows{theorem4_check(3, 0.01)};
  std::ostringstream out;
  write_partition_csv(out, rows);
  CHECK(out.str().rfind("d,r,piece_diam,pass,extrapolated\n3,", 0) == 0);
}
