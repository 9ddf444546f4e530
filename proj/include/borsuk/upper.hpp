// Inscribed-simplex partition of the sphere: numeric piece diameters and the
// Rogers covering estimate.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "borsuk/exactnum.hpp"

namespace borsuk {

/// Rows are the d+1 vertices of a regular simplex inscribed in the radius-r sphere of R^d.
Eigen::MatrixXd simplex_vertices(unsigned d, double r);

inline constexpr unsigned kNumericDimensionCap = 12;

struct PieceDiameterOptions {
  unsigned restarts = 50;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Max distance between two points of the radial projection of one facet,
/// by multi-start projected gradient ascent over convex weights.
double piece_diameter(unsigned d, double r, const PieceDiameterOptions& opts = {});

struct TrendFit {
  double c_fit = 0;     // piece_diam ~ 2r (1 - c_fit / d)
  double residual = 0;  // RMS of d (1 - piece_diam / 2r) - c_fit
};

struct SimplexPartitionReport {
  unsigned d = 0;
  double c_r = 0;
  double r = 0;
  double piece_diam = 0;
  TrendFit trend;
  bool extrapolated = false;  // d beyond the numeric regime
  bool pass = false;          // piece_diam < 1
};

/// Fit over d in {2..12} at unit radius.
TrendFit fit_trend(const PieceDiameterOptions& opts = {});

/// r = 1/2 + c_r / d; numeric for d <= 12, trend-extrapolated above.
SimplexPartitionReport theorem4_check(unsigned d, double c_r, const PieceDiameterOptions& opts = {});
SimplexPartitionReport theorem4_check(unsigned d, double c_r, const TrendFit& trend,
                                      const PieceDiameterOptions& opts = {});

/// d ln(2r), the leading term of the log of the covering count.
LogReal rogers_cover_log(const Real& r, std::uint64_t d);

/// CSV: d, r, piece_diam, pass, extrapolated.
void write_partition_csv(std::ostream& out, std::span<const SimplexPartitionReport> rows);

}  // namespace borsuk
