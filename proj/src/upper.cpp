#include "borsuk/upper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "borsuk/parallel.hpp"

namespace borsuk {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Euclidean projection onto the probability simplex.
void project_simplex(Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  std::vector<double> s(x.data(), x.data() + n);
  std::sort(s.begin(), s.end(), std::greater<>());
  double cumulative = 0, theta = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    cumulative += s[i];
    const double t = (cumulative - 1) / static_cast<double>(i + 1);
    if (s[i] - t > 0) theta = t;
  }
  for (Eigen::Index i = 0; i < n; ++i) x[i] = std::max(0.0, x[i] - theta);
}

// Cosine between the directions of G-weighted combinations w and v of the
// facet vertices; gradients of -cos written into gw, gv when requested.
double neg_cos(const Eigen::MatrixXd& G, const Eigen::VectorXd& w, const Eigen::VectorXd& v,
               Eigen::VectorXd* gw = nullptr, Eigen::VectorXd* gv = nullptr) {
  const Eigen::VectorXd Gw = G * w, Gv = G * v;
  const double A = w.dot(Gv), B = w.dot(Gw), C = v.dot(Gv);
  const double root = std::sqrt(B * C);
  const double cos = A / root;
  if (gw) *gw = -(Gv / root - cos * Gw / B);
  if (gv) *gv = -(Gw / root - cos * Gv / C);
  return -cos;
}

struct AscentResult {
  double value = 0;  // max of -cos
};

AscentResult ascend(const Eigen::MatrixXd& G, Eigen::VectorXd w, Eigen::VectorXd v, unsigned d, std::uint64_t restart) {
  constexpr int kMaxIter = 200000;
  constexpr double kStationary = 1e-13;
  double step = 1.0;
  Eigen::VectorXd gw, gv;
  double f = neg_cos(G, w, v, &gw, &gv);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    // Projected-gradient stationarity measure at unit step.
    Eigen::VectorXd pw = w + gw, pv = v + gv;
    project_simplex(pw);
    project_simplex(pv);
    const double stationarity = std::sqrt((pw - w).squaredNorm() + (pv - v).squaredNorm());
    if (stationarity < kStationary) return {f};

    while (true) {
      Eigen::VectorXd nw = w + step * gw, nv = v + step * gv;
      project_simplex(nw);
      project_simplex(nv);
      const double moved = gw.dot(nw - w) + gv.dot(nv - v);
      if (moved <= 0) return {f};
      Eigen::VectorXd ngw, ngv;
      const double nf = neg_cos(G, nw, nv, &ngw, &ngv);
      if (nf >= f + 1e-4 * moved) {
        w = std::move(nw);
        v = std::move(nv);
        gw = std::move(ngw);
        gv = std::move(ngv);
        f = nf;
        step = std::min(step * 2, 1e6);
        break;
      }
      step /= 2;
      if (step < 1e-30) {
        if (stationarity < 1e-6) return {f};  // converged to rounding level
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "piece_diameter: ascent step underflow without stationarity (d=%u, restart=%llu, "
                      "stationarity=%.3e, value=%.17g)",
                      d, static_cast<unsigned long long>(restart), stationarity, f);
        throw std::runtime_error(buf);
      }
    }
  }
  return {f};
}

}  // namespace

Eigen::MatrixXd simplex_vertices(unsigned d, double r) {
  if (d < 2) throw std::invalid_argument("simplex_vertices needs d >= 2");
  const Eigen::Index m = d + 1;
  // Centered standard basis of R^{d+1}, expressed in an orthonormal basis of
  // the hyperplane orthogonal to the all-ones vector.
  Eigen::MatrixXd centered = Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / m);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::VectorXd::Ones(m));
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd coords = centered * Q.rightCols(d);
  return coords * (r / std::sqrt(static_cast<double>(d) / m));
}

double piece_diameter(unsigned d, double r, const PieceDiameterOptions& opts) {
  if (d < 2 || d > kNumericDimensionCap) throw std::invalid_argument("piece_diameter: d outside [2, 12]");
  if (!(r > 0)) throw std::invalid_argument("piece_diameter: r must be positive");
  if (opts.restarts == 0) throw std::invalid_argument("piece_diameter: restarts must be positive");
  // Gram matrix of the facet's d vertices at unit radius.
  const Eigen::MatrixXd G = (1.0 + 1.0 / d) * Eigen::MatrixXd::Identity(d, d) - Eigen::MatrixXd::Constant(d, d, 1.0 / d);

  std::vector<double> best(opts.restarts, -2);
  parallel_chunks(opts.restarts, opts.threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(splitmix(opts.seed ^ splitmix(i)));
      auto dirichlet = [&] {
        Eigen::VectorXd x(d);
        for (unsigned j = 0; j < d; ++j) x[j] = -std::log(1.0 - unit_uniform(rng));
        return Eigen::VectorXd(x / x.sum());
      };
      Eigen::VectorXd w = dirichlet();
      Eigen::VectorXd v = dirichlet();
      best[i] = ascend(G, w, v, d, i).value;
    }
  });
  const double max_neg_cos = *std::max_element(best.begin(), best.end());
  return r * std::sqrt(2 + 2 * max_neg_cos);
}

TrendFit fit_trend(const PieceDiameterOptions& opts) {
  // Least squares of y = 1 - diam/2 against x = 1/d through the origin.
  std::vector<double> xs, ys;
  for (unsigned d = 2; d <= kNumericDimensionCap; ++d) {
    xs.push_back(1.0 / d);
    ys.push_back(1.0 - piece_diameter(d, 1.0, opts) / 2);
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += xs[i] * ys[i];
    sxx += xs[i] * xs[i];
  }
  TrendFit fit;
  fit.c_fit = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] / xs[i] - fit.c_fit;
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / xs.size());
  return fit;
}

SimplexPartitionReport theorem4_check(unsigned d, double c_r, const TrendFit& trend, const PieceDiameterOptions& opts) {
  if (d < 2) throw std::invalid_argument("theorem4_check needs d >= 2");
  SimplexPartitionReport rep;
  rep.d = d;
  rep.c_r = c_r;
  rep.r = 0.5 + c_r / d;
  rep.trend = trend;
  if (d <= kNumericDimensionCap) {
    rep.piece_diam = piece_diameter(d, rep.r, opts);
  } else {
    rep.extrapolated = true;
    rep.piece_diam = 2 * rep.r * (1 - trend.c_fit / d);
  }
  rep.pass = rep.piece_diam < 1;
  return rep;
}

SimplexPartitionReport theorem4_check(unsigned d, double c_r, const PieceDiameterOptions& opts) {
  return theorem4_check(d, c_r, fit_trend(opts), opts);
}

LogReal rogers_cover_log(const Real& r, std::uint64_t d) {
  using boost::multiprecision::log;
  if (!(r > Real(1) / 2)) throw std::invalid_argument("rogers_cover_log needs r > 1/2");
  return LogReal::from_log(Real(d) * log(2 * r));
}

void write_partition_csv(std::ostream& out, std::span<const SimplexPartitionReport> rows) {
  out << "d,r,piece_diam,pass,extrapolated\n";
  char buf[64];
  for (const auto& row : rows) {
    out << row.d << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.r);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.piece_diam);
    out << buf << ',' << (row.pass ? "true" : "false") << ',' << (row.extrapolated ? "true" : "false") << '\n';
  }
}

}  // namespace borsuk
