#include "borsuk/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "borsuk/parallel.hpp"

namespace borsuk {

namespace {

constexpr int kGridPoints = 10'000;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double exponential(std::mt19937_64& rng) { return -std::log(1.0 - unit_uniform(rng)); }

// Sum_j |u_j| n^j: the natural size of h on [-n, n].
double scale_of(const CandidatePolynomial& h) {
  double s = 0, power = 1;
  for (double c : h.u) {
    s += std::abs(c) * power;
    power *= h.n;
  }
  return s;
}

// Coordinates w_j = u_j n^j with alpha = a/n: h(n) = sum w_j, n h'(-a) = sum_j j (-alpha)^{j-1} w_j,
// and -h(-a) = sum_j -(-alpha)^j w_j.
struct NormalizedProblem {
  std::vector<double> g;    // derivative row
  std::vector<double> obj;  // objective row
};

NormalizedProblem normalized_problem(unsigned m, double alpha) {
  NormalizedProblem pr;
  pr.g.assign(m + 1, 0);
  pr.obj.assign(m + 1, 0);
  for (unsigned j = 0; j <= m; ++j) {
    pr.obj[j] = -std::pow(-alpha, j);
    if (j > 0) pr.g[j] = j * std::pow(-alpha, j - 1);
  }
  return pr;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

CandidatePolynomial from_weights(const std::vector<double>& w, double a, double n) {
  CandidatePolynomial h;
  h.a = a;
  h.n = n;
  h.u.resize(w.size());
  double power = 1;
  for (std::size_t j = 0; j < w.size(); ++j) {
    h.u[j] = w[j] / power;
    power *= n;
  }
  return h;
}

// A random point of {w >= 0, sum w = 1, g.w = 0}: odd-index mass balances even-index mass.
bool sample_feasible(const NormalizedProblem& pr, std::mt19937_64& rng, std::vector<double>& w) {
  const std::size_t len = pr.g.size();
  std::vector<double> pos(len, 0), neg(len, 0);
  double gpos = 0, gneg = 0;
  for (std::size_t j = 1; j < len; ++j) {
    const double keep = unit_uniform(rng);
    const double e = exponential(rng);
    if (keep < 0.5) continue;  // sparse draws reach low-dimensional faces
    if (pr.g[j] > 0) {
      pos[j] = e;
      gpos += e * pr.g[j];
    } else if (pr.g[j] < 0) {
      neg[j] = e;
      gneg -= e * pr.g[j];
    }
  }
  const double constant = unit_uniform(rng) < 0.5 ? 0.0 : exponential(rng) * 0.1;
  if (gpos <= 0 || gneg <= 0) return false;
  w.assign(len, 0);
  w[0] = constant;
  for (std::size_t j = 1; j < len; ++j) w[j] = pos[j] / gpos + neg[j] / gneg;
  double total = 0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return true;
}

// Best-improvement moves along three-coordinate directions that keep both
// equality constraints; each move drives a coordinate to zero. Records the path.
std::vector<std::vector<double>> pivot_walk(const NormalizedProblem& pr, std::vector<double> w) {
  std::vector<std::vector<double>> path{w};
  const std::size_t len = w.size();
  for (int iter = 0; iter < 1000; ++iter) {
    double best_gain = 1e-15;
    std::vector<double> best_w;
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t j = i + 1; j < len; ++j) {
        for (std::size_t l = j + 1; l < len; ++l) {
          // Null direction of [1 1 1; g_i g_j g_l].
          double c[3] = {pr.g[l] - pr.g[j], pr.g[i] - pr.g[l], pr.g[j] - pr.g[i]};
          const std::size_t idx[3] = {i, j, l};
          double rate = c[0] * pr.obj[i] + c[1] * pr.obj[j] + c[2] * pr.obj[l];
          if (rate < 0) {
            for (double& x : c) x = -x;
            rate = -rate;
          }
          double step = INFINITY;
          for (int q = 0; q < 3; ++q) {
            if (c[q] < 0) step = std::min(step, w[idx[q]] / -c[q]);
          }
          if (!std::isfinite(step) || step <= 0) continue;
          const double gain = step * rate;
          if (gain > best_gain) {
            best_gain = gain;
            best_w = w;
            for (int q = 0; q < 3; ++q) best_w[idx[q]] = std::max(0.0, w[idx[q]] + step * c[q]);
            for (int q = 0; q < 3; ++q) {
              if (c[q] < 0 && w[idx[q]] / -c[q] == step) best_w[idx[q]] = 0;
            }
          }
        }
      }
    }
    if (best_w.empty()) break;
    w = std::move(best_w);
    path.push_back(w);
  }
  return path;
}

}  // namespace

double CandidatePolynomial::operator()(double t) const {
  double s = 0;
  for (std::size_t j = u.size(); j-- > 0;) s = s * t + u[j];
  return s;
}

double CandidatePolynomial::derivative(double t) const {
  double s = 0;
  for (std::size_t j = u.size(); j-- > 1;) s = s * t + j * u[j];
  return s;
}

Membership check_membership(const CandidatePolynomial& h) {
  if (!(h.n > 0)) throw std::invalid_argument("check_membership: n must be positive");
  Membership mb;
  const double scale = scale_of(h);
  const double tol = 1e-12 * std::max(scale, 1e-300);
  mb.nonnegative = std::all_of(h.u.begin(), h.u.end(), [](double c) { return c >= 0; });
  const double at_a = h(-h.a);
  mb.nonpositive_at_a = at_a <= tol;
  mb.stationary = std::abs(h.derivative(-h.a)) * h.n <= 1e-9 * scale;

  bool minimum = h.a > 0 && h.a <= h.n;
  double prev_t = -h.n, prev_d = h.derivative(prev_t);
  for (int i = 0; i < kGridPoints && minimum; ++i) {
    const double t = -h.n + 2 * h.n * i / (kGridPoints - 1);
    if (h(t) < at_a - tol) minimum = false;
    const double dv = h.derivative(t);
    if (i > 0 && (prev_d < 0) != (dv < 0)) {
      // Bisect the sign change of h' to a critical point.
      double lo = prev_t, hi = t;
      const bool lo_neg = prev_d < 0;
      for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ((h.derivative(mid) < 0) == lo_neg ? lo : hi) = mid;
      }
      if (h(0.5 * (lo + hi)) < at_a - tol) minimum = false;
    }
    prev_t = t;
    prev_d = dv;
  }
  mb.minimum_at_a = minimum;
  return mb;
}

CandidatePolynomial h_star(unsigned m, double n) {
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("h_star needs an even degree m >= 2");
  if (!(n > 0)) throw std::invalid_argument("h_star needs n > 0");
  CandidatePolynomial h;
  h.n = n;
  h.a = n;
  h.u.assign(m + 1, 0);
  h.u[m] = 1;
  h.u[1] = m * std::pow(n, m - 1);
  return h;
}

CandidatePolynomial construction_polynomial(unsigned k, double a, double n) {
  if (k == 0) throw std::invalid_argument("construction_polynomial needs k >= 1");
  CandidatePolynomial h;
  h.n = n;
  h.a = a;
  h.u.assign(2 * k + 1, 0);
  h.u[2 * k] = 1;
  h.u[1] = 2.0 * k * std::pow(a, 2 * k - 1);
  return h;
}

RatioValue ratio(const CandidatePolynomial& h) {
  RatioValue rv;
  rv.h_n = h(h.n);
  rv.h_neg_a = h(-h.a);
  if (rv.h_neg_a > 0) throw std::domain_error("not in reduced class: h(-a) > 0");
  if (!(rv.h_n > 0)) throw std::domain_error("not in reduced class: h(n) <= 0");
  rv.value = rv.h_n / (2 * rv.h_n - 2 * rv.h_neg_a);
  rv.abs_ratio = -rv.h_neg_a / rv.h_n;
  return rv;
}

SearchResult search_optimum(unsigned m, double n, double a, const SearchOptions& opts) {
  if (m == 0) throw std::invalid_argument("search_optimum needs m >= 1");
  if (!(n > 0) || !(a > 0) || a > n) throw std::invalid_argument("search_optimum needs 0 < a <= n");
  if (opts.samples < 1000) throw std::invalid_argument("search_optimum needs at least 1000 samples");
  const NormalizedProblem pr = normalized_problem(m, a / n);

  struct Partial {
    double best_q = -INFINITY;
    std::vector<double> best_w;
  };
  std::vector<Partial> parts(std::max(1u, opts.threads));
  parallel_chunks(opts.samples, opts.threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    Partial& part = parts[chunk];
    std::vector<double> w;
    for (std::size_t s = begin; s < end; ++s) {
      std::mt19937_64 rng(splitmix(splitmix(opts.seed) ^ s));
      bool ok = false;
      for (int attempt = 0; attempt < 64 && !ok; ++attempt) ok = sample_feasible(pr, rng, w);
      if (!ok) continue;
      const auto path = pivot_walk(pr, w);
      // The objective rises along the path; take the last point that is a class member.
      for (std::size_t i = path.size(); i-- > 0;) {
        const double q = dot(pr.obj, path[i]);
        if (!(q > part.best_q)) break;
        const Membership mb = check_membership(from_weights(path[i], a, n));
        if (mb.in_reduced_class()) {
          part.best_q = q;
          part.best_w = path[i];
          break;
        }
      }
    }
  });

  SearchResult res;
  double best_q = -INFINITY;
  for (const auto& part : parts) {
    if (part.best_q > best_q) {
      best_q = part.best_q;
      res.best = from_weights(part.best_w, a, n);
      res.found = true;
    }
  }
  if (res.found) {
    res.best_abs_ratio = best_q;
    res.best_ratio = 1 / (2 + 2 * best_q);
  }
  return res;
}

std::vector<CandidatePolynomial> sample_class_members(unsigned m, double n, const SearchOptions& opts) {
  if (m == 0) throw std::invalid_argument("sample_class_members needs m >= 1");
  if (!(n > 0)) throw std::invalid_argument("sample_class_members needs n > 0");
  const NormalizedProblem pr = normalized_problem(m, 1.0);
  std::vector<std::vector<CandidatePolynomial>> parts(std::max(1u, opts.threads));
  parallel_chunks(opts.samples, opts.threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::vector<double> w;
    for (std::size_t s = begin; s < end; ++s) {
      std::mt19937_64 rng(splitmix(splitmix(opts.seed) ^ s));
      bool ok = false;
      for (int attempt = 0; attempt < 64 && !ok; ++attempt) ok = sample_feasible(pr, rng, w);
      if (!ok) continue;
      const auto path = pivot_walk(pr, w);
      for (const auto* point : {&path.front(), &path.back()}) {
        CandidatePolynomial h = from_weights(*point, n, n);
        h.u[0] = 0;  // the constant term moves neither the minimiser nor h'
        if (check_membership(h).in_class()) parts[chunk].push_back(std::move(h));
        if (path.size() == 1) break;
      }
    }
  });
  std::vector<CandidatePolynomial> members;
  for (auto& part : parts) {
    for (auto& h : part) members.push_back(std::move(h));
  }
  return members;
}

CoefficientInequality verify_coefficient_inequality(const CandidatePolynomial& h) {
  const unsigned m = h.m();
  if (m == 0) throw std::invalid_argument("coefficient inequality needs degree >= 1");
  if (std::abs(h.a - h.n) > 1e-12 * h.n) throw std::invalid_argument("coefficient inequality needs a = n");
  if (h.u[0] != 0) throw std::invalid_argument("coefficient inequality needs u_0 = 0");
  if (std::abs(h.derivative(-h.n)) * h.n > 1e-9 * scale_of(h)) {
    throw std::domain_error("derivative does not vanish at -n");
  }
  CoefficientInequality ci;
  ci.even_variant = m % 2 == 0;
  ci.factor = ci.even_variant ? m : m - 1;
  double odd = 0, even = 0, power = 1;
  for (unsigned j = 0; j <= m; ++j) {
    if (j % 2 == 1) odd += h.u[j] * power;
    if (j >= 2 && j % 2 == 0) even += h.u[j] * power;
    power *= h.n;
  }
  ci.lhs = odd;
  ci.rhs = ci.factor * even;
  const double tol = 1e-12 * std::max(ci.lhs, ci.rhs);
  ci.pass = ci.lhs <= ci.rhs + tol;
  ci.equality = std::abs(ci.lhs - ci.rhs) <= tol;
  return ci;
}

AReductionReport a_reduction_check(unsigned m, double n, std::span<const double> a_grid, const SearchOptions& opts) {
  AReductionReport rep;
  if (a_grid.empty()) throw std::invalid_argument("a_reduction_check needs a nonempty grid");
  std::vector<double> grid(a_grid.begin(), a_grid.end());
  std::sort(grid.begin(), grid.end());
  for (double a : grid) {
    if (!(a > 0) || a > n) throw std::invalid_argument("a_reduction_check: grid outside (0, n]");
    SearchResult sr = search_optimum(m, n, a, opts);
    rep.entries.push_back({a, sr.found ? sr.best_abs_ratio : -INFINITY});
  }
  constexpr double kTol = 1e-4;
  rep.non_decreasing = true;
  double best = -INFINITY;
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    if (i > 0 && rep.entries[i].best_abs_ratio < rep.entries[i - 1].best_abs_ratio - kTol) rep.non_decreasing = false;
    best = std::max(best, rep.entries[i].best_abs_ratio);
  }
  const auto& last = rep.entries.back();
  rep.max_at_n = last.a == n && last.best_abs_ratio >= best - kTol;
  return rep;
}

double extremal_abs_ratio(unsigned m) {
  if (m < 2) return 0;
  const unsigned even = m % 2 == 0 ? m : m - 1;
  return static_cast<double>(even - 1) / (even + 1);
}

OptimalityRow optimality_row(unsigned m, double n, const SearchOptions& opts) {
  SearchResult sr = search_optimum(m, n, opts);
  OptimalityRow row;
  row.m = m;
  row.n = n;
  row.best_ratio = sr.best_ratio;
  row.best_abs_ratio = sr.best_abs_ratio;
  row.extremal_bound = extremal_abs_ratio(m);
  row.gap = row.extremal_bound - row.best_abs_ratio;
  return row;
}

void write_optimality_csv(std::ostream& out, std::span<const OptimalityRow> rows) {
  out << "m,n,best_ratio,best_abs_ratio,extremal_bound,gap\n";
  char buf[200];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.m, r.n, r.best_ratio, r.best_abs_ratio,
                  r.extremal_bound, r.gap);
    out << buf;
  }
}

}  // namespace borsuk
