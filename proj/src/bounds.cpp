#include "borsuk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace borsuk {

namespace {

BigInt grid_d(std::uint64_t n, unsigned k) {
  BigInt d;
  mpz_ui_pow_ui(d.get_mpz_t(), n, 2 * k);
  return d + 1;
}

}  // namespace

CountBound count_bound(std::uint64_t n, std::uint64_t p, const BigInt& threshold) {
  if (n == 0 || n % 4 != 0) throw std::invalid_argument("count_bound: n must be a positive multiple of 4");
  if (p == 0) throw std::invalid_argument("count_bound: p must be positive");
  CountBound b;
  b.n = n;
  b.p = p;
  b.threshold = threshold;
  if (n <= kExactCountCap) {
    b.numerator = binomial(n - 1, n / 2 - 1);
    b.denominator = binomial_tail_sum(n, p);
    b.ratio_log = LogReal::from_log(ln(*b.numerator) - ln(*b.denominator));
    b.passes = *b.numerator > *b.denominator * threshold;
  } else {
    b.ratio_log = log_binomial(n - 1, n / 2 - 1) / log_binomial_tail_sum(n, p);
    b.passes = b.ratio_log.log_abs() > ln(threshold);
  }
  return b;
}

CountBound lower_bound(const ParamSet& ps) { return count_bound(ps.n, ps.p, ps.d + 1); }

Real binary_entropy(const Real& q) {
  using boost::multiprecision::log2;
  if (q <= 0 || q >= 1) return Real(0);
  return -q * log2(q) - (1 - q) * log2(1 - q);
}

AsymptoticBase asymptotic_base(const Real& p0) {
  using boost::multiprecision::pow;
  if (!(p0 >= Real(1) / 4 && p0 < Real(1) / 2)) throw std::domain_error("asymptotic_base: p0 outside [1/4, 1/2)");
  AsymptoticBase base;
  base.p0 = p0;
  base.c_prime = pow(Real(2), binary_entropy(p0));
  base.c = 2 / base.c_prime;
  const double c_prime = static_cast<double>(base.c_prime);
  for (std::uint64_t n : {400u, 800u, 1600u}) {
    BaseSample s;
    s.n = n;
    s.p = to_u64(ceil_to_int(p0 * Real(n)));
    s.root = std::exp(static_cast<double>(ln(binomial_tail_sum(n, s.p)) / n));
    s.error = std::abs(s.root - c_prime);
    base.samples.push_back(s);
  }
  base.monotone = base.samples[1].error < base.samples[0].error && base.samples[2].error < base.samples[1].error;
  return base;
}

AsymptoticBase asymptotic_base(const ParamSet& ps) { return asymptotic_base(ps.p0()); }

namespace {

// Double-precision ln[C(n-1, n/2-1) / Sum_{i<p} C(n, i)], used only to screen grid points.
double approx_count_log(std::uint64_t n, std::uint64_t p) {
  const double nn = static_cast<double>(n);
  const double numerator = std::lgamma(nn) - std::lgamma(nn / 2) - std::lgamma(nn / 2 + 1);
  const std::uint64_t top = std::min(p - 1, n);
  const std::uint64_t peak = std::min(top, n / 2);
  double sum = 1, term = 1;
  for (std::uint64_t i = peak; i > 0; --i) {
    term *= static_cast<double>(i) / static_cast<double>(n - i + 1);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  term = 1;
  for (std::uint64_t i = peak; i < top; ++i) {
    term *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  const double peak_log = std::lgamma(nn + 1) - std::lgamma(static_cast<double>(peak) + 1) -
                          std::lgamma(static_cast<double>(n - peak) + 1);
  return numerator - peak_log - std::log(sum);
}

}  // namespace

D0Result find_d0(const BigRational& r, double tol, const BigInt& cap) {
  if (r <= BigRational(1, 2)) throw std::invalid_argument("radius not above one half");
  BigRational rsq = r * r;
  rsq.canonicalize();
  const unsigned k = solve_k(rsq);
  // a0 depends on r alone; n, a and p follow the grid.
  const Real a0 = rsq >= BigRational(1, 2) ? Real(0) : solve_a0(to_real(rsq), k, tol);

  // The count ratio is not monotone in n (p moves with the prime scan), so every
  // grid point is visited: a double-precision screen, confirmed exactly near the margin.
  std::uint64_t evaluated = 0;
  std::uint64_t found = 0;
  for (std::uint64_t n = 4;; n += 4) {
    const BigInt d = grid_d(n, k);
    if (d > cap) throw std::domain_error("no d0 found below cap");
    ++evaluated;
    const std::uint64_t p = choose_a(a0, n).second;
    const double margin = approx_count_log(n, p) - static_cast<double>(ln(d + 1));
    const double band = 1e-6 * std::max(1.0, std::abs(margin));
    if (margin < -band) continue;
    if (margin > band || count_bound(n, p, d + 1).passes) {
      found = n;
      break;
    }
  }

  D0Result res;
  res.params = plan_fixed(r, grid_d(found, k), tol);
  res.d0 = res.params.d;
  res.certificate = lower_bound(res.params);
  if (!res.certificate.passes) throw std::logic_error("find_d0: screened pass not confirmed");
  if (found > 4) {
    ParamSet prev = plan_fixed(r, grid_d(found - 4, k), tol);
    res.previous_d = prev.d;
    res.previous = lower_bound(prev);
    // d0 - 1 lies in the previous grid cell, where n and p are unchanged.
    res.d0_minus_one_fails = !count_bound(prev.n, prev.p, res.d0).passes;
  } else {
    res.d0_minus_one_fails = true;  // no admissible n below the first grid point
  }
  res.grid_points = evaluated;
  return res;
}

Real theorem2_exponent(const ParamSet& ps) {
  using boost::multiprecision::pow;
  CountBound b = lower_bound(ps);
  Real root = pow(to_real(ps.d), Real(1) / (2 * ps.k));
  return b.ratio_log.log_abs() / root;
}

const InequalityCheck* Theorem3Report::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

Theorem3Report theorem3_check(const BigInt& d, double c_phi) {
  Theorem3Report rep;
  rep.d = d;
  rep.c_phi = Real(c_phi);
  ShrinkingPlan plan = shrinking_pipeline(d, c_phi);
  rep.checks = plan.checks;
  rep.params = plan.params;
  if (plan.params) {
    const ParamSet& ps = *plan.params;
    // C(n-1, n/2-1) = (1/2) C(n, n/2), so the pigeonhole count is reused.
    CountBound b = count_bound(ps.n, ps.p, d + 2);
    rep.final_ratio_log = b.ratio_log;
    rep.checks.push_back({kCountCheckName, b.ratio_log.log_abs(), ln(d + 2), b.passes});
  }
  rep.all_pass = plan.params.has_value() && rep.first_failure() == nullptr;
  return rep;
}

}  // namespace borsuk
