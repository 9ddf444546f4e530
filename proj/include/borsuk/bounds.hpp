// Pigeonhole lower bounds on the partition number, their asymptotic base,
// threshold search in d, and the shrinking-radius inequality chain.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "borsuk/exactnum.hpp"
#include "borsuk/params.hpp"

namespace borsuk {

/// |Sigma| / Sum_{i<p} C(n, i) compared against a threshold (d+1 or d+2).
struct CountBound {
  std::uint64_t n = 0, p = 0;
  std::optional<BigInt> numerator;    // C(n-1, n/2-1), exact when n <= kExactCountCap
  std::optional<BigInt> denominator;  // Sum_{i<p} C(n, i)
  LogReal ratio_log;                  // the ratio, stored by its log
  BigInt threshold;
  bool passes = false;  // numerator > denominator * threshold
};

inline constexpr std::uint64_t kExactCountCap = 10'000;

/// Counting bound for explicit (n, p) against `threshold`.
CountBound count_bound(std::uint64_t n, std::uint64_t p, const BigInt& threshold);

/// count_bound(ps.n, ps.p, ps.d + 1).
CountBound lower_bound(const ParamSet& ps);

struct BaseSample {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  double root = 0;   // (Sum_{i<p} C(n,i))^{1/n}
  double error = 0;  // |root - c_prime|
};

struct AsymptoticBase {
  Real p0;
  Real c_prime;  // 2^{H(p0)}
  Real c;        // 2 / c_prime
  std::vector<BaseSample> samples;
  bool monotone = false;  // errors strictly decreasing along samples
};

/// Entropy base for p0 in [1/4, 1/2), with an empirical certificate at n = 400, 800, 1600.
AsymptoticBase asymptotic_base(const Real& p0);
AsymptoticBase asymptotic_base(const ParamSet& ps);

/// Binary entropy in bits.
Real binary_entropy(const Real& q);

struct D0Result {
  BigInt d0;
  ParamSet params;
  CountBound certificate;
  BigInt previous_d;  // preceding grid point
  CountBound previous;
  bool d0_minus_one_fails = false;
  std::uint64_t grid_points = 0;  // grid points evaluated
};

/// Least d on the grid n^{2k} + 1 whose counting bound beats d + 1.
/// Throws "no d0 found below cap" past `cap`.
D0Result find_d0(const BigRational& r, double tol = 1e-12, const BigInt& cap = BigInt("1000000000000000000000000"));

/// ln(lower bound ratio) / d^{1/(2k)}.
Real theorem2_exponent(const ParamSet& ps);

struct Theorem3Report {
  BigInt d;
  Real c_phi;
  std::optional<ParamSet> params;
  std::vector<InequalityCheck> checks;
  std::optional<LogReal> final_ratio_log;  // (1/2)C(n,n/2) / Sum_{i<p} C(n,i)
  bool all_pass = false;
  const InequalityCheck* first_failure() const;
};

inline constexpr const char* kCountCheckName = "count_ratio_exceeds_d_plus_2";

/// Records every inequality of the shrinking-radius chain; never throws on a failed check.
Theorem3Report theorem3_check(const BigInt& d, double c_phi = 6.0);

}  // namespace borsuk
