// Parameter pipelines for the fixed-radius and shrinking-radius constructions.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "borsuk/exactnum.hpp"

namespace borsuk {

enum class Mode { FixedRadius, ShrinkingRadius };

std::string to_string(Mode mode);

struct ParamSet {
  Mode mode = Mode::FixedRadius;
  Real r;
  Real rsq;
  /// Present when the radius is rational (fixed-radius mode from a decimal r).
  std::optional<BigRational> rsq_exact;
  unsigned k = 0;
  Real a0;
  std::uint64_t n = 0;
  std::uint64_t a = 0;
  std::uint64_t p = 0;
  BigInt d;
  /// Shrinking mode only.
  std::optional<Real> phi;
  std::optional<Real> c_phi;

  /// Asymptotic ratio p / n.
  Real p0() const { return a0 / 8 + Real(1) / 4; }
};

/// One inequality of the shrinking-radius chain, recorded rather than thrown.
struct InequalityCheck {
  std::string name;
  Real lhs;
  Real rhs;
  bool pass = false;
};

/// Minimal k with rsq > (2k+1)/(8k).
unsigned solve_k(const BigRational& rsq);
unsigned solve_k(const Real& rsq);

/// (1 + 2k q^{2k-1}) / (2 + 4k q^{2k-1} + (4k-2) q^{2k}) with q = a0/2.
Real u_eval(const Real& a0, unsigned k);
BigRational u_eval(const BigRational& a0, unsigned k);

/// Bisection root of u(a0) = rsq on (0, 2), rounded so that u(result) <= rsq.
Real solve_a0(const Real& rsq, unsigned k, double tol = 1e-12);

/// Largest multiple of 4 with n^{2k} < d.
std::uint64_t choose_n(const BigInt& d, unsigned k);

/// Least multiple of 4 with a >= a0*n/2 and (a+n)/4 prime; returns (a, p).
std::pair<std::uint64_t, std::uint64_t> choose_a(const Real& a0, std::uint64_t n);

ParamSet plan_fixed(const BigRational& r, const BigInt& d, double tol = 1e-12);

/// Result of the shrinking-radius pipeline. `params` is empty when no
/// admissible parameters exist; `checks` lists every parameter-level inequality.
struct ShrinkingPlan {
  std::optional<ParamSet> params;
  std::vector<InequalityCheck> checks;
  bool all_pass() const;
  const InequalityCheck* first_failure() const;
};

ShrinkingPlan shrinking_pipeline(const BigInt& d, double c_phi = 6.0);

/// Throws "d below threshold d0: <check>" if any inequality fails.
ParamSet plan_shrinking(const BigInt& d, double c_phi = 6.0, double tol = 1e-12);

/// c_phi * lnln d / ln d.
Real phi_of(const BigInt& d, double c_phi);

}  // namespace borsuk
