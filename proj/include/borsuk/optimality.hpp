// Nonnegative-coefficient polynomials with their minimum at -a, the ratio
// objective, and a search confirming that t^m + m n^{m-1} t is extremal.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace borsuk {

/// h(t) = sum_j u_j t^j on [-n, n], meant to attain its minimum at t = -a.
struct CandidatePolynomial {
  std::vector<double> u;  // u_0 .. u_m
  double a = 1;
  double n = 1;

  unsigned m() const { return u.empty() ? 0 : static_cast<unsigned>(u.size() - 1); }
  double operator()(double t) const;
  double derivative(double t) const;
};

struct Membership {
  bool nonnegative = false;
  bool stationary = false;  // h'(-a) = 0 within tolerance
  bool minimum_at_a = false;
  bool nonpositive_at_a = false;  // the reduced class additionally needs h(-a) <= 0

  bool in_class() const { return nonnegative && stationary && minimum_at_a; }
  bool in_reduced_class() const { return in_class() && nonpositive_at_a; }
};

/// Grid of 10^4 points plus every numerically located critical point.
Membership check_membership(const CandidatePolynomial& h);

/// t^m + m n^{m-1} t with a = n. Throws for odd or zero m.
CandidatePolynomial h_star(unsigned m, double n);

/// t^{2k} + 2k a^{2k-1} t on [-n, n].
CandidatePolynomial construction_polynomial(unsigned k, double a, double n);

struct RatioValue {
  double value = 0;      // h(n) / (2h(n) - 2h(-a))
  double abs_ratio = 0;  // |h(-a)| / h(n)
  double h_n = 0;
  double h_neg_a = 0;
};

/// Throws "not in reduced class" when h(-a) > 0.
RatioValue ratio(const CandidatePolynomial& h);

struct SearchResult {
  CandidatePolynomial best;
  double best_ratio = 0;      // minimum of h(n)/(2h(n) - 2h(-a)) found
  double best_abs_ratio = 0;  // matching |h(-a)|/h(n)
  bool found = false;
};

struct SearchOptions {
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Random feasible coefficient vectors under h(n) = 1 and h'(-a) = 0, each
/// walked to a vertex of the constraint polytope by improving pivots.
SearchResult search_optimum(unsigned m, double n, double a, const SearchOptions& opts = {});
inline SearchResult search_optimum(unsigned m, double n, const SearchOptions& opts = {}) {
  return search_optimum(m, n, n, opts);
}

/// Class members at a = n (constant term dropped) met at the start and end of
/// each sampled pivot walk.
std::vector<CandidatePolynomial> sample_class_members(unsigned m, double n, const SearchOptions& opts = {});

struct CoefficientInequality {
  double lhs = 0;  // sum over odd j of u_j n^j
  double rhs = 0;  // factor * sum over even j >= 2 of u_j n^j
  unsigned factor = 0;  // m for even m, m - 1 for odd m
  bool even_variant = true;
  bool pass = false;
  bool equality = false;
};

/// Throws unless a = n, u_0 = 0 and h'(-n) = 0.
CoefficientInequality verify_coefficient_inequality(const CandidatePolynomial& h);

struct AReductionEntry {
  double a = 0;
  double best_abs_ratio = 0;
};

struct AReductionReport {
  std::vector<AReductionEntry> entries;
  bool non_decreasing = false;
  bool max_at_n = false;  // the largest objective sits at a = n within 1e-4
};

AReductionReport a_reduction_check(unsigned m, double n, std::span<const double> a_grid, const SearchOptions& opts = {});

struct OptimalityRow {
  unsigned m = 0;
  double n = 0;
  double best_ratio = 0;
  double best_abs_ratio = 0;
  double extremal_bound = 0;  // (m-1)/(m+1), or the m-1 value for odd m
  double gap = 0;             // extremal_bound - best_abs_ratio
};

/// (m-1)/(m+1) for even m; ((m-1)-1)/((m-1)+1) for odd m.
double extremal_abs_ratio(unsigned m);

OptimalityRow optimality_row(unsigned m, double n, const SearchOptions& opts = {});

/// CSV: m, n, best_ratio, best_abs_ratio, extremal_bound, gap.
void write_optimality_csv(std::ostream& out, std::span<const OptimalityRow> rows);

}  // namespace borsuk
