// Residue polynomials over GF(p), multilinear reduction and the rank
// certificate bounding forbidden-inner-product-avoiding families.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "borsuk/construction.hpp"
#include "borsuk/exactnum.hpp"

namespace borsuk {

/// Polynomial over GF(p) in n variables with arbitrary exponents.
struct Polynomial {
  std::size_t n = 0;
  std::uint32_t p = 2;
  std::map<std::vector<std::uint32_t>, std::uint32_t> terms;  // exponent vector -> nonzero coefficient

  std::uint32_t evaluate(std::span<const std::int64_t> y) const;
  std::uint32_t degree() const;
};

/// Multilinear polynomial over GF(p): monomials are subsets of variables,
/// encoded as bitmasks (bit j = variable y_{j+1}).
class ReducedPolynomial {
 public:
  ReducedPolynomial(std::size_t n, std::uint32_t p) : n_(n), p_(p) {}
  /// Takes (mask, coefficient) pairs; coefficients are reduced mod p and merged.
  ReducedPolynomial(std::size_t n, std::uint32_t p, std::vector<std::pair<std::uint32_t, std::uint64_t>> terms);

  std::size_t n() const { return n_; }
  std::uint32_t p() const { return p_; }
  /// Sorted by mask, coefficients in [1, p).
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& terms() const { return terms_; }
  std::uint32_t degree() const;

  /// Value at the +-1 point whose -1 coordinates are `minus_mask`.
  std::uint32_t evaluate(std::uint32_t minus_mask) const;
  /// Values at all 2^n sign points (index = minus mask) by a Walsh-Hadamard transform.
  std::vector<std::uint32_t> evaluate_on_cube() const;

  friend bool operator==(const ReducedPolynomial&, const ReducedPolynomial&) = default;

 private:
  std::size_t n_;
  std::uint32_t p_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms_;
};

/// Residues i in [0, p) with i != -a (mod p), the roots used by P_x.
std::vector<std::uint32_t> residue_roots(std::uint32_t p, std::uint64_t a);

/// Prod_{i in residue_roots} (i - (x, y)) expanded with full exponents.
Polynomial build_P(const SignVector& x, std::uint32_t p, std::uint64_t a);

/// Even exponents drop the variable, odd exponents become 1; like terms merge mod p.
ReducedPolynomial reduce_multilinear(const Polynomial& poly);

/// build_P followed by reduction, reducing after every linear factor.
ReducedPolynomial build_reduced_P(const SignVector& x, std::uint32_t p, std::uint64_t a);

/// Prod_{i in residue_roots} (i - t) mod p: the value of P_x at any y with (x, y) = t.
std::uint32_t residue_product(std::int64_t t, std::uint32_t p, std::uint64_t a);

struct PropertyResult {
  bool congruent = false;  // (x, y) = -a (mod p)
  bool nonzero = false;    // P'_x(y) != 0 (mod p)
};

PropertyResult property_check(const SignVector& x, const SignVector& y, std::uint32_t p, std::uint64_t a);

struct PropertyScan {
  std::uint64_t pairs = 0;
  std::uint64_t congruent_pairs = 0;
  std::uint64_t mismatches = 0;
};

/// Property check over all ordered pairs of the family, evaluating each P'_x on
/// the whole cube at once.
PropertyScan property_scan(std::size_t n, std::uint32_t p, std::uint64_t a, unsigned threads = 1);

/// Number of multilinear monomials of degree <= p-1 in n variables.
BigInt dimension_bound(std::uint64_t n, std::uint64_t p);

struct AvoidingFamily {
  std::vector<SignVector> members;
  std::int64_t forbidden = 0;

  bool is_avoiding() const;
};

/// Accepts vectors in order (lexicographic, or shuffled by `seed`) when they
/// have no forbidden inner product with an accepted one.
AvoidingFamily greedy_avoiding_family(std::span<const SignVector> sigma, std::int64_t forbidden,
                                      std::optional<std::uint64_t> seed = std::nullopt);

/// Evaluation-matrix certificate: diagonal nonzero and off-diagonal zero.
/// Throws "construction relation violated" unless n - 4p = -a.
bool independence_verify(const AvoidingFamily& q, std::uint32_t p, std::uint64_t a);

/// Rank over GF(p) of the coefficient matrix (rows = polynomials).
std::size_t rank_gfp(std::span<const ReducedPolynomial> rows, std::uint32_t p);

inline constexpr std::size_t kExactSearchCap = 12;

/// Exact maximum size of a subset of the family with no pair at inner product
/// `forbidden`.
std::uint64_t max_avoiding_exact(std::size_t n, std::int64_t forbidden);

/// Graph on `vertices` vertices given by adjacency lists of bitsets (64-bit words).
struct BitGraph {
  std::size_t vertices = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> adjacency;  // row-major, `words` per vertex

  explicit BitGraph(std::size_t v);
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return adjacency[u * words + v / 64] >> (v % 64) & 1;
  }
  std::size_t degree(std::size_t u) const;
};

struct IndependenceResult {
  std::uint64_t size = 0;
  std::vector<std::size_t> witness;
  std::uint64_t nodes = 0;
  /// Root upper bound used to stop early (spectral ratio bound on regular graphs).
  std::optional<std::uint64_t> root_bound;
};

/// Branch and bound with greedy clique-cover bounds on bitset adjacency.
IndependenceResult maximum_independent_set(const BitGraph& g);

struct LemmaOptions {
  std::size_t family_seeds = 3;
  std::uint64_t rank_cell_cap = 50'000'000;  // |Sigma| * columns
  unsigned threads = 1;
};

struct LemmaReport {
  std::uint64_t n = 0, p = 0, a = 0;
  BigInt bound;
  BigInt sigma_size;
  std::optional<std::uint64_t> mis_exact;
  std::optional<std::uint64_t> rank;
  bool vacuous = false;
  bool zero_residue_excluded = false;  // -a = 0 (mod p)
  bool residue_exclusion_holds = false;
  std::vector<std::uint64_t> family_sizes;
  bool families_certified = false;
  bool verdict = false;
};

LemmaReport lemma_bound_check(std::uint64_t n, std::uint64_t p, std::uint64_t a, const LemmaOptions& opts = {});

}  // namespace borsuk
